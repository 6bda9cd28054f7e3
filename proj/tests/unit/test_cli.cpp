#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"

#include "crlab/cli.hpp"
#include "crlab/errors.hpp"

using namespace crlab;

namespace {

int cli(std::vector<std::string> args, std::string* out_text = nullptr) {
  args.insert(args.begin(), "crlab");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int rc = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  if (out_text) *out_text = out.str() + err.str();
  return rc;
}

std::string without_timestamp(const std::string& path) {
  std::ifstream in(path);
  std::string line;
  std::string text;
  while (std::getline(in, line)) {
    if (line.find("timestamp") == std::string::npos) text += line + "\n";
  }
  return text;
}

}  // namespace

TEST_CASE("Configuration parsing and validation") {
  ExperimentConfig cfg = parse_config("suite = theta-optimize\n# comment\nn=2  # trailing\nk = 1\ntheta=0.25\nw = 1\nwp=0\n");
  CHECK(cfg.suite == "theta-optimize");
  CHECK(cfg.n == 2);
  CHECK(cfg.theta == 0.25);
  CHECK(cfg.wp == 0);
  CHECK_NOTHROW(cfg.validate());

  CHECK_THROWS_AS(parse_config("nope = 1"), ConfigError);
  CHECK_THROWS_AS(parse_config("n = two"), ConfigError);
  CHECK_THROWS_AS(parse_config("n 2"), ConfigError);

  ExperimentConfig bad = cfg;
  bad.k = 3;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = cfg;
  bad.suite = "missing";
  CHECK_THROWS_AS(run_suite(bad), ConfigError);
  bad = cfg;
  bad.format = "xml";
  CHECK_THROWS_AS(bad.validate(), ConfigError);

  // The hash ignores the output directory and tracks every result-relevant field.
  ExperimentConfig moved = cfg;
  moved.output_dir = "/elsewhere";
  CHECK(moved.hash() == cfg.hash());
  moved.seed = 2;
  CHECK(moved.hash() != cfg.hash());
  CHECK(report_filename(cfg).rfind("theta-optimize-", 0) == 0);
  CHECK(report_filename(cfg).size() == std::string("theta-optimize-").size() + 16 + 4);
}

TEST_CASE("Suites produce deterministic reports") {
  ExperimentConfig cfg;
  cfg.suite = "theta-optimize";
  const SuiteResult a = run_suite(cfg);
  CHECK(a.passed());
  CHECK_NOTHROW(a.require_pass());
  const SuiteResult b = run_suite(cfg);
  CHECK(render_report(a, cfg, "T0") == render_report(b, cfg, "T0"));
  cfg.format = "json";
  const std::string json = render_report(a, cfg, "T1");
  CHECK(json.find("\"timestamp\": \"T1\"") != std::string::npos);
  CHECK(json.find("1.73205080757") != std::string::npos);

  SuiteResult failing = a;
  failing.checks.push_back({"forced", false, "detail"});
  CHECK_FALSE(failing.passed());
  CHECK_THROWS_AS(failing.require_pass(), SuiteFailure);
}

TEST_CASE("Command line") {
  const auto dir = std::filesystem::temp_directory_path() / "crlab_cli_test";
  std::filesystem::remove_all(dir);
  std::string text;

  CHECK(cli({"--list-suites"}, &text) == 0);
  CHECK(text.find("bubble-experiment\n") != std::string::npos);

  CHECK(cli({"verify-spectrum", "--n", "1", "--k", "1", "--output-dir", dir.string()}, &text) == 0);
  CHECK(text.find("PASS ambient equals spectral multiplier") != std::string::npos);

  CHECK(cli({"sharp-constant", "--n", "1", "--k", "2", "--output-dir", dir.string()}, &text) == 2);
  CHECK(text.find("config error") != std::string::npos);

  // An impossible tolerance makes a check fail, and the exit status follows.
  CHECK(cli({"sharp-constant", "--tol", "1e-30", "--output-dir", dir.string()}, &text) == 1);
  CHECK(text.find("FAIL") != std::string::npos);

  // Config file with a flag override; two runs agree apart from the timestamp.
  const auto cfg_path = dir / "run.cfg";
  std::ofstream(cfg_path) << "n = 2\nw = 1\nwp = 0\ntheta = 0.75\nout = json\n";
  CHECK(cli({"theta-optimize", "--config", cfg_path.string(), "--n", "1", "--output-dir", dir.string()}, &text) == 0);
  ExperimentConfig expect;
  expect.suite = "theta-optimize";
  expect.n = 1;
  expect.wp = 0;
  expect.theta = 0.75;
  expect.format = "json";
  const std::string path = (dir / report_filename(expect)).string();
  REQUIRE(std::filesystem::exists(path));
  const std::string first = without_timestamp(path);
  CHECK(cli({"theta-optimize", "--config", cfg_path.string(), "--n", "1", "--output-dir", dir.string()}) == 0);
  CHECK(without_timestamp(path) == first);
  CHECK(first.find("\"n=1") == std::string::npos);
  CHECK(first.find(";n=1;") != std::string::npos);
  std::filesystem::remove_all(dir);
}
