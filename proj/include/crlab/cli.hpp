#pragma once

// Experiment runner: named verification suites, key=value configuration,
// CSV / JSON reports named by suite and a hash of the configuration.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace crlab {

struct ExperimentConfig {
  std::string suite;
  int n = 1;
  int k = 1;
  int jmax = 0;       // 0: suite default
  std::uint64_t seed = 1;
  double tol = 0.0;   // 0: suite default for the main comparison
  std::string format = "csv";  // csv | json
  std::string output_dir = ".";
  // theta-optimize
  int w = 1;
  int wp = 1;
  double theta = 0.5;

  /// Throws ConfigError for an unknown suite or out-of-range parameter.
  void validate() const;
  /// Every field that affects the results, in fixed order (output_dir excluded).
  [[nodiscard]] std::string canonical() const;
  /// 64-bit FNV-1a of canonical().
  [[nodiscard]] std::uint64_t hash() const;
};

/// Applies `key = value` lines ('#' starts a comment) on top of base.
/// Throws ConfigError on unknown keys or malformed values.
ExperimentConfig parse_config(const std::string& text, ExperimentConfig base = {});
ExperimentConfig load_config_file(const std::string& path, ExperimentConfig base = {});

const std::vector<std::string>& suite_names();

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct SuiteResult {
  std::string suite;
  std::vector<Check> checks;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  [[nodiscard]] bool passed() const;
  /// Throws SuiteFailure listing every failed check.
  void require_pass() const;
};

/// Runs the named suite; configuration errors throw ConfigError, failed
/// checks are recorded in the result.
SuiteResult run_suite(const ExperimentConfig& config);

/// Report text; the timestamp occupies exactly one line, the only one
/// containing the word "timestamp".
std::string render_report(const SuiteResult& result, const ExperimentConfig& config, const std::string& timestamp);

/// <suite>-<hash as 16 hex digits>.<csv|json>
std::string report_filename(const ExperimentConfig& config);

/// Writes the report into config.output_dir and returns its path.
std::string write_report(const SuiteResult& result, const ExperimentConfig& config);

/// Command-line entry point; returns the process exit status.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace crlab
