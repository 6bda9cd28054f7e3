#include "crlab/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <random>
#include <sstream>

#include "crlab/ambient.hpp"
#include "crlab/errors.hpp"
#include "crlab/extremals.hpp"
#include "crlab/operators.hpp"
#include "crlab/theta.hpp"
#include "crlab/yamabe.hpp"

namespace crlab {

namespace {

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string str(const Rational& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

template <class T>
T parse_number(const std::string& key, const std::string& value) {
  std::istringstream is(value);
  T out{};
  is >> out;
  if (is.fail() || !(is >> std::ws).eof()) throw ConfigError("config: bad value for " + key + ": '" + value + "'");
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// --- suites -------------------------------------------------------------------

class Builder {
public:
  explicit Builder(std::string suite) { r_.suite = std::move(suite); }
  void check(std::string name, bool ok, std::string detail) {
    r_.checks.push_back({std::move(name), ok, std::move(detail)});
  }
  void columns(std::vector<std::string> c) { r_.columns = std::move(c); }
  void row(std::vector<std::string> r) { r_.rows.push_back(std::move(r)); }
  SuiteResult done() { return std::move(r_); }

private:
  SuiteResult r_;
};

double or_default(double v, double d) { return v > 0.0 ? v : d; }
int or_default(int v, int d) { return v > 0 ? v : d; }

// Quadrature-backed bases are only affordable for n <= 2.
HarmonicBasis desk_basis(int n, int jmax, const std::string& suite) {
  if (n == 1) return build_basis(1, jmax);
  if (n == 2) {
    if (jmax > 3) throw ConfigError(suite + ": n = 2 supports jmax <= 3");
    return build_basis(2, jmax, 4 * jmax + 4);
  }
  throw ConfigError(suite + ": quadrature suites support n <= 2");
}

HarmonicExpansion constant_expansion(const HarmonicBasis& basis, double c) {
  HarmonicExpansion e = HarmonicExpansion::zero(basis, 0);
  e.coeffs()[0] = c;
  return e;
}

SuiteResult suite_spectrum(const ExperimentConfig& cfg) {
  Builder b("verify-spectrum");
  const int jmax = or_default(cfg.jmax, 3);
  b.columns({"d", "j", "l", "lambda_bare", "lambda_sharp", "ambient_match"});
  int mismatches = 0;
  int total = 0;
  for (int d = -3; d <= 3; ++d) {
    const Rational w = (Rational(cfg.k - cfg.n - 1) - Rational(d)) * Rational(1, 2);
    const OperatorSpec spec(cfg.n, w, w + Rational(d));
    const SpectralMultiplier sharp(spec, Rational(1 << cfg.k));
    for (int j = 0; j <= jmax; ++j) {
      for (int l = 0; l <= jmax; ++l) {
        bool ok = true;
        for (const auto& f : exact_harmonic_block(cfg.n, j, l)) {
          ok = ambient_matches_spectrum(spec, f, j, l) && ok;
          ++total;
        }
        if (!ok) ++mismatches;
        b.row({std::to_string(d), std::to_string(j), std::to_string(l), str(gjms_multiplier(spec, j, l)),
               str(sharp.exact(j, l)), ok ? "yes" : "no"});
      }
    }
  }
  b.check("ambient equals spectral multiplier", mismatches == 0,
          std::to_string(total) + " basis polynomials, " + std::to_string(mismatches) + " mismatched blocks");
  const Rational c = calibrate_laplacian_constant();
  b.check("laplacian constant calibration", c == kLaplacianConstant, "c = " + str(c));
  return b.done();
}

SuiteResult suite_ambient(const ExperimentConfig& cfg) {
  Builder b("verify-ambient");
  std::mt19937_64 rng(cfg.seed);
  b.columns({"identity", "k", "j", "terms_in_residual"});
  const Rational c = calibrate_laplacian_constant();
  b.check("laplacian constant calibration", c == kLaplacianConstant, "c = " + str(c));

  bool identity_ok = true;
  bool control_ok = true;
  for (int k = 1; k <= 3; ++k) {
    const ConePolynomial f = random_cone_polynomial(cfg.n, Rational(1, 2), Rational(-1, 2), rng, 5);
    for (int j = 1; j <= cfg.n + 1; ++j) {
      const auto res = cone_commutator_residual(k, j, f);
      identity_ok = identity_ok && res.empty();
      b.row({"cone-commutator", std::to_string(k), std::to_string(j), std::to_string(res.terms().size())});
    }
    const auto wrong = cone_commutator_residual(k, 1, f, Rational(2 * k + 1));
    control_ok = control_ok && !wrong.empty();
    b.row({"cone-commutator-control", std::to_string(k), "1", std::to_string(wrong.terms().size())});
  }
  b.check("cone commutator residual is zero, k <= 3", identity_ok, "random cone polynomials, seed " + std::to_string(cfg.seed));
  b.check("negative control (factor 2k+1) is nonzero", control_ok, "");

  bool ext_ok = true;
  for (int k = 1; k <= 3; ++k) {
    const OperatorSpec spec(cfg.n, Rational(k - cfg.n - 1, 2), Rational(k - cfg.n - 1, 2));
    const ConePolynomial base = lift(exact_harmonic_block(cfg.n, 1, 2).front(), spec.w, spec.wp);
    const ConePolynomial q = random_cone_polynomial(cfg.n, spec.w - Rational(1), spec.wp - Rational(1), rng, 4);
    const ExactPolynomial diff = gjms_ambient(spec, base) - gjms_ambient(spec, base + ConePolynomial::rho(cfg.n) * q);
    const bool ok = sphere_canonical(diff).empty();
    ext_ok = ext_ok && ok;
    b.row({"extension", std::to_string(k), "-", std::to_string(sphere_canonical(diff).terms().size())});
  }
  b.check("independent of the extension off the cone", ext_ok, "");
  return b.done();
}

SuiteResult suite_commutator(const ExperimentConfig& cfg) {
  Builder b("verify-commutator");
  const double tol = or_default(cfg.tol, 1e-8);
  const int jmax = or_default(cfg.jmax, 4);
  if (jmax < 3) throw ConfigError("verify-commutator: jmax must be >= 3");
  const HarmonicBasis basis = build_algebraic_basis(cfg.n, jmax);
  const auto spec = OperatorSpec::sharp(cfg.n, cfg.k);
  std::mt19937_64 rng(cfg.seed);
  b.columns({"trial", "residual"});
  double worst = 0.0;
  for (int t = 0; t < 20; ++t) {
    const double r = commutator_defect(spec, random_expansion(basis, jmax - 2, rng), basis);
    worst = std::max(worst, r);
    b.row({std::to_string(t), num(r)});
  }
  b.check("commutator identity on 20 random functions", worst < tol, "max residual " + num(worst));
  const Rational wrong = Rational(cfg.k) * (spec.wp - Rational(cfg.k) + Rational(2));
  const double ctrl = commutator_defect(spec, constant_expansion(basis, 1.0), basis, wrong);
  b.row({"control", num(ctrl)});
  b.check("negative control (perturbed constant) residual > 1e-2", ctrl > 1e-2, "residual " + num(ctrl));

  int bad = 0;
  for (const auto& e : positivity_scan(cfg.n, cfg.k, 50, 50)) {
    const bool zero_ok = (e.j == 0 && e.l == 0) ? e.combination.is_zero() : (e.combination > Rational(0));
    if (!zero_ok) ++bad;
  }
  b.check("second-variation combination positive on 0 <= j,l <= 50, zero only at (0,0)", bad == 0,
          std::to_string(bad) + " violations");
  return b.done();
}

SuiteResult suite_sharp(const ExperimentConfig& cfg) {
  Builder b("sharp-constant");
  const double tol = or_default(cfg.tol, 1e-6);
  const double c = sharp_constant(cfg.n, cfg.k);
  const double kappa = measured_kappa(cfg.n, cfg.k);
  b.check("measured kappa equals 2^k", std::abs(kappa - std::ldexp(1.0, cfg.k)) < 1e-12 * kappa, "kappa = " + num(kappa));
  b.columns({"sample", "xi_norm", "quotient", "relative_error"});
  b.row({"closed-form", "0", num(1.0 / c), "0"});
  if (cfg.n > 2) {
    b.check("quadrature checks", true, "skipped for n > 2");
    return b.done();
  }
  const int jmax = or_default(cfg.jmax, cfg.n == 1 ? 6 : 2);
  const double radius = cfg.n == 1 ? 0.25 : 0.1;
  const HarmonicBasis basis = desk_basis(cfg.n, jmax, "sharp-constant");
  const double q0 = rayleigh_quotient(constant_expansion(basis, 1.0), cfg.k, basis);
  const double e0 = std::abs(q0 * c - 1.0);
  b.row({"constant", "0", num(q0), num(e0)});
  b.check("constants attain the sharp constant", e0 < tol, "relative error " + num(e0));
  std::mt19937_64 rng(cfg.seed);
  double worst = 0.0;
  for (int t = 0; t < 5; ++t) {
    const Eigen::VectorXcd xi = random_ball_point(cfg.n, radius, rng);
    const auto f = analyze(basis.rule().sample(extremal_function({xi, cplx(1.0, 0.0), cfg.k})), basis);
    const double q = rayleigh_quotient(f, cfg.k, basis);
    const double e = std::abs(q * c - 1.0);
    worst = std::max(worst, e);
    b.row({"extremal-" + std::to_string(t), num(xi.norm()), num(q), num(e)});
  }
  b.check("5 random extremals attain the sharp constant", worst < tol, "max relative error " + num(worst));
  return b.done();
}

SuiteResult suite_theta(const ExperimentConfig& cfg) {
  Builder b("theta-optimize");
  const double tol = or_default(cfg.tol, 1e-3);
  ThetaOptions opts;
  opts.seed = cfg.seed;
  const ThetaResult r = minimize_theta(cfg.n, cfg.w, cfg.wp, cfg.theta, opts);
  b.columns({"atom", "weight", "coordinates"});
  for (std::size_t i = 0; i < r.measure.size(); ++i) {
    std::string coords;
    for (Eigen::Index c = 0; c < r.measure.atoms()[i].coords().size(); ++c) {
      const cplx z = r.measure.atoms()[i].coords()[c];
      coords += (c ? " " : "") + num(z.real()) + (z.imag() < 0 ? "" : "+") + num(z.imag()) + "i";
    }
    b.row({std::to_string(i), num(r.measure.weights()[i]), coords});
  }
  b.check("moment constraints satisfied", r.residual_norm < 1e-9, "residual " + num(r.residual_norm));
  double exact = 0.0;
  if ((cfg.w == 1 && cfg.wp == 0) || (cfg.w == 0 && cfg.wp == 1)) exact = std::pow(2.0, 1.0 - cfg.theta);
  if (cfg.w == 1 && cfg.wp == 1) exact = std::pow(cfg.n + 2.0, 1.0 - cfg.theta);
  if (exact > 0.0) {
    b.check("value matches the exact minimum", std::abs(r.value - exact) < tol,
            "value " + num(r.value) + ", exact " + num(exact));
  } else {
    b.check("value", true, "value " + num(r.value) + " (no closed form for this (w, w'))");
  }
  if (cfg.w == 1 && cfg.wp == 1) {
    double dev = 0.0;
    for (double wt : r.measure.weights()) dev = std::max(dev, std::abs(wt - 1.0 / (cfg.n + 2)));
    b.check("optimal weights equal 1/(n+2)", r.measure.size() == static_cast<std::size_t>(cfg.n + 2) && dev < 1e-3,
            std::to_string(r.measure.size()) + " atoms, max deviation " + num(dev));
    const double vd = v_vector_defect(r.measure);
    b.check("v-vectors orthonormal", vd < 1e-6, "defect " + num(vd));
  }
  return b.done();
}

SuiteResult suite_yamabe(const ExperimentConfig& cfg) {
  Builder b("yamabe-minimize");
  const double tol = or_default(cfg.tol, 1e-4);
  const int jmax = or_default(cfg.jmax, cfg.n == 1 ? 5 : 2);
  const HarmonicBasis basis = desk_basis(cfg.n, jmax, "yamabe-minimize");
  const double target = 1.0 / sharp_constant(cfg.n, cfg.k);
  const double p = Dimension(cfg.n).p(cfg.k);
  const MinimizeResult r = minimize_quotient(basis, cfg.k, cfg.seed);
  const RecenterResult rc = recenter(synthesize(r.f, basis), basis.rule(), p, 1e-12);
  const ComplexPolynomial poly = to_polynomial(r.f, basis);
  const SphereFunction fn = [&poly](const SpherePoint& s) { return poly.evaluate(s.coords()); };
  const HarmonicExpansion moved = analyze(basis.rule().sample(act_on_function(rc.map, fn, p)), basis);
  const double el_before = euler_lagrange_residual(r.f, cfg.k, basis);
  const double el_after = euler_lagrange_residual(moved, cfg.k, basis);
  b.columns({"value", "target", "relative_error", "iterations", "gradient_norm", "el_before", "el_after",
             "recenter_xi_norm"});
  const double rel = std::abs(r.value - target) / target;
  b.row({num(r.value), num(target), num(rel), std::to_string(r.iterations), num(r.gradient_norm), num(el_before),
         num(el_after), num(rc.map.center().norm())});
  b.check("minimum equals the sharp value", rel < tol, "value " + num(r.value) + ", target " + num(target));
  b.check("never below the sharp value", r.value >= target - 1e-6, "");
  if (cfg.n == 1) {
    b.check("recentered minimizer satisfies the Euler-Lagrange equation", el_after < 1e-4,
            "residual " + num(el_after));
  }
  return b.done();
}

SuiteResult suite_bubble(const ExperimentConfig& cfg) {
  Builder b("bubble-experiment");
  const double tol = or_default(cfg.tol, 0.02);
  const int n = cfg.n;
  const int k = cfg.k;
  const QuadratureRule base = build_quadrature(n, n == 1 ? 30 : (n == 2 ? 12 : 8));
  const double cinv = 1.0 / sharp_constant(n, k);
  const SpherePoint north = SpherePoint::north_pole(n);
  const SpherePoint south = SpherePoint::south_pole(n);
  b.columns({"configuration", "delta", "quotient", "floor", "relative_gap"});

  double single_worst = 0.0;
  for (double d : {0.3, 0.01}) {
    const double q = bubble_quotient({n, k, {{north, d, 1.0}}}, base).quotient;
    single_worst = std::max(single_worst, std::abs(q / cinv - 1.0));
    b.row({"single", num(d), num(q), num(cinv), num(q / cinv - 1.0)});
  }
  b.check("single bubble attains the sharp value", single_worst < 1e-5, "max relative error " + num(single_worst));

  const DiscreteMeasure antipodal({north, south}, {0.5, 0.5});
  const ProbeReport two = improved_constant_probe(n, k, 1, 0, antipodal, {0.3, 0.1, 0.03, 0.01}, base);
  bool monotone = true;
  for (std::size_t i = 0; i < two.rows.size(); ++i) {
    b.row({"two-antipodal", num(two.rows[i].delta), num(two.rows[i].quotient), num(two.floor),
           num(two.rows[i].quotient / two.floor - 1.0)});
    if (i > 0 && !(two.rows[i].quotient > two.rows[i - 1].quotient)) monotone = false;
  }
  b.check("two-bubble quotient decreasing in delta", monotone, "");
  b.check("two-bubble quotient at delta = 0.01 near 2^{2k/Q} / C", std::abs(two.relative_gap) < tol,
          "relative gap " + num(two.relative_gap));

  const ProbeReport single = improved_constant_probe(n, k, 1, 0, DiscreteMeasure({north}, {1.0}), {0.01}, base);
  b.check("unbalanced configuration rejected", !single.admissible && single.rows.empty(),
          "moment residual " + num(single.moment_residual));

  if (n == 1) {
    const ProbeReport simplex = improved_constant_probe(n, k, 1, 1, simplex_configuration(n), {0.01, 0.001}, base);
    for (const auto& row : simplex.rows) {
      b.row({"simplex", num(row.delta), num(row.quotient), num(simplex.floor), num(row.quotient / simplex.floor - 1.0)});
    }
    b.check("simplex 3-bubble quotient near 3^{2k/Q} / C at delta = 0.001",
            simplex.admissible && std::abs(simplex.relative_gap) < 0.03,
            "relative gap " + num(simplex.relative_gap) + " (delta = 0.01: " +
                num(simplex.rows.front().quotient / simplex.floor - 1.0) + ")");
  }
  return b.done();
}

SuiteResult suite_report(const ExperimentConfig& cfg);

const std::map<std::string, std::function<SuiteResult(const ExperimentConfig&)>>& registry() {
  static const std::map<std::string, std::function<SuiteResult(const ExperimentConfig&)>> r{
      {"verify-spectrum", suite_spectrum}, {"verify-ambient", suite_ambient},
      {"verify-commutator", suite_commutator}, {"sharp-constant", suite_sharp},
      {"theta-optimize", suite_theta},     {"yamabe-minimize", suite_yamabe},
      {"bubble-experiment", suite_bubble}, {"report", suite_report},
  };
  return r;
}

SuiteResult suite_report(const ExperimentConfig& cfg) {
  Builder b("report");
  b.columns({"suite", "check", "passed", "detail"});
  for (const auto& name : suite_names()) {
    if (name == "report") continue;
    ExperimentConfig sub = cfg;
    sub.suite = name;
    sub.jmax = 0;
    sub.tol = 0.0;
    try {
      const SuiteResult r = registry().at(name)(sub);
      for (const auto& c : r.checks) b.row({name, c.name, c.passed ? "yes" : "no", c.detail});
      b.check(name, r.passed(), std::to_string(r.checks.size()) + " checks");
    } catch (const ConfigError& e) {
      b.row({name, "-", "skipped", e.what()});
    }
  }
  return b.done();
}

std::string utc_timestamp() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

// --- configuration --------------------------------------------------------------

void ExperimentConfig::validate() const {
  if (!registry().count(suite)) throw ConfigError("unknown suite '" + suite + "'");
  if (n < 1 || n > 3) throw ConfigError("n must be in 1..3");
  if (k < 1 || k >= n + 1) throw ConfigError("k must satisfy 1 <= k < n + 1");
  if (jmax < 0 || jmax > 8) throw ConfigError("jmax must be in 0..8");
  if (tol < 0.0) throw ConfigError("tol must be positive");
  if (format != "csv" && format != "json") throw ConfigError("out must be csv or json");
  if (w < 0 || wp < 0 || w + wp == 0) throw ConfigError("need w, w' >= 0, not both zero");
  if (!(theta > 0.0 && theta < 1.0)) throw ConfigError("theta must lie in (0, 1)");
}

std::string ExperimentConfig::canonical() const {
  std::ostringstream os;
  os << "suite=" << suite << ";n=" << n << ";k=" << k << ";jmax=" << jmax << ";seed=" << seed << ";tol=" << num(tol)
     << ";out=" << format << ";w=" << w << ";wp=" << wp << ";theta=" << num(theta);
  return os.str();
}

std::uint64_t ExperimentConfig::hash() const {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : canonical()) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

ExperimentConfig parse_config(const std::string& text, ExperimentConfig cfg) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "suite") cfg.suite = value;
    else if (key == "n") cfg.n = parse_number<int>(key, value);
    else if (key == "k") cfg.k = parse_number<int>(key, value);
    else if (key == "jmax") cfg.jmax = parse_number<int>(key, value);
    else if (key == "seed") cfg.seed = parse_number<std::uint64_t>(key, value);
    else if (key == "tol") cfg.tol = parse_number<double>(key, value);
    else if (key == "out") cfg.format = value;
    else if (key == "output_dir") cfg.output_dir = value;
    else if (key == "w") cfg.w = parse_number<int>(key, value);
    else if (key == "wp") cfg.wp = parse_number<int>(key, value);
    else if (key == "theta") cfg.theta = parse_number<double>(key, value);
    else throw ConfigError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
  }
  return cfg;
}

ExperimentConfig load_config_file(const std::string& path, ExperimentConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), std::move(base));
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"verify-spectrum", "verify-ambient", "verify-commutator",
                                              "sharp-constant",  "theta-optimize", "yamabe-minimize",
                                              "bubble-experiment", "report"};
  return names;
}

bool SuiteResult::passed() const {
  for (const auto& c : checks) {
    if (!c.passed) return false;
  }
  return true;
}

void SuiteResult::require_pass() const {
  std::string msg;
  for (const auto& c : checks) {
    if (!c.passed) msg += "\n  " + c.name + (c.detail.empty() ? "" : ": " + c.detail);
  }
  if (!msg.empty()) throw SuiteFailure(suite + " failed:" + msg);
}

SuiteResult run_suite(const ExperimentConfig& config) {
  config.validate();
  return registry().at(config.suite)(config);
}

std::string render_report(const SuiteResult& result, const ExperimentConfig& config, const std::string& timestamp) {
  std::ostringstream os;
  if (config.format == "csv") {
    os << "# timestamp " << timestamp << "\n";
    os << "# suite " << result.suite << "\n";
    os << "# config " << config.canonical() << "\n";
    os << "# passed " << (result.passed() ? "yes" : "no") << "\n";
    for (const auto& c : result.checks) {
      os << "# check " << (c.passed ? "PASS" : "FAIL") << " " << c.name << (c.detail.empty() ? "" : " | " + c.detail)
         << "\n";
    }
    for (std::size_t i = 0; i < result.columns.size(); ++i) os << (i ? "," : "") << csv_field(result.columns[i]);
    os << "\n";
    for (const auto& row : result.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_field(row[i]);
      os << "\n";
    }
    return os.str();
  }
  nlohmann::ordered_json j;
  j["timestamp"] = timestamp;
  j["suite"] = result.suite;
  j["config"] = config.canonical();
  j["passed"] = result.passed();
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : result.checks) j["checks"].push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  j["columns"] = result.columns;
  j["rows"] = result.rows;
  return j.dump(2) + "\n";
}

std::string report_filename(const ExperimentConfig& config) {
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(config.hash()));
  return config.suite + "-" + hex + "." + config.format;
}

std::string write_report(const SuiteResult& result, const ExperimentConfig& config) {
  namespace fs = std::filesystem;
  fs::create_directories(config.output_dir);
  const fs::path path = fs::path(config.output_dir) / report_filename(config);
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << render_report(result, config, utc_timestamp());
  return path.string();
}

// --- command line ---------------------------------------------------------------

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"CR Sobolev verification suites", "crlab"};
  bool list = false;
  app.add_flag("--list-suites", list, "Print the suite names and exit");
  app.require_subcommand(0, 1);

  struct Flags {
    int n = 0, k = 0, jmax = 0, w = 0, wp = 0;
    std::uint64_t seed = 0;
    double tol = 0.0, theta = 0.0;
    std::string out, dir, config;
  };
  Flags f;
  std::map<std::string, CLI::App*> subs;
  for (const auto& name : suite_names()) {
    CLI::App* s = app.add_subcommand(name, "Run the " + name + " suite");
    s->add_option("--n", f.n, "CR dimension n");
    s->add_option("--k", f.k, "Operator order k");
    s->add_option("--jmax", f.jmax, "Harmonic cutoff");
    s->add_option("--seed", f.seed, "Random seed");
    s->add_option("--tol", f.tol, "Tolerance of the main comparison");
    s->add_option("--out", f.out, "Report format: csv or json")->check(CLI::IsMember({"csv", "json"}));
    s->add_option("--output-dir", f.dir, "Directory for the report");
    s->add_option("--config", f.config, "key=value configuration file");
    if (name == "theta-optimize" || name == "report") {
      s->add_option("--w", f.w, "Holomorphic degree bound");
      s->add_option("--wp", f.wp, "Antiholomorphic degree bound");
      s->add_option("--theta", f.theta, "Exponent in (0, 1)");
    }
    subs[name] = s;
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }
  if (list) {
    for (const auto& name : suite_names()) out << name << "\n";
    return 0;
  }
  if (app.get_subcommands().empty()) {
    err << app.help();
    return 2;
  }
  CLI::App* sub = app.get_subcommands().front();
  try {
    ExperimentConfig cfg;
    if (sub->count("--config")) cfg = load_config_file(f.config, cfg);
    cfg.suite = sub->get_name();
    if (sub->count("--n")) cfg.n = f.n;
    if (sub->count("--k")) cfg.k = f.k;
    if (sub->count("--jmax")) cfg.jmax = f.jmax;
    if (sub->count("--seed")) cfg.seed = f.seed;
    if (sub->count("--tol")) cfg.tol = f.tol;
    if (sub->count("--out")) cfg.format = f.out;
    if (sub->count("--output-dir")) cfg.output_dir = f.dir;
    if (sub->get_option_no_throw("--w") && sub->count("--w")) cfg.w = f.w;
    if (sub->get_option_no_throw("--wp") && sub->count("--wp")) cfg.wp = f.wp;
    if (sub->get_option_no_throw("--theta") && sub->count("--theta")) cfg.theta = f.theta;

    const SuiteResult result = run_suite(cfg);
    for (const auto& c : result.checks) {
      out << (c.passed ? "PASS " : "FAIL ") << c.name << (c.detail.empty() ? "" : " | " + c.detail) << "\n";
    }
    out << "report " << write_report(result, cfg) << "\n";
    result.require_pass();
    return 0;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return 2;
  } catch (const SuiteFailure& e) {
    err << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace crlab
