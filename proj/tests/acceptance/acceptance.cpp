// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "crlab/ambient.hpp"
#include "crlab/cli.hpp"
#include "crlab/extremals.hpp"
#include "crlab/operators.hpp"
#include "crlab/theta.hpp"
#include "crlab/yamabe.hpp"

using namespace crlab;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

HarmonicExpansion constant(const HarmonicBasis& basis, double c) {
  HarmonicExpansion e = HarmonicExpansion::zero(basis, 0);
  e.coeffs()[0] = c;
  return e;
}

HarmonicBasis small_basis(int n, int jmax) {
  return n == 1 ? build_basis(1, jmax) : build_basis(n, jmax, 4 * jmax + 4);
}

Outcome ac1() {
  Outcome o;
  for (int n = 1; n <= 3; ++n) {
    const double exact = std::pow(2.0, n + 1) * std::pow(std::numbers::pi, n + 1);
    const QuadratureRule rule = build_quadrature(n, n == 3 ? 4 : 10);
    const double rel = std::abs(rule.weights().sum() - exact) / exact;
    o.ok = o.ok && rel < 1e-10;
    o.detail += "n=" + std::to_string(n) + " rel " + fmt(rel) + "; ";
  }
  return o;
}

Outcome ac2() {
  Outcome o;
  o.ok = calibrate_laplacian_constant() == kLaplacianConstant;
  int total = 0;
  int bad = 0;
  for (int n = 1; n <= 3; ++n) {
    for (int k = 1; k <= 3; ++k) {
      for (int d = -3; d <= 3; ++d) {
        const Rational w = (Rational(k - n - 1) - Rational(d)) * Rational(1, 2);
        const OperatorSpec spec(n, w, w + Rational(d));
        for (int j = 0; j <= 3; ++j) {
          for (int l = 0; l <= 3; ++l) {
            for (const auto& f : exact_harmonic_block(n, j, l)) {
              ++total;
              if (!ambient_matches_spectrum(spec, f, j, l)) ++bad;
            }
          }
        }
      }
    }
  }
  o.ok = o.ok && bad == 0;
  o.detail = std::to_string(total) + " exact comparisons (n<=3, k<=3, w'-w in [-3,3], j,l<=3), " +
             std::to_string(bad) + " mismatches";
  return o;
}

Outcome ac3() {
  Outcome o;
  o.ok = std::abs(sharp_constant(1, 1) * std::numbers::pi - 1.0) < 1e-14;
  for (int n = 1; n <= 3; ++n) {
    for (int k = 1; k <= 3 && k < n + 1; ++k) {
      o.ok = o.ok && std::abs(measured_kappa(n, k) - std::ldexp(1.0, k)) < 1e-12 * std::ldexp(1.0, k);
    }
  }
  double worst = 0.0;
  const int cases[][2] = {{1, 1}, {2, 1}, {2, 2}};
  for (const auto& nk : cases) {
    const int n = nk[0];
    const int k = nk[1];
    const HarmonicBasis basis = small_basis(n, n == 1 ? 6 : 2);
    const double c = sharp_constant(n, k);
    worst = std::max(worst, std::abs(rayleigh_quotient(constant(basis, 1.0), k, basis) * c - 1.0));
    std::mt19937_64 rng(static_cast<std::uint64_t>(10 * n + k));
    for (int t = 0; t < 5; ++t) {
      const Eigen::VectorXcd xi = random_ball_point(n, n == 1 ? 0.25 : 0.1, rng);
      const auto f = analyze(basis.rule().sample(extremal_function({xi, cplx(1.0, 0.0), k})), basis);
      worst = std::max(worst, std::abs(rayleigh_quotient(f, k, basis) * c - 1.0));
    }
  }
  o.ok = o.ok && worst < 1e-6;
  o.detail = "C(1,1) = 1/pi, kappa = 2^k, constants + 5 extremals per (n,k) max rel err " + fmt(worst);
  return o;
}

Outcome ac4() {
  Outcome o;
  double worst = 0.0;
  double control = 1e300;
  const int cases[][2] = {{1, 1}, {2, 1}, {2, 2}, {3, 3}};
  for (const auto& nk : cases) {
    const int n = nk[0];
    const int k = nk[1];
    const int jmax = n == 3 ? 3 : 4;
    const HarmonicBasis basis = build_algebraic_basis(n, jmax);
    const auto spec = OperatorSpec::sharp(n, k);
    std::mt19937_64 rng(static_cast<std::uint64_t>(100 + 10 * n + k));
    for (int t = 0; t < 20; ++t) {
      worst = std::max(worst, commutator_defect(spec, random_expansion(basis, jmax - 2, rng), basis));
    }
    const Rational wrong = Rational(k) * (spec.wp - Rational(k) + Rational(2));
    control = std::min(control, commutator_defect(spec, constant(basis, 1.0), basis, wrong));
  }
  o.ok = worst < 1e-8 && control > 1e-2;
  o.detail = "(1,1),(2,1),(2,2),(3,3) x 20: max residual " + fmt(worst) + ", control min " + fmt(control);
  return o;
}

Outcome ac5() {
  Outcome o;
  int checked = 0;
  std::mt19937_64 rng(7);
  for (int n = 1; n <= 2; ++n) {
    for (int k = 1; k <= 3; ++k) {
      const ConePolynomial f = random_cone_polynomial(n, Rational(1, 2), Rational(-1, 2), rng, 5);
      for (int j = 1; j <= n + 1; ++j) {
        o.ok = o.ok && cone_commutator_residual(k, j, f).empty();
        ++checked;
      }
      o.ok = o.ok && !cone_commutator_residual(k, 1, f, Rational(2 * k + 1)).empty();
    }
  }
  o.detail = std::to_string(checked) + " symbolic residuals zero, k <= 3; wrong factor nonzero";
  return o;
}

Outcome ac6() {
  Outcome o;
  int rows = 0;
  for (int n = 1; n <= 3; ++n) {
    for (int k = 1; k < n + 1; ++k) {
      for (const auto& e : positivity_scan(n, k, 50, 50)) {
        ++rows;
        const bool ok = (e.j == 0 && e.l == 0) ? e.combination.is_zero() : e.combination > Rational(0);
        o.ok = o.ok && ok;
      }
    }
  }
  o.detail = std::to_string(rows) + " exact entries, every (n,k) with n <= 3";
  return o;
}

Outcome ac7() {
  Outcome o;
  double worst = 0.0;
  double weights = 0.0;
  double vdef = 0.0;
  for (int n = 1; n <= 2; ++n) {
    for (double th : {0.25, 0.5, 0.75}) {
      ThetaOptions opts;
      opts.seed = 7;
      const ThetaResult first = minimize_theta(n, 1, 0, th, opts);
      worst = std::max(worst, std::abs(first.value - std::pow(2.0, 1.0 - th)));
      const ThetaResult r = minimize_theta(n, 1, 1, th, opts);
      worst = std::max(worst, std::abs(r.value - std::pow(n + 2.0, 1.0 - th)));
      if (r.measure.size() != static_cast<std::size_t>(n + 2)) weights = 1.0;
      for (double w : r.measure.weights()) weights = std::max(weights, std::abs(w - 1.0 / (n + 2)));
      vdef = std::max(vdef, v_vector_defect(r.measure));
    }
  }
  double dist = 0.0;
  for (int n = 1; n <= 3; ++n) {
    const DiscreteMeasure s = simplex_configuration(n);
    for (std::size_t i = 0; i < s.size(); ++i) {
      for (std::size_t j = i + 1; j < s.size(); ++j) {
        const double d = (s.atoms()[i].coords() - s.atoms()[j].coords()).norm();
        dist = std::max(dist, std::abs(d - std::sqrt(2.0 * (n + 2) / (n + 1))));
      }
    }
  }
  o.ok = worst < 1e-3 && weights < 1e-3 && vdef < 1e-6 && dist < 1e-9;
  o.detail = "value err " + fmt(worst) + ", weight err " + fmt(weights) + ", v-defect " + fmt(vdef) +
             ", simplex distance err " + fmt(dist);
  return o;
}

Outcome ac8() {
  Outcome o;
  const HarmonicBasis basis = build_basis(1, 5);
  const MinimizeResult r = minimize_quotient(basis, 1, 2024);
  const RecenterResult rc = recenter(synthesize(r.f, basis), basis.rule(), 4.0, 1e-12);
  const ComplexPolynomial poly = to_polynomial(r.f, basis);
  const SphereFunction fn = [&poly](const SpherePoint& s) { return poly.evaluate(s.coords()); };
  const HarmonicExpansion moved = analyze(basis.rule().sample(act_on_function(rc.map, fn, 4.0)), basis);
  const double el = euler_lagrange_residual(moved, 1, basis);
  const double err = std::abs(r.value - std::numbers::pi);

  const HarmonicBasis b2 = small_basis(2, 2);
  const MinimizeResult r2 = minimize_quotient(b2, 2, 2024);
  const double err2 = std::abs(r2.value * sharp_constant(2, 2) - 1.0);
  o.ok = err < 1e-4 && el < 1e-4 && err2 < 1e-3 && r.value >= std::numbers::pi - 1e-6;
  o.detail = "n=1,k=1 |Y - pi| " + fmt(err) + ", EL after recentering " + fmt(el) + "; n=2,k=2 rel err " + fmt(err2);
  return o;
}

Outcome ac9() {
  Outcome o;
  const int cases[][2] = {{1, 1}, {2, 1}, {2, 2}};
  for (const auto& nk : cases) {
    const int n = nk[0];
    const int k = nk[1];
    const QuadratureRule base = build_quadrature(n, n == 1 ? 30 : 12);
    const DiscreteMeasure antipodal({SpherePoint::north_pole(n), SpherePoint::south_pole(n)}, {0.5, 0.5});
    const ProbeReport two = improved_constant_probe(n, k, 1, 0, antipodal, {0.3, 0.1, 0.03, 0.01}, base);
    const double target = std::pow(2.0, k / (n + 1.0)) / sharp_constant(n, k);
    bool monotone = true;
    for (std::size_t i = 1; i < two.rows.size(); ++i) monotone = monotone && two.rows[i].quotient > two.rows[i - 1].quotient;
    const double gap = two.rows.back().quotient / target - 1.0;
    o.ok = o.ok && monotone && std::abs(gap) < 0.02;
    o.detail += "two-bubble (" + std::to_string(n) + "," + std::to_string(k) + ") gap " + fmt(gap) +
                (monotone ? " monotone; " : " NOT monotone; ");
  }
  const QuadratureRule base = build_quadrature(1, 30);
  const ProbeReport simplex = improved_constant_probe(1, 1, 1, 1, simplex_configuration(1), {0.01, 0.001}, base);
  const double floor = std::sqrt(3.0) * std::numbers::pi;
  const double g2 = simplex.rows.front().quotient / floor - 1.0;
  const double g3 = simplex.rows.back().quotient / floor - 1.0;
  o.ok = o.ok && simplex.admissible && std::abs(g3) < 0.03;
  o.detail += "simplex gap " + fmt(g3) + " at delta=1e-3 (" + fmt(g2) + " at delta=1e-2)";
  return o;
}

Outcome ac10() {
  Outcome o;
  double moment = 0.0;
  double drift = 0.0;
  int count = 0;
  for (int n = 1; n <= 2; ++n) {
    const double p = Dimension(n).p(1);
    const QuadratureRule rule = build_quadrature(n, n == 1 ? 40 : 14);
    const HarmonicBasis alg = build_algebraic_basis(n, 2);
    std::mt19937_64 rng(static_cast<std::uint64_t>(300 + n));
    for (int t = 0; t < 20; ++t) {
      HarmonicExpansion e = random_expansion(alg, 2, rng, true) * cplx(0.15, 0.0);
      e.coeffs()[0] += std::sqrt(sphere_volume(n));
      const SphereFunction fn = [&](const SpherePoint& s) { return synthesize_at(e, alg, s); };
      const Eigen::VectorXcd vals = rule.sample(fn);
      const RecenterResult rr = recenter(vals, rule, p, 1e-11);
      const Eigen::VectorXcd mv = rule.sample(act_on_function(rr.map, fn, p));
      Eigen::VectorXd dens(mv.size());
      for (Eigen::Index i = 0; i < mv.size(); ++i) dens[i] = std::pow(std::abs(mv[i]), p);
      moment = std::max(moment, center_of_mass(dens, rule).norm());
      const double b0 = norm_B(vals, rule, p);
      drift = std::max(drift, std::abs(norm_B(mv, rule, p) - b0) / b0);
      ++count;
    }
  }
  o.ok = moment < 1e-8 && drift < 1e-8;
  o.detail = std::to_string(count) + " densities (n=1,2): max moment " + fmt(moment) + ", L^p drift " + fmt(drift);
  return o;
}

std::string stripped(const std::string& path) {
  std::ifstream in(path);
  std::string line;
  std::string out;
  while (std::getline(in, line)) {
    if (line.find("timestamp") == std::string::npos) out += line + "\n";
  }
  return out;
}

Outcome ac11() {
  Outcome o;
  const auto dir = std::filesystem::temp_directory_path() / "crlab_acceptance_determinism";
  std::filesystem::remove_all(dir);
  int compared = 0;
  for (const auto& name : suite_names()) {
    for (const std::string format : {"csv", "json"}) {
      ExperimentConfig cfg;
      cfg.suite = name;
      cfg.format = format;
      cfg.seed = 5;
      cfg.output_dir = (dir / "a").string();
      const std::string first = stripped(write_report(run_suite(cfg), cfg));
      cfg.output_dir = (dir / "b").string();
      const std::string second = stripped(write_report(run_suite(cfg), cfg));
      o.ok = o.ok && !first.empty() && first == second;
      ++compared;
    }
  }
  std::filesystem::remove_all(dir);
  o.detail = std::to_string(compared) + " report pairs identical apart from the timestamp line";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"AC1 quadrature volume", ac1},          {"AC2 ambient vs spectral GJMS", ac2},
      {"AC3 sharp constant and kappa", ac3},   {"AC4 commutator identity", ac4},
      {"AC5 symbolic cone commutator", ac5},  {"AC6 exact positivity", ac6},
      {"AC7 theta values", ac7},               {"AC8 quotient minimization", ac8},
      {"AC9 bubble constants", ac9},           {"AC10 recentering", ac10},
      {"AC11 determinism", ac11},
  };
  int failures = 0;
  for (const auto& [name, fn] : criteria) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.ok) ++failures;
    std::cout << (o.ok ? "PASS " : "FAIL ") << name << " | " << o.detail << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
