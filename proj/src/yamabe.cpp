#include "crlab/yamabe.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <sstream>

namespace crlab {

namespace {

Eigen::VectorXd multipliers(const HarmonicBasis& basis, int k, int jmax) {
  const auto mult = SpectralMultiplier::sharp(basis.n(), k);
  const auto m = static_cast<Eigen::Index>(basis.size_upto(jmax));
  Eigen::VectorXd out(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const auto idx = basis[static_cast<std::size_t>(i)].index;
    out[i] = mult(idx.j, idx.l);
  }
  return out;
}

// Real part on the nodes, re-expanded, then scaled to B = 1.
HarmonicExpansion normalized_real(const HarmonicExpansion& f, const HarmonicBasis& basis, double p,
                                  Eigen::VectorXcd& values) {
  values = synthesize(f, basis).real().cast<cplx>();
  const double b = norm_B(values, basis.rule(), p);
  if (!(b > 0.0)) throw ZeroFunction("minimize_quotient: zero function");
  const double s = std::pow(b, -1.0 / p);
  values *= s;
  return analyze(values, basis, f.jmax());
}

// Moves F along the conformal orbit to the balanced representative, where the
// quotient is no longer flat; the move is a plain re-expansion, so it is only
// kept when it lowers the value.
bool recentering_jump(HarmonicExpansion& f, Eigen::VectorXcd& vals, double& value, const HarmonicBasis& basis,
                      double p, const std::function<double(const HarmonicExpansion&)>& energy) {
  RecenterResult rc{AutomorphismParam::identity(basis.n()), 0.0, 0};
  try {
    rc = recenter(vals, basis.rule(), p, 1e-10, 30);
  } catch (const Error&) {
    return false;
  }
  if (rc.map.center().norm() < 1e-9) return false;
  const ComplexPolynomial poly = to_polynomial(f, basis);
  const SphereFunction fn = [&poly](const SpherePoint& s) { return poly.evaluate(s.coords()); };
  Eigen::VectorXcd tv;
  const HarmonicExpansion moved =
      normalized_real(analyze(basis.rule().sample(act_on_function(rc.map, fn, p)), basis, f.jmax()), basis, p, tv);
  const double mv = energy(moved);
  if (!(mv < value)) return false;
  f = moved;
  vals = tv;
  value = mv;
  return true;
}

}  // namespace

double rayleigh_quotient(const HarmonicExpansion& f, int k, const HarmonicBasis& basis) {
  const double p = Dimension(basis.n()).p(k);
  const double b = norm_B(synthesize(f, basis), basis.rule(), p);
  if (!(b > 0.0)) throw ZeroFunction("rayleigh_quotient: zero function");
  const double a = energy_A(f, SpectralMultiplier::sharp(basis.n(), k), basis);
  return a / std::pow(b, 2.0 / p);
}

MinimizeResult minimize_quotient(const HarmonicExpansion& start, int k, const HarmonicBasis& basis,
                                 const MinimizeOptions& opts) {
  const int n = basis.n();
  const double p = Dimension(n).p(k);
  const Eigen::VectorXd lambda = multipliers(basis, k, start.jmax());
  auto energy = [&](const HarmonicExpansion& e) {
    return (lambda.array() * e.coeffs().array().abs2()).sum();
  };

  Eigen::VectorXcd vals;
  HarmonicExpansion f = normalized_real(start, basis, p, vals);
  double value = energy(f);
  MinimizeResult out{f, value, 0.0, 0};
  for (int it = 0; it < opts.max_iter; ++it) {
    Eigen::VectorXcd nl(vals.size());
    for (Eigen::Index i = 0; i < vals.size(); ++i) nl[i] = std::pow(std::abs(vals[i]), p - 2.0) * vals[i];
    const Eigen::VectorXcd g = analyze(nl, basis, f.jmax()).coeffs();
    const Eigen::VectorXcd grad = 2.0 * (lambda.cast<cplx>().cwiseProduct(f.coeffs()) - value * g);
    out.gradient_norm = grad.norm();
    out.iterations = it;
    if (out.gradient_norm < opts.gtol) return out;

    const Eigen::VectorXcd dir = f.coeffs() - value * g.cwiseQuotient(lambda.cast<cplx>());
    double tau = 1.0;
    bool accepted = false;
    for (int bt = 0; bt < 40; ++bt, tau *= 0.5) {
      Eigen::VectorXcd tv;
      const HarmonicExpansion trial =
          normalized_real(HarmonicExpansion(n, f.jmax(), f.coeffs() - tau * dir), basis, p, tv);
      const double tval = energy(trial);
      if (tval < value) {
        const double decrease = (value - tval) / value;
        f = trial;
        vals = tv;
        value = tval;
        accepted = true;
        out.f = f;
        out.value = value;
        if ((it + 1) % 20 == 0 && recentering_jump(f, vals, value, basis, p, energy)) {
          out.f = f;
          out.value = value;
          break;
        }
        if (decrease < opts.tol) {
          out.iterations = it + 1;
          return out;
        }
        break;
      }
    }
    if (!accepted) {
      // No descent possible at working precision: a critical point.
      out.iterations = it + 1;
      return out;
    }
  }
  std::ostringstream os;
  os << "minimize_quotient: gradient norm " << out.gradient_norm << " after " << opts.max_iter << " iterations";
  throw NoConvergence(os.str());
}

MinimizeResult minimize_quotient(const HarmonicBasis& basis, int k, std::uint64_t seed, const MinimizeOptions& opts) {
  if (basis.jmax() < 2) throw InvalidArgument("minimize_quotient: J_max must be >= 2");
  std::mt19937_64 rng(seed);
  HarmonicExpansion pert = random_expansion(basis, basis.jmax(), rng, true);
  pert.coeffs()[0] = 0.0;
  const double scale = std::sqrt(sphere_volume(basis.n()));
  pert *= cplx(opts.perturbation * scale / pert.l2_norm(), 0.0);
  HarmonicExpansion start = HarmonicExpansion::zero(basis, basis.jmax());
  start.coeffs()[0] = scale;
  return minimize_quotient(start + pert, k, basis, opts);
}

void BubbleSpec::validate() const {
  Dimension(n).check_order(k);
  if (bubbles.empty()) throw InvalidArgument("BubbleSpec: no bubbles");
  for (std::size_t i = 0; i < bubbles.size(); ++i) {
    const auto& b = bubbles[i];
    if (b.center.n() != n) throw InvalidArgument("BubbleSpec: center of wrong dimension");
    if (!(b.delta > 0.0 && b.delta <= 1.0)) throw InvalidArgument("BubbleSpec: delta must lie in (0, 1]");
    for (std::size_t j = 0; j < i; ++j) {
      if ((bubbles[j].center.coords() - b.center.coords()).norm() < 1e-12) {
        throw InvalidArgument("BubbleSpec: centers must be distinct");
      }
    }
  }
}

Eigen::VectorXcd bubble_center(const Bubble& b) { return (1.0 - b.delta) * b.center.coords(); }

namespace {

// g with g^p the volume density of the automorphism centered at xi, so int g^p = vol.
double unit_bubble(const Eigen::VectorXcd& xi, const Eigen::VectorXcd& s, double exponent) {
  const double d = std::abs(1.0 - s.dot(xi));
  return std::pow((1.0 - xi.squaredNorm()) / (d * d), exponent);
}

}  // namespace

SphereFunction bubble_family(const BubbleSpec& spec) {
  spec.validate();
  const double p = Dimension(spec.n).p(spec.k);
  const double e = (spec.n + 1) / p;
  const double norm = std::pow(sphere_volume(spec.n), -1.0 / p);
  std::vector<Eigen::VectorXcd> xis;
  std::vector<double> amps;
  for (const auto& b : spec.bubbles) {
    xis.push_back(bubble_center(b));
    amps.push_back(b.amplitude * norm);
  }
  return [xis, amps, e](const SpherePoint& s) {
    double v = 0.0;
    for (std::size_t i = 0; i < xis.size(); ++i) v += amps[i] * unit_bubble(xis[i], s.coords(), e);
    return cplx(v, 0.0);
  };
}

BubbleQuotient bubble_quotient(const BubbleSpec& spec, const QuadratureRule& base) {
  spec.validate();
  if (base.n() != spec.n) throw InvalidArgument("bubble_quotient: rule of wrong dimension");
  const int n = spec.n;
  const double p = Dimension(n).p(spec.k);
  const double e = (n + 1) / p;
  const double vol = sphere_volume(n);
  const auto m = spec.bubbles.size();
  std::vector<Eigen::VectorXcd> xis;
  Eigen::VectorXd amps(static_cast<Eigen::Index>(m));
  for (std::size_t i = 0; i < m; ++i) {
    xis.push_back(bubble_center(spec.bubbles[i]));
    amps[static_cast<Eigen::Index>(i)] = spec.bubbles[i].amplitude;
  }
  Eigen::MatrixXd overlap = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
  double bsum = 0.0;
  Eigen::VectorXd g(static_cast<Eigen::Index>(m));
  for (std::size_t piece = 0; piece < m; ++piece) {
    const QuadratureRule rule = transport(base, AutomorphismParam::from_center(xis[piece]));
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const Eigen::VectorXcd s = rule.nodes().col(static_cast<Eigen::Index>(q));
      double total = 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        g[static_cast<Eigen::Index>(i)] = unit_bubble(xis[i], s, e);
        total += std::pow(g[static_cast<Eigen::Index>(i)], p);
      }
      const double chi = std::pow(g[static_cast<Eigen::Index>(piece)], p) / total;
      const double w = rule.weights()[static_cast<Eigen::Index>(q)] * chi;
      if (w == 0.0) continue;
      const Eigen::VectorXd gp = g.array().pow(p - 1.0).matrix();
      overlap.noalias() += w * g * gp.transpose();
      bsum += w * std::pow(std::abs(amps.dot(g)), p);
    }
  }
  overlap = 0.5 * (overlap + overlap.transpose()).eval();
  const double kl = SpectralMultiplier::sharp(n, spec.k)(0, 0);
  BubbleQuotient out;
  out.a = kl * std::pow(vol, -2.0 / p) * amps.dot(overlap * amps);
  out.b = bsum / vol;
  out.quotient = out.a / std::pow(out.b, 2.0 / p);
  return out;
}

SphereFunction heisenberg_bubble(int n, int k, double delta) {
  Dimension(n).check_order(k);
  if (!(delta > 0.0)) throw InvalidArgument("heisenberg_bubble: delta must be positive");
  const double a = (2.0 * n + 2.0 - 2.0 * k) / 4.0;
  return [a, delta](const SpherePoint& s) {
    const HeisenbergPoint h = cayley_inverse(s);
    const double lam = cayley_conformal_factor(h);
    const double dilated = std::pow(delta, -2.0 * a) * std::pow(cayley_conformal_factor(dilate(delta, h)), a);
    return cplx(dilated / std::pow(lam, a), 0.0);
  };
}

ProbeReport improved_constant_probe(int n, int k, int w, int wp, const DiscreteMeasure& config,
                                    const std::vector<double>& deltas, const QuadratureRule& base) {
  Dimension dim(n);
  dim.check_order(k);
  const double p = dim.p(k);
  ProbeReport report;
  report.moment_residual = moment_residuals(config, MomentSystem(n, w, wp)).norm();
  report.admissible = report.moment_residual < 1e-9;
  const double theta = static_cast<double>(dim.Q() - 2 * k) / dim.Q();
  report.theta_value = theta_objective(config, theta);
  report.floor = report.theta_value / sharp_constant(n, k);
  if (!report.admissible) return report;
  report.min_quotient = std::numeric_limits<double>::infinity();
  for (double delta : deltas) {
    BubbleSpec spec{n, k, {}};
    for (std::size_t i = 0; i < config.size(); ++i) {
      spec.bubbles.push_back({config.atoms()[i], delta, std::pow(config.weights()[i], 1.0 / p)});
    }
    const double q = bubble_quotient(spec, base).quotient;
    report.rows.push_back({delta, q});
    report.min_quotient = std::min(report.min_quotient, q);
  }
  const auto tightest = std::min_element(report.rows.begin(), report.rows.end(),
                                         [](const ProbeRow& a, const ProbeRow& b) { return a.delta < b.delta; });
  if (tightest != report.rows.end()) report.relative_gap = (tightest->quotient - report.floor) / report.floor;
  return report;
}

double cr_invariance_check(const HarmonicExpansion& f, int k, const AutomorphismParam& a, const HarmonicBasis& basis) {
  const double p = Dimension(basis.n()).p(k);
  const ComplexPolynomial poly = to_polynomial(f, basis);
  const SphereFunction fn = [poly](const SpherePoint& s) { return poly.evaluate(s.coords()); };
  const HarmonicExpansion moved = analyze(basis.rule().sample(act_on_function(a, fn, p)), basis);
  return std::abs(rayleigh_quotient(moved, k, basis) - rayleigh_quotient(f, k, basis));
}

}  // namespace crlab
