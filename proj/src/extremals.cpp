#include "crlab/extremals.hpp"

#include <cmath>
#include <sstream>

namespace crlab {

namespace {

Eigen::VectorXd to_real(const Eigen::VectorXcd& z) {
  Eigen::VectorXd r(2 * z.size());
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    r[2 * i] = z[i].real();
    r[2 * i + 1] = z[i].imag();
  }
  return r;
}

Eigen::VectorXcd to_complex(const Eigen::VectorXd& r) {
  Eigen::VectorXcd z(r.size() / 2);
  for (Eigen::Index i = 0; i < z.size(); ++i) z[i] = cplx(r[2 * i], r[2 * i + 1]);
  return z;
}

Eigen::VectorXd lp_density(const Eigen::VectorXcd& values, double p) {
  Eigen::VectorXd d(values.size());
  for (Eigen::Index i = 0; i < d.size(); ++i) d[i] = std::pow(std::abs(values[i]), p);
  return d;
}

}  // namespace

void ExtremalParams::validate() const {
  if (xi.size() < 2) throw InvalidArgument("ExtremalParams: xi must have n + 1 >= 2 entries");
  if (!(xi.norm() < 1.0)) throw InvalidArgument("ExtremalParams: |xi| must be < 1");
  Dimension(n()).check_order(k);
}

double extremal_exponent(int n, int k) {
  Dimension(n).check_order(k);
  return (2.0 * n + 2.0 - 2.0 * k) / 2.0;
}

SphereFunction extremal_function(const ExtremalParams& params) {
  params.validate();
  const double e = extremal_exponent(params.n(), params.k);
  return [xi = params.xi, c = params.amplitude, e](const SpherePoint& s) {
    // xi . conj(eta) = sum xi_i conj(eta_i)
    const cplx d = 1.0 - s.coords().dot(xi);
    return c / std::pow(std::abs(d), e);
  };
}

Eigen::VectorXd center_of_mass(const Eigen::VectorXd& density, const QuadratureRule& rule) {
  if (density.size() != static_cast<Eigen::Index>(rule.size())) {
    throw InvalidArgument("center_of_mass: sample count mismatch");
  }
  for (Eigen::Index i = 0; i < density.size(); ++i) {
    if (density[i] < 0.0 || std::isnan(density[i])) {
      throw NegativeDensity("center_of_mass: negative density at node " + std::to_string(i));
    }
  }
  const double mass = rule.integrate(density);
  if (!(mass > 0.0)) throw ZeroFunction("center_of_mass: zero mass");
  Eigen::VectorXcd m(rule.n() + 1);
  for (Eigen::Index i = 0; i <= rule.n(); ++i) {
    const Eigen::VectorXcd row = rule.nodes().row(i).transpose();
    m[i] = rule.integrate(Eigen::VectorXcd(row.array() * density.array().cast<cplx>())) / mass;
  }
  return to_real(m);
}

Eigen::VectorXd pushed_moments(const Eigen::VectorXd& density, const QuadratureRule& rule,
                               const Eigen::VectorXcd& zeta) {
  const int n = rule.n();
  const Eigen::VectorXd wd = rule.weights().cwiseProduct(density);
  const double mass = wd.sum();
  if (!(mass > 0.0)) throw ZeroFunction("pushed_moments: zero mass");
  Eigen::VectorXcd m = Eigen::VectorXcd::Zero(n + 1);
  const Eigen::VectorXcd minus = -zeta;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const auto c = static_cast<Eigen::Index>(i);
    if (wd[c] == 0.0) continue;
    m += wd[c] * ball_automorphism(minus, rule.nodes().col(c));
  }
  return to_real(m / mass);
}

RecenterResult recenter(const Eigen::VectorXcd& values, const QuadratureRule& rule, double p, double tol,
                        int max_iter) {
  const Eigen::VectorXd density = lp_density(values, p);
  (void)center_of_mass(density, rule);  // validates mass
  const int n = rule.n();
  const auto dim = static_cast<Eigen::Index>(2 * n + 2);
  Eigen::VectorXd zeta = Eigen::VectorXd::Zero(dim);
  auto moments = [&](const Eigen::VectorXd& z) { return pushed_moments(density, rule, to_complex(z)); };

  Eigen::VectorXd g = moments(zeta);
  double gnorm = g.norm();
  int it = 0;
  for (; it < max_iter && gnorm >= tol; ++it) {
    Eigen::MatrixXd jac(dim, dim);
    const double h = 1e-6;
    for (Eigen::Index c = 0; c < dim; ++c) {
      Eigen::VectorXd zp = zeta;
      Eigen::VectorXd zm = zeta;
      zp[c] += h;
      zm[c] -= h;
      jac.col(c) = (moments(zp) - moments(zm)) / (2.0 * h);
    }
    const Eigen::VectorXd newton = jac.colPivHouseholderQr().solve(-g);
    bool accepted = false;
    for (const Eigen::VectorXd& dir : {newton, Eigen::VectorXd(g)}) {
      double t = 1.0;
      for (int halving = 0; halving < 40; ++halving, t *= 0.5) {
        const Eigen::VectorXd trial = zeta + t * dir;
        if (!(trial.norm() < 1.0)) continue;
        const Eigen::VectorXd gt = moments(trial);
        if (gt.norm() < gnorm) {
          zeta = trial;
          g = gt;
          gnorm = gt.norm();
          accepted = true;
          break;
        }
      }
      if (accepted) break;
    }
    if (!accepted) break;
  }
  if (gnorm >= tol) {
    std::ostringstream os;
    os << "recenter: moment norm " << gnorm << " after " << it << " iterations";
    throw NoConvergence(os.str());
  }
  return {AutomorphismParam::from_center(-to_complex(zeta)), gnorm, it};
}

double euler_lagrange_residual(const HarmonicExpansion& f, int k, const HarmonicBasis& basis) {
  const int n = basis.n();
  const double p = Dimension(n).p(k);
  const auto mult = SpectralMultiplier::sharp(n, k);
  const Eigen::VectorXcd raw = synthesize(f, basis);
  const double b = norm_B(raw, basis.rule(), p);
  if (!(b > 0.0)) throw ZeroFunction("euler_lagrange_residual: zero function");
  const double scale = std::pow(b, -1.0 / p);
  const HarmonicExpansion u = f * cplx(scale, 0.0);
  const Eigen::VectorXcd vals = raw * scale;
  const double a = energy_A(u, mult, basis);
  const Eigen::VectorXcd pu = synthesize(apply_operator(mult, u, basis), basis);
  Eigen::VectorXd r2(vals.size());
  for (Eigen::Index i = 0; i < vals.size(); ++i) {
    const cplx nl = a * std::pow(std::abs(vals[i]), p - 2.0) * vals[i];
    r2[i] = std::norm(pu[i] - nl);
  }
  return std::sqrt(basis.rule().integrate(r2));
}

double second_variation_gap(const HarmonicExpansion& u, int k, const HarmonicBasis& basis, double balance_tol) {
  const int n = basis.n();
  const double p = Dimension(n).p(k);
  if (basis.jmax() < u.jmax() + 1) throw CutoffExceeded("second_variation_gap: basis needs one degree of headroom");
  if (basis.has_rule()) {
    const Eigen::VectorXd m = center_of_mass(lp_density(synthesize(u, basis), p), basis.rule());
    if (m.norm() > balance_tol) {
      std::ostringstream os;
      os << "second_variation_gap: moment norm " << m.norm() << " exceeds " << balance_tol;
      throw NotBalanced(os.str());
    }
  }
  const auto mult = SpectralMultiplier::sharp(n, k);
  const HarmonicExpansion pu = apply_operator(mult, u, basis);
  double sum = 0.0;
  for (int i = 0; i <= n; ++i) {
    const HarmonicExpansion zu = multiply_by_coordinate(u, i, basis);
    const HarmonicExpansion comm = apply_operator(mult, zu, basis) - multiply_by_coordinate(pu, i, basis);
    sum += zu.widened(basis, comm.jmax()).coeffs().dot(comm.coeffs()).real();
  }
  return sum - (p - 2.0) * u.coeffs().dot(pu.coeffs()).real();
}

double second_variation_spectral(const HarmonicExpansion& u, int k, const HarmonicBasis& basis) {
  const OperatorSpec spec = OperatorSpec::sharp(basis.n(), k);
  return second_variation_spectral(u, k, basis, Rational(k) * (spec.w - Rational(k) + Rational(1)));
}

double second_variation_spectral(const HarmonicExpansion& u, int k, const HarmonicBasis& basis,
                                 const Rational& coefficient) {
  const int n = basis.n();
  const OperatorSpec spec = OperatorSpec::sharp(n, k);
  const Rational p = Dimension(n).p_exact(k);
  double sum = 0.0;
  for (Eigen::Index i = 0; i < u.coeffs().size(); ++i) {
    const auto idx = basis[static_cast<std::size_t>(i)].index;
    const Rational comb = (p - Rational(2)) * gjms_multiplier(spec, idx.j, idx.l) +
                          coefficient * gjms_multiplier(spec.lowered(), idx.j, idx.l);
    sum += std::norm(u.coeffs()[i]) * comb.to_double();
  }
  return -std::ldexp(sum, k);
}

}  // namespace crlab
