#include "crlab/operators.hpp"

#include <cmath>
#include <numbers>
#include <ostream>

namespace crlab {

Rational sublaplacian_multiplier(int n, int j, int l) {
  if (j < 0 || l < 0) throw InvalidArgument("sublaplacian_multiplier: negative bidegree");
  return Rational(2 * j * l + n * (j + l));
}

int reeb_multiplier(int /*n*/, int j, int l) {
  if (j < 0 || l < 0) throw InvalidArgument("reeb_multiplier: negative bidegree");
  return j - l;
}

Rational l_mu_multiplier(int n, const Rational& mu, int j, int l) {
  const Rational half(1, 2);
  const Rational i_t(-reeb_multiplier(n, j, l));
  return half * sublaplacian_multiplier(n, j, l) + half * mu * i_t +
         Rational(1, 4) * (Rational(n) - mu) * (Rational(n) + mu);
}

OperatorSpec::OperatorSpec(int n_, Rational w_, Rational wp_) : n(n_), w(w_), wp(wp_) {
  Dimension dim(n_);
  if (!(w - wp).is_integer()) throw InvalidArgument("OperatorSpec: w - w' must be an integer");
  const Rational k = w + wp + Rational(n + 1);
  if (!k.is_integer() || k.num() < 0) throw InvalidArgument("OperatorSpec: k = w + w' + n + 1 must be a nonnegative integer");
}

OperatorSpec OperatorSpec::sharp(int n, int k) {
  Dimension(n).check_order(k);
  const Rational w(k - 1 - n, 2);
  return {n, w, w};
}

int OperatorSpec::k() const { return static_cast<int>((w + wp + Rational(n + 1)).num()); }

Rational gjms_multiplier(const OperatorSpec& spec, int j, int l, const Rational& kappa) {
  const int k = spec.k();
  Rational prod = kappa;
  for (int m = 0; m < k; ++m) {
    const Rational mu = spec.wp - spec.w + Rational(k - 2 * m - 1);
    prod *= l_mu_multiplier(spec.n, mu, j, l);
  }
  return prod;
}

SpectralMultiplier SpectralMultiplier::sharp(int n, int k) {
  return {OperatorSpec::sharp(n, k), Rational(std::int64_t{1} << k)};
}

Rational SpectralMultiplier::exact(int j, int l) const { return gjms_multiplier(spec_, j, l, kappa_); }

double sharp_constant(int n, int k) {
  Dimension(n).check_order(k);
  const double ratio = std::tgamma((n + 1 - k) / 2.0) / std::tgamma((n + 1 + k) / 2.0);
  return std::pow(4.0 * std::numbers::pi, -k) * ratio * ratio;
}

double measured_kappa(int n, int k) {
  const double bare = gjms_multiplier(OperatorSpec::sharp(n, k), 0, 0).to_double();
  return 1.0 / (sharp_constant(n, k) * bare * std::pow(sphere_volume(n), static_cast<double>(k) / (n + 1)));
}

HarmonicExpansion apply_operator(const SpectralMultiplier& mult, const HarmonicExpansion& e,
                                 const HarmonicBasis& basis) {
  if (e.n() != basis.n() || e.n() != mult.spec().n) throw InvalidArgument("apply_operator: dimension mismatch");
  if (static_cast<std::size_t>(e.coeffs().size()) > basis.size()) {
    throw CutoffExceeded("apply_operator: expansion exceeds basis cutoff");
  }
  HarmonicExpansion out = e;
  BidegreeIndex last{-1, -1};
  double lambda = 0.0;
  for (Eigen::Index i = 0; i < e.coeffs().size(); ++i) {
    const BidegreeIndex idx = basis[static_cast<std::size_t>(i)].index;
    if (!(idx == last)) {
      lambda = mult(idx.j, idx.l);
      last = idx;
    }
    out.coeffs()[i] *= lambda;
  }
  return out;
}

double energy_A(const HarmonicExpansion& e, const SpectralMultiplier& mult, const HarmonicBasis& basis) {
  const HarmonicExpansion pe = apply_operator(mult, e, basis);
  return e.coeffs().dot(pe.coeffs()).real();
}

double norm_B(const Eigen::VectorXcd& node_values, const QuadratureRule& rule, double p) {
  Eigen::VectorXd v(node_values.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = std::pow(std::abs(node_values[i]), p);
  return rule.integrate(v);
}

double commutator_defect(const OperatorSpec& spec, const HarmonicExpansion& e, const HarmonicBasis& basis) {
  const int k = spec.k();
  return commutator_defect(spec, e, basis, Rational(k) * (spec.wp - Rational(k) + Rational(1)));
}

double commutator_defect(const OperatorSpec& spec, const HarmonicExpansion& e, const HarmonicBasis& basis,
                         const Rational& coefficient) {
  if (e.jmax() + 2 > basis.jmax()) {
    throw CutoffExceeded("commutator_defect: basis needs J_max >= " + std::to_string(e.jmax() + 2));
  }
  const auto p = SpectralMultiplier::bare(spec);
  const HarmonicExpansion pf = apply_operator(p, e, basis);
  HarmonicExpansion total = HarmonicExpansion::zero(basis, e.jmax() + 2);
  for (int i = 0; i <= spec.n; ++i) {
    const HarmonicExpansion pzf = apply_operator(p, multiply_by_coordinate(e, i, basis), basis);
    const HarmonicExpansion zpf = multiply_by_coordinate(pf, i, basis);
    total += multiply_by_coordinate(pzf - zpf, i, basis, true);
  }
  total += apply_operator(SpectralMultiplier::bare(spec.lowered()), e, basis) * cplx(coefficient.to_double(), 0.0);
  return total.l2_norm();
}

std::vector<PositivityEntry> positivity_scan(int n, int k, int j_max, int l_max) {
  const OperatorSpec spec = OperatorSpec::sharp(n, k);
  const Rational p = Dimension(n).p_exact(k);
  const Rational two(2);
  const Rational shift = Rational(k) * (spec.w - Rational(k) + Rational(1));
  std::vector<PositivityEntry> out;
  for (int j = 0; j <= j_max; ++j) {
    for (int l = 0; l <= l_max; ++l) {
      PositivityEntry row;
      row.j = j;
      row.l = l;
      row.lambda = gjms_multiplier(spec, j, l);
      const Rational lower = gjms_multiplier(spec.lowered(), j, l);
      row.combination = (p - two) * row.lambda + shift * lower;
      Rational tail(1);
      for (int m = 0; m <= k - 2; ++m) tail *= l_mu_multiplier(n, Rational(k - 2 * m - 1), j, l);
      const Rational first = Rational(1, 2) * sublaplacian_multiplier(n, j, l) +
                             Rational(1 - k, 2) * Rational(-reeb_multiplier(n, j, l));
      row.factorized = (p - two) * first * tail;
      out.push_back(row);
    }
  }
  return out;
}

void write_positivity_csv(std::ostream& os, const std::vector<PositivityEntry>& rows) {
  os << "j,l,lambda,combination_value\n";
  for (const auto& r : rows) os << r.j << ',' << r.l << ',' << r.lambda << ',' << r.combination << '\n';
}

}  // namespace crlab
