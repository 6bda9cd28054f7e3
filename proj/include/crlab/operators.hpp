#pragma once

// Sub-Laplacian, Reeb field and the CR GJMS operators P_{w,w'} on the sphere as
// diagonal multipliers on the bidegree spaces H_{j,l}.

#include <iosfwd>
#include <vector>

#include "crlab/harmonics.hpp"
#include "crlab/rational.hpp"

namespace crlab {

/// Eigenvalue of Delta_b on H_{j,l}: 2jl + n(j + l).
Rational sublaplacian_multiplier(int n, int j, int l);

/// tau with T F = i tau F on H_{j,l}, where T = i sum (z d/dz - zbar d/dzbar).
/// Equals j - l, so iT acts by l - j.
int reeb_multiplier(int n, int j, int l);

/// L_mu = Delta_b / 2 + (mu / 2) iT + (n^2 - mu^2) / 4 on H_{j,l}; equals
/// (j + (n + mu)/2)(l + (n - mu)/2).
Rational l_mu_multiplier(int n, const Rational& mu, int j, int l);

struct OperatorSpec {
  int n = 1;
  Rational w;
  Rational wp;

  /// Validates w - w' integral and k = w + w' + n + 1 a nonnegative integer
  /// (order zero is the identity).
  OperatorSpec(int n, Rational w, Rational wp);
  /// The critical operator P_k: w = w' = (k - 1 - n) / 2, 1 <= k < n + 1.
  static OperatorSpec sharp(int n, int k);

  [[nodiscard]] int k() const;
  [[nodiscard]] bool is_diagonal() const { return w == wp; }
  /// P_{w-1, w'}: the operator of order k - 1 appearing in the commutator identity.
  [[nodiscard]] OperatorSpec lowered() const { return {n, w - Rational(1), wp}; }
};

/// lambda(j, l) = kappa * prod_{m=0}^{k-1} L_{w'-w+k-2m-1}(j, l).
class SpectralMultiplier {
public:
  SpectralMultiplier(OperatorSpec spec, Rational kappa) : spec_(spec), kappa_(kappa) {}
  /// kappa = 2^k, the normalization of the sharp inequality.
  static SpectralMultiplier sharp(int n, int k);
  /// kappa = 1, the bare product.
  static SpectralMultiplier bare(const OperatorSpec& spec) { return {spec, Rational(1)}; }

  [[nodiscard]] const OperatorSpec& spec() const { return spec_; }
  [[nodiscard]] const Rational& kappa() const { return kappa_; }
  [[nodiscard]] Rational exact(int j, int l) const;
  [[nodiscard]] double operator()(int j, int l) const { return exact(j, l).to_double(); }

private:
  OperatorSpec spec_;
  Rational kappa_;
};

Rational gjms_multiplier(const OperatorSpec& spec, int j, int l, const Rational& kappa = Rational(1));

/// C_{n,2k} = (4 pi)^{-k} Gamma^2((n+1-k)/2) / Gamma^2((n+1+k)/2); throws OrderOutOfRange.
double sharp_constant(int n, int k);

/// The normalization kappa for which constants give equality in the sharp
/// inequality: 1 / (C_{n,2k} * lambda_bare(0,0) * vol^{k/(n+1)}).
double measured_kappa(int n, int k);

HarmonicExpansion apply_operator(const SpectralMultiplier& mult, const HarmonicExpansion& e,
                                 const HarmonicBasis& basis);

/// A = int conj(F) P F = sum lambda |c|^2.
double energy_A(const HarmonicExpansion& e, const SpectralMultiplier& mult, const HarmonicBasis& basis);
/// B = int |F|^p on the rule.
double norm_B(const Eigen::VectorXcd& node_values, const QuadratureRule& rule, double p);

/// L^2 norm of sum_j zbar_j [P_{w,w'}, z_j] F + c P_{w-1,w'} F with bare
/// normalization; c defaults to k (w' - k + 1). Needs basis J_max >= e.jmax() + 2.
double commutator_defect(const OperatorSpec& spec, const HarmonicExpansion& e, const HarmonicBasis& basis);
double commutator_defect(const OperatorSpec& spec, const HarmonicExpansion& e, const HarmonicBasis& basis,
                         const Rational& coefficient);

struct PositivityEntry {
  int j = 0;
  int l = 0;
  Rational lambda;       // bare lambda_{w,w}(j, l)
  Rational combination;  // (p-2) lambda_{w,w} + k (w-k+1) lambda_{w-1,w}
  Rational factorized;   // (p-2)(Delta_b/2 + (1-k) iT/2) prod_{m<k-1} L_{k-2m-1}
};

std::vector<PositivityEntry> positivity_scan(int n, int k, int j_max, int l_max);

/// CSV table with columns j,l,lambda,combination_value.
void write_positivity_csv(std::ostream& os, const std::vector<PositivityEntry>& rows);

}  // namespace crlab
