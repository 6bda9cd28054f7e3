#pragma once

// Orthonormal bases of the bidegree spaces H_{j,l} on S^{2n+1}: restrictions of
// polynomials of bidegree (j, l) annihilated by the flat Laplacian
// sum_i d^2/dz_i dzbar_i. Expansions, analysis/synthesis on quadrature nodes
// and multiplication by coordinate functions in coefficient space.

#include <iosfwd>
#include <memory>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "crlab/polynomial.hpp"
#include "crlab/quadrature.hpp"

namespace crlab {

struct BidegreeIndex {
  int j = 0;
  int l = 0;
  friend bool operator==(const BidegreeIndex&, const BidegreeIndex&) = default;
};

/// dim H_{j,l}, from the rank of the flat Laplacian on bidegree-(j,l) polynomials.
int basis_dimension(int n, int j, int l);

/// Exact (unnormalized) spanning set of H_{j,l}: the rational nullspace of the
/// flat Laplacian, one vector per charge block in reduced echelon form.
std::vector<ExactPolynomial> exact_harmonic_block(int n, int j, int l);

struct BasisElement {
  BidegreeIndex index;
  ComplexPolynomial poly;  // orthonormal in L^2(d xi)
};

class HarmonicBasis {
public:
  HarmonicBasis(int n, int jmax, std::vector<BasisElement> elements,
                std::shared_ptr<const QuadratureRule> rule);

  [[nodiscard]] int n() const { return n_; }
  [[nodiscard]] int jmax() const { return jmax_; }
  [[nodiscard]] std::size_t size() const { return elements_.size(); }
  /// Number of elements with max(j, l) <= cutoff; they form a prefix.
  [[nodiscard]] std::size_t size_upto(int cutoff) const;
  [[nodiscard]] const BasisElement& operator[](std::size_t i) const { return elements_[i]; }
  [[nodiscard]] const std::vector<BasisElement>& elements() const { return elements_; }
  /// Throws InvalidArgument for an algebraic-only basis (built without a rule).
  [[nodiscard]] const QuadratureRule& rule() const;
  [[nodiscard]] bool has_rule() const { return rule_ != nullptr; }
  [[nodiscard]] std::shared_ptr<const QuadratureRule> rule_ptr() const { return rule_; }

  /// Basis values at the quadrature nodes (nodes x elements), built lazily.
  [[nodiscard]] const Eigen::MatrixXcd& node_values() const;

  /// Text cache: versioned header with n, jmax and quadrature id, then per
  /// (j, l) block the monomial coefficient table with exponent multi-indices.
  void write_cache(std::ostream& os) const;
  static HarmonicBasis read_cache(std::istream& is);

private:
  int n_;
  int jmax_;
  std::vector<BasisElement> elements_;
  std::vector<std::size_t> prefix_;  // prefix_[c] = size_upto(c)
  std::shared_ptr<const QuadratureRule> rule_;
  mutable std::optional<Eigen::MatrixXcd> node_values_;
};

/// Quadrature degree used by build_basis when none is given.
int default_quadrature_degree(int jmax);

/// Throws QuadratureInsufficient if the rule cannot integrate products of two
/// band-limited functions exactly (degree < 4 jmax).
HarmonicBasis build_basis(int n, int jmax, std::optional<int> quadrature_degree = std::nullopt);
HarmonicBasis build_basis(int n, int jmax, std::shared_ptr<const QuadratureRule> rule);
/// Basis without quadrature: polynomial algebra and exact moments only.
HarmonicBasis build_algebraic_basis(int n, int jmax);

class HarmonicExpansion {
public:
  HarmonicExpansion() = default;
  HarmonicExpansion(int n, int jmax, Eigen::VectorXcd coeffs) : n_(n), jmax_(jmax), c_(std::move(coeffs)) {}
  static HarmonicExpansion zero(const HarmonicBasis& basis, int jmax);

  [[nodiscard]] int n() const { return n_; }
  [[nodiscard]] int jmax() const { return jmax_; }
  [[nodiscard]] const Eigen::VectorXcd& coeffs() const { return c_; }
  [[nodiscard]] Eigen::VectorXcd& coeffs() { return c_; }
  [[nodiscard]] double l2_norm() const { return c_.norm(); }

  /// Same function with a larger cutoff (zero padded).
  [[nodiscard]] HarmonicExpansion widened(const HarmonicBasis& basis, int jmax) const;

  HarmonicExpansion& operator+=(const HarmonicExpansion& o);
  HarmonicExpansion& operator-=(const HarmonicExpansion& o);
  HarmonicExpansion& operator*=(cplx s) {
    c_ *= s;
    return *this;
  }
  friend HarmonicExpansion operator+(HarmonicExpansion a, const HarmonicExpansion& b) { return a += b; }
  friend HarmonicExpansion operator-(HarmonicExpansion a, const HarmonicExpansion& b) { return a -= b; }
  friend HarmonicExpansion operator*(HarmonicExpansion a, cplx s) { return a *= s; }
  friend HarmonicExpansion operator*(cplx s, HarmonicExpansion a) { return a *= s; }

private:
  int n_ = 0;
  int jmax_ = 0;
  Eigen::VectorXcd c_;
};

/// Quadrature inner products against the basis up to the cutoff.
HarmonicExpansion analyze(const Eigen::VectorXcd& node_values, const HarmonicBasis& basis,
                          std::optional<int> cutoff = std::nullopt);
/// Values at the quadrature nodes of the basis' rule.
Eigen::VectorXcd synthesize(const HarmonicExpansion& e, const HarmonicBasis& basis);
/// Values at arbitrary points.
std::vector<cplx> synthesize(const HarmonicExpansion& e, const HarmonicBasis& basis,
                             const std::vector<SpherePoint>& points);
cplx synthesize_at(const HarmonicExpansion& e, const HarmonicBasis& basis, const SpherePoint& point);

/// The expansion as an explicit polynomial in (z, zbar).
ComplexPolynomial to_polynomial(const HarmonicExpansion& e, const HarmonicBasis& basis);
/// Orthogonal projection of a polynomial onto the basis up to the cutoff
/// (exact moments, coefficients below 1e-13 pruned).
HarmonicExpansion project_polynomial(const ComplexPolynomial& p, const HarmonicBasis& basis, int cutoff);

/// Expansion of z_i F (or zbar_i F), cutoff raised by one.
HarmonicExpansion multiply_by_coordinate(const HarmonicExpansion& e, int i, const HarmonicBasis& basis,
                                         bool conjugate = false);

/// Index range [begin, end) of the H_{j,l} block inside the basis, or empty.
std::pair<std::size_t, std::size_t> block_range(const HarmonicBasis& basis, BidegreeIndex idx);

/// Random band-limited expansion with coefficients ~ N(0, 1) per real component.
HarmonicExpansion random_expansion(const HarmonicBasis& basis, int jmax, std::mt19937_64& rng,
                                   bool real_valued = false);

/// Projects onto real-valued functions: (F + conj F) / 2.
HarmonicExpansion real_part(const HarmonicExpansion& e, const HarmonicBasis& basis);

}  // namespace crlab
