#pragma once

// Exact symbolic functions on the null cone of C^{n+2} with the flat
// Lorentz-Kaehler metric i(-d zeta_0 ^ d zetabar_0 + sum d zeta_j ^ d zetabar_j).
// A term is zeta_0^s zetabar_0^{s'} zeta'^alpha zetabar'^beta with rational s, s'.
// Sphere points correspond to zeta = zeta_0 (1, z).

#include <iosfwd>
#include <map>
#include <random>
#include <vector>

#include "crlab/operators.hpp"
#include "crlab/polynomial.hpp"
#include "crlab/rational.hpp"

namespace crlab {

struct ConeKey {
  Rational s;
  Rational sp;
  std::vector<int> alpha;  // exponents of zeta_1..zeta_{n+1}
  std::vector<int> beta;

  friend bool operator<(const ConeKey& a, const ConeKey& b);
  friend bool operator==(const ConeKey& a, const ConeKey& b) = default;
};

class ConePolynomial {
public:
  using Terms = std::map<ConeKey, Rational>;

  ConePolynomial() = default;
  explicit ConePolynomial(int n) : n_(n) {}

  [[nodiscard]] int n() const { return n_; }
  [[nodiscard]] const Terms& terms() const { return terms_; }
  [[nodiscard]] bool empty() const { return terms_.empty(); }

  void add_term(const ConeKey& key, const Rational& c);
  ConePolynomial& operator+=(const ConePolynomial& o);
  ConePolynomial& operator-=(const ConePolynomial& o);
  ConePolynomial& operator*=(const Rational& c);
  friend ConePolynomial operator+(ConePolynomial a, const ConePolynomial& b) { return a += b; }
  friend ConePolynomial operator-(ConePolynomial a, const ConePolynomial& b) { return a -= b; }
  friend ConePolynomial operator*(ConePolynomial a, const Rational& c) { return a *= c; }
  friend ConePolynomial operator*(const ConePolynomial& a, const ConePolynomial& b);

  /// Coordinate function zeta_i (i = 0 .. n+1) or its conjugate.
  static ConePolynomial coordinate(int n, int i, bool conjugate = false);
  /// Monomial zeta_0^s zetabar_0^{s'}.
  static ConePolynomial zeta0_power(int n, const Rational& s, const Rational& sp);
  /// The defining function rho = |zeta_0|^2 - sum |zeta_j|^2.
  static ConePolynomial rho(int n);

  /// d / d zeta_i, or d / d zetabar_i.
  [[nodiscard]] ConePolynomial derivative(int i, bool conjugate = false) const;
  /// Z f = sum zeta_i df/dzeta_i (conjugate: Zbar).
  [[nodiscard]] ConePolynomial euler(bool conjugate = false) const;

  /// Throws HomogeneityViolation unless every term has bidegree (w, w').
  void check_bidegree(const Rational& w, const Rational& wp) const;

  /// Restriction to zeta_0 = 1 of a bidegree-(0,0) function; throws
  /// HomogeneityViolation if some term has nonzero total zeta_0 weight.
  [[nodiscard]] ExactPolynomial restrict_to_sphere() const;

  /// One term per line: s s' alpha... beta... coefficient as num/den.
  void dump(std::ostream& os) const;

private:
  int n_ = 0;
  Terms terms_;
};

/// Frozen constant in Delta = c (-d0 d0bar + sum dj djbar); see calibrate_laplacian_constant.
inline const Rational kLaplacianConstant{-2};

/// zeta_0^{w-a} zetabar_0^{w'-b} P(zeta') for each bidegree-(a,b) part of P.
ConePolynomial lift(const ExactPolynomial& p, const Rational& w, const Rational& wp);

ConePolynomial ambient_laplacian(const ConePolynomial& f, const Rational& c = kLaplacianConstant);

/// Restriction of zeta_0^{k-w} zetabar_0^{k-w'} (Delta^k / 2^k) f for f of bidegree (w, w').
ExactPolynomial gjms_ambient(const OperatorSpec& spec, const ConePolynomial& f,
                             const Rational& c = kLaplacianConstant);
/// Lifts P with (w, w') and applies the construction above.
ExactPolynomial gjms_ambient(const OperatorSpec& spec, const ExactPolynomial& p,
                             const Rational& c = kLaplacianConstant);

/// Scans the candidates {1, 2, -1, -2} and returns the unique c for which the
/// construction on constants (n = 1, k = 1) reproduces n^2 / 4.
Rational calibrate_laplacian_constant();

/// zeta_0 Delta^k (zeta_j f) - zeta_j Delta^k (zeta_0 f) + factor X_j(Delta^{k-1} f),
/// X_j = zeta_0 d/dzetabar_j + zeta_j d/dzetabar_0; factor defaults to 2k.
ConePolynomial cone_commutator_residual(int k, int j, const ConePolynomial& f);
ConePolynomial cone_commutator_residual(int k, int j, const ConePolynomial& f, const Rational& factor);

/// Exact comparison of gjms_ambient against lambda(j,l) P on a polynomial of
/// bidegree (j, l), modulo |z|^2 = 1.
bool ambient_matches_spectrum(const OperatorSpec& spec, const ExactPolynomial& p, int j, int l);

/// Random homogeneous cone polynomial of bidegree (w, w'): `terms` monomials
/// with zeta' degrees in 0..2 and small rational coefficients.
ConePolynomial random_cone_polynomial(int n, const Rational& w, const Rational& wp, std::mt19937_64& rng,
                                      int terms);

}  // namespace crlab
