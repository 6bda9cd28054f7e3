#pragma once

// Sparse polynomials in (z, zbar) on C^{n+1}. A monomial z^alpha zbar^beta is
// keyed by the concatenated exponent vector (alpha_0..alpha_n, beta_0..beta_n).

#include <cmath>
#include <complex>
#include <map>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "crlab/errors.hpp"
#include "crlab/rational.hpp"

namespace crlab {

using Exponent = std::vector<int>;

inline int holo_degree(const Exponent& e) {
  int d = 0;
  for (std::size_t i = 0; i < e.size() / 2; ++i) d += e[i];
  return d;
}

inline int antiholo_degree(const Exponent& e) {
  int d = 0;
  for (std::size_t i = e.size() / 2; i < e.size(); ++i) d += e[i];
  return d;
}

/// Charge vector alpha - beta; the circle action z_i -> e^{i phi} z_i weights.
inline std::vector<int> charge(const Exponent& e) {
  const std::size_t m = e.size() / 2;
  std::vector<int> c(m);
  for (std::size_t i = 0; i < m; ++i) c[i] = e[i] - e[m + i];
  return c;
}

namespace detail {
template <typename C>
bool is_zero(const C& c) {
  if constexpr (std::is_same_v<C, Rational>) {
    return c.is_zero();
  } else {
    return c == C{};
  }
}
}  // namespace detail

template <typename Coeff>
class Polynomial {
public:
  using Terms = std::map<Exponent, Coeff>;

  Polynomial() = default;
  explicit Polynomial(int n) : n_(n) {}

  static Polynomial monomial(int n, Exponent e, Coeff c = Coeff(1)) {
    Polynomial p(n);
    p.add_term(std::move(e), c);
    return p;
  }
  static Polynomial coordinate(int n, int i, bool conjugate = false) {
    Exponent e(static_cast<std::size_t>(2 * (n + 1)), 0);
    e[static_cast<std::size_t>(conjugate ? n + 1 + i : i)] = 1;
    return monomial(n, std::move(e));
  }

  [[nodiscard]] int n() const { return n_; }
  [[nodiscard]] const Terms& terms() const { return terms_; }
  [[nodiscard]] bool empty() const { return terms_.empty(); }
  [[nodiscard]] std::size_t size() const { return terms_.size(); }

  void add_term(const Exponent& e, const Coeff& c) {
    if (detail::is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (detail::is_zero(it->second)) terms_.erase(it);
    }
  }

  Polynomial& operator+=(const Polynomial& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  Polynomial& operator*=(const Coeff& s) {
    if (detail::is_zero(s)) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, c] : terms_) c *= s;
    return *this;
  }
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Coeff& s) { return a *= s; }
  friend Polynomial operator*(const Coeff& s, Polynomial a) { return a *= s; }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    Polynomial out(a.n_);
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        Exponent e = ea;
        for (std::size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
        out.add_term(e, ca * cb);
      }
    }
    return out;
  }

  /// Multiplication by z_i (or zbar_i).
  [[nodiscard]] Polynomial times_coordinate(int i, bool conjugate = false) const {
    Polynomial out(n_);
    const auto slot = static_cast<std::size_t>(conjugate ? n_ + 1 + i : i);
    for (const auto& [e, c] : terms_) {
      Exponent f = e;
      ++f[slot];
      out.terms_.emplace(std::move(f), c);
    }
    return out;
  }

  /// d/dz_i, or d/dzbar_i when conjugate is set.
  [[nodiscard]] Polynomial derivative(int i, bool conjugate = false) const {
    Polynomial out(n_);
    const auto slot = static_cast<std::size_t>(conjugate ? n_ + 1 + i : i);
    for (const auto& [e, c] : terms_) {
      if (e[slot] == 0) continue;
      Exponent f = e;
      const int power = f[slot]--;
      out.add_term(f, c * Coeff(power));
    }
    return out;
  }

  /// Flat Laplacian sum_i d^2 / dz_i dzbar_i.
  [[nodiscard]] Polynomial flat_laplacian() const {
    Polynomial out(n_);
    const auto m = static_cast<std::size_t>(n_ + 1);
    for (const auto& [e, c] : terms_) {
      for (std::size_t i = 0; i < m; ++i) {
        if (e[i] == 0 || e[m + i] == 0) continue;
        Exponent f = e;
        const int w = f[i]-- * f[m + i]--;
        out.add_term(f, c * Coeff(w));
      }
    }
    return out;
  }

  /// Complex conjugate: swaps alpha and beta.
  [[nodiscard]] Polynomial conjugate() const {
    Polynomial out(n_);
    const auto m = static_cast<std::size_t>(n_ + 1);
    for (const auto& [e, c] : terms_) {
      Exponent f(e.size());
      for (std::size_t i = 0; i < m; ++i) {
        f[i] = e[m + i];
        f[m + i] = e[i];
      }
      if constexpr (std::is_same_v<Coeff, std::complex<double>>) {
        out.terms_.emplace(std::move(f), std::conj(c));
      } else {
        out.terms_.emplace(std::move(f), c);
      }
    }
    return out;
  }

  template <typename Point>
  [[nodiscard]] std::complex<double> evaluate(const Point& z) const {
    std::complex<double> sum = 0.0;
    const auto m = static_cast<std::size_t>(n_ + 1);
    for (const auto& [e, c] : terms_) {
      std::complex<double> term = 1.0;
      for (std::size_t i = 0; i < m; ++i) {
        const std::complex<double> zi = z[static_cast<Eigen::Index>(i)];
        for (int k = 0; k < e[i]; ++k) term *= zi;
        for (int k = 0; k < e[m + i]; ++k) term *= std::conj(zi);
      }
      if constexpr (std::is_same_v<Coeff, Rational>) {
        sum += c.to_double() * term;
      } else {
        sum += c * term;
      }
    }
    return sum;
  }

  template <typename Other, typename F>
  [[nodiscard]] Polynomial<Other> convert(F&& f) const {
    Polynomial<Other> out(n_);
    for (const auto& [e, c] : terms_) out.add_term(e, f(c));
    return out;
  }

private:
  int n_ = 0;
  Terms terms_;
};

using ExactPolynomial = Polynomial<Rational>;
using ComplexPolynomial = Polynomial<std::complex<double>>;

/// All exponent vectors z^alpha zbar^beta with |alpha| = j, |beta| = l.
std::vector<Exponent> bidegree_monomials(int n, int j, int l);

/// L^2(d xi) inner product <f, g> = int f conj(g) computed from closed-form moments.
std::complex<double> sphere_inner(const ComplexPolynomial& f, const ComplexPolynomial& g);

/// Reduces a polynomial modulo |z|^2 - 1 to a canonical form: each charge
/// sector is homogenized to its top degree by powers of sum z_i zbar_i. Two
/// polynomials agree on the sphere iff their canonical forms are equal.
ExactPolynomial sphere_canonical(const ExactPolynomial& p);

}  // namespace crlab
