#include "crlab/ambient.hpp"

#include <ostream>

namespace crlab {

bool operator<(const ConeKey& a, const ConeKey& b) {
  if (a.s != b.s) return a.s < b.s;
  if (a.sp != b.sp) return a.sp < b.sp;
  if (a.alpha != b.alpha) return a.alpha < b.alpha;
  return a.beta < b.beta;
}

void ConePolynomial::add_term(const ConeKey& key, const Rational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(key, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

ConePolynomial& ConePolynomial::operator+=(const ConePolynomial& o) {
  for (const auto& [k, c] : o.terms_) add_term(k, c);
  return *this;
}

ConePolynomial& ConePolynomial::operator-=(const ConePolynomial& o) {
  for (const auto& [k, c] : o.terms_) add_term(k, -c);
  return *this;
}

ConePolynomial& ConePolynomial::operator*=(const Rational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [k, v] : terms_) v *= c;
  return *this;
}

ConePolynomial operator*(const ConePolynomial& a, const ConePolynomial& b) {
  ConePolynomial out(a.n());
  for (const auto& [ka, ca] : a.terms()) {
    for (const auto& [kb, cb] : b.terms()) {
      ConeKey k{ka.s + kb.s, ka.sp + kb.sp, ka.alpha, ka.beta};
      for (std::size_t i = 0; i < k.alpha.size(); ++i) {
        k.alpha[i] += kb.alpha[i];
        k.beta[i] += kb.beta[i];
      }
      out.add_term(k, ca * cb);
    }
  }
  return out;
}

ConePolynomial ConePolynomial::coordinate(int n, int i, bool conjugate) {
  if (i < 0 || i > n + 1) throw InvalidArgument("ConePolynomial::coordinate: index out of range");
  const auto m = static_cast<std::size_t>(n + 1);
  ConeKey k{Rational(0), Rational(0), std::vector<int>(m, 0), std::vector<int>(m, 0)};
  if (i == 0) {
    (conjugate ? k.sp : k.s) = Rational(1);
  } else {
    (conjugate ? k.beta : k.alpha)[static_cast<std::size_t>(i - 1)] = 1;
  }
  ConePolynomial p(n);
  p.add_term(k, Rational(1));
  return p;
}

ConePolynomial ConePolynomial::zeta0_power(int n, const Rational& s, const Rational& sp) {
  const auto m = static_cast<std::size_t>(n + 1);
  ConePolynomial p(n);
  p.add_term({s, sp, std::vector<int>(m, 0), std::vector<int>(m, 0)}, Rational(1));
  return p;
}

ConePolynomial ConePolynomial::rho(int n) {
  ConePolynomial r = coordinate(n, 0) * coordinate(n, 0, true);
  for (int j = 1; j <= n + 1; ++j) r -= coordinate(n, j) * coordinate(n, j, true);
  return r;
}

ConePolynomial ConePolynomial::derivative(int i, bool conjugate) const {
  ConePolynomial out(n_);
  for (const auto& [k, c] : terms_) {
    ConeKey d = k;
    Rational factor;
    if (i == 0) {
      Rational& e = conjugate ? d.sp : d.s;
      factor = e;
      e -= Rational(1);
    } else {
      int& e = (conjugate ? d.beta : d.alpha)[static_cast<std::size_t>(i - 1)];
      factor = Rational(e);
      e -= 1;
    }
    if (factor.is_zero()) continue;
    out.add_term(d, c * factor);
  }
  return out;
}

ConePolynomial ConePolynomial::euler(bool conjugate) const {
  ConePolynomial out(n_);
  for (const auto& [k, c] : terms_) {
    Rational deg = conjugate ? k.sp : k.s;
    for (int e : conjugate ? k.beta : k.alpha) deg += Rational(e);
    out.add_term(k, c * deg);
  }
  return out;
}

void ConePolynomial::check_bidegree(const Rational& w, const Rational& wp) const {
  for (const auto& [k, c] : terms_) {
    Rational a = k.s;
    Rational b = k.sp;
    for (int e : k.alpha) a += Rational(e);
    for (int e : k.beta) b += Rational(e);
    if (a != w || b != wp) {
      throw HomogeneityViolation("cone term of bidegree (" + a.str() + ", " + b.str() + ") in a (" + w.str() +
                                 ", " + wp.str() + ") function");
    }
  }
}

ExactPolynomial ConePolynomial::restrict_to_sphere() const {
  check_bidegree(Rational(0), Rational(0));
  ExactPolynomial out(n_);
  for (const auto& [k, c] : terms_) {
    Exponent e(k.alpha);
    e.insert(e.end(), k.beta.begin(), k.beta.end());
    out.add_term(e, c);
  }
  return out;
}

void ConePolynomial::dump(std::ostream& os) const {
  for (const auto& [k, c] : terms_) {
    os << k.s << ' ' << k.sp;
    for (int e : k.alpha) os << ' ' << e;
    for (int e : k.beta) os << ' ' << e;
    os << ' ' << c.num() << '/' << c.den() << '\n';
  }
}

ConePolynomial lift(const ExactPolynomial& p, const Rational& w, const Rational& wp) {
  const int n = p.n();
  const auto m = static_cast<std::size_t>(n + 1);
  ConePolynomial out(n);
  for (const auto& [e, c] : p.terms()) {
    ConeKey k{w - Rational(holo_degree(e)), wp - Rational(antiholo_degree(e)),
              std::vector<int>(e.begin(), e.begin() + static_cast<long>(m)),
              std::vector<int>(e.begin() + static_cast<long>(m), e.end())};
    out.add_term(k, c);
  }
  return out;
}

ConePolynomial ambient_laplacian(const ConePolynomial& f, const Rational& c) {
  ConePolynomial out = f.derivative(0, true).derivative(0) * Rational(-1);
  for (int j = 1; j <= f.n() + 1; ++j) out += f.derivative(j, true).derivative(j);
  return out * c;
}

ExactPolynomial gjms_ambient(const OperatorSpec& spec, const ConePolynomial& f, const Rational& c) {
  f.check_bidegree(spec.w, spec.wp);
  const int k = spec.k();
  ConePolynomial g = f;
  for (int i = 0; i < k; ++i) g = ambient_laplacian(g, c) * Rational(1, 2);
  g = g * ConePolynomial::zeta0_power(f.n(), Rational(k) - spec.w, Rational(k) - spec.wp);
  return g.restrict_to_sphere();
}

ExactPolynomial gjms_ambient(const OperatorSpec& spec, const ExactPolynomial& p, const Rational& c) {
  if (p.n() != spec.n) throw InvalidArgument("gjms_ambient: dimension mismatch");
  return gjms_ambient(spec, lift(p, spec.w, spec.wp), c);
}

Rational calibrate_laplacian_constant() {
  const OperatorSpec spec = OperatorSpec::sharp(1, 1);
  ExactPolynomial one(1);
  one.add_term(Exponent(4, 0), Rational(1));
  const Rational target = gjms_multiplier(spec, 0, 0);
  std::vector<Rational> hits;
  for (const Rational c : {Rational(1), Rational(2), Rational(-1), Rational(-2)}) {
    const ExactPolynomial out = gjms_ambient(spec, one, c);
    if ((out - one * target).empty()) hits.push_back(c);
  }
  if (hits.size() != 1) throw Error("calibrate_laplacian_constant: no unique candidate");
  return hits.front();
}

ConePolynomial cone_commutator_residual(int k, int j, const ConePolynomial& f) {
  return cone_commutator_residual(k, j, f, Rational(2 * k));
}

ConePolynomial cone_commutator_residual(int k, int j, const ConePolynomial& f, const Rational& factor) {
  const int n = f.n();
  if (k < 1) throw InvalidArgument("cone_commutator_residual: k must be >= 1");
  if (j < 1 || j > n + 1) throw InvalidArgument("cone_commutator_residual: j must be in 1..n+1");
  auto power = [](ConePolynomial g, int times) {
    for (int i = 0; i < times; ++i) g = ambient_laplacian(g);
    return g;
  };
  const ConePolynomial z0 = ConePolynomial::coordinate(n, 0);
  const ConePolynomial zj = ConePolynomial::coordinate(n, j);
  ConePolynomial residual = z0 * power(zj * f, k) - zj * power(z0 * f, k);
  const ConePolynomial g = power(f, k - 1);
  const ConePolynomial xj = z0 * g.derivative(j, true) + zj * g.derivative(0, true);
  residual += xj * factor;
  return residual;
}

bool ambient_matches_spectrum(const OperatorSpec& spec, const ExactPolynomial& p, int j, int l) {
  const ExactPolynomial lhs = gjms_ambient(spec, p);
  const ExactPolynomial rhs = p * gjms_multiplier(spec, j, l);
  return sphere_canonical(lhs - rhs).empty();
}

ConePolynomial random_cone_polynomial(int n, const Rational& w, const Rational& wp, std::mt19937_64& rng,
                                      int terms) {
  std::uniform_int_distribution<int> deg(0, 2);
  std::uniform_int_distribution<int> coef(-5, 5);
  const auto m = static_cast<std::size_t>(n + 1);
  ConePolynomial f(n);
  for (int t = 0; t < terms; ++t) {
    ConeKey key{Rational(0), Rational(0), std::vector<int>(m), std::vector<int>(m)};
    int a = 0;
    int b = 0;
    for (std::size_t i = 0; i < m; ++i) {
      key.alpha[i] = deg(rng);
      key.beta[i] = deg(rng);
      a += key.alpha[i];
      b += key.beta[i];
    }
    key.s = w - Rational(a);
    key.sp = wp - Rational(b);
    f.add_term(key, Rational(coef(rng), 1 + (t % 3)));
  }
  return f;
}

}  // namespace crlab
