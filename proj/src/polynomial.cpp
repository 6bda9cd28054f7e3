#include "crlab/polynomial.hpp"

#include "crlab/quadrature.hpp"

namespace crlab {

namespace {

void compositions(int total, int parts, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (parts == 1) {
    cur.push_back(total);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int first = total; first >= 0; --first) {
    cur.push_back(first);
    compositions(total - first, parts - 1, cur, out);
    cur.pop_back();
  }
}

std::vector<std::vector<int>> all_compositions(int total, int parts) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  compositions(total, parts, cur, out);
  return out;
}

}  // namespace

std::vector<Exponent> bidegree_monomials(int n, int j, int l) {
  const auto alphas = all_compositions(j, n + 1);
  const auto betas = all_compositions(l, n + 1);
  std::vector<Exponent> out;
  out.reserve(alphas.size() * betas.size());
  for (const auto& a : alphas) {
    for (const auto& b : betas) {
      Exponent e(a);
      e.insert(e.end(), b.begin(), b.end());
      out.push_back(std::move(e));
    }
  }
  return out;
}

std::complex<double> sphere_inner(const ComplexPolynomial& f, const ComplexPolynomial& g) {
  // int z^a zbar^b conj(z^c zbar^d) = int z^{a+d} zbar^{b+c}; nonzero iff charges agree.
  const auto m = static_cast<std::size_t>(f.n() + 1);
  std::map<std::vector<int>, std::vector<const std::pair<const Exponent, std::complex<double>>*>> by_charge;
  for (const auto& term : g.terms()) by_charge[charge(term.first)].push_back(&term);
  std::complex<double> sum = 0.0;
  std::vector<int> alpha(m);
  std::vector<int> beta(m);
  for (const auto& [ef, cf] : f.terms()) {
    const auto it = by_charge.find(charge(ef));
    if (it == by_charge.end()) continue;
    for (const auto* term : it->second) {
      const Exponent& eg = term->first;
      for (std::size_t i = 0; i < m; ++i) {
        alpha[i] = ef[i] + eg[m + i];
        beta[i] = ef[m + i] + eg[i];
      }
      sum += cf * std::conj(term->second) * sphere_moment(alpha, beta);
    }
  }
  return sum;
}

ExactPolynomial sphere_canonical(const ExactPolynomial& p) {
  const int n = p.n();
  std::map<std::vector<int>, int> top;
  for (const auto& [e, c] : p.terms()) {
    const int d = holo_degree(e) + antiholo_degree(e);
    auto [it, inserted] = top.try_emplace(charge(e), d);
    if (!inserted) it->second = std::max(it->second, d);
  }
  ExactPolynomial norm2(n);
  for (int i = 0; i <= n; ++i) {
    norm2 += ExactPolynomial::coordinate(n, i) * ExactPolynomial::coordinate(n, i, true);
  }
  ExactPolynomial out(n);
  for (const auto& [e, c] : p.terms()) {
    const int d = holo_degree(e) + antiholo_degree(e);
    const int steps = (top[charge(e)] - d) / 2;
    ExactPolynomial term = ExactPolynomial::monomial(n, e, c);
    for (int s = 0; s < steps; ++s) term = term * norm2;
    out += term;
  }
  return out;
}

}  // namespace crlab
