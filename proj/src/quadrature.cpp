#include "crlab/quadrature.hpp"

#include <cmath>
#include <iomanip>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>

namespace crlab {

namespace {

template <typename T>
T pairwise_sum_impl(std::span<const T> v) {
  if (v.size() <= 16) {
    T s{};
    for (const auto& x : v) s += x;
    return s;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_sum_impl(v.first(half)) + pairwise_sum_impl(v.subspan(half));
}

double factorial(int m) {
  double f = 1.0;
  for (int i = 2; i <= m; ++i) f *= i;
  return f;
}

}  // namespace

double sphere_volume(int n) {
  return std::pow(2.0 * std::numbers::pi, n + 1);
}

double contact_density(int n) { return std::pow(2.0, n) * factorial(n); }

double sphere_moment(std::span<const int> alpha, std::span<const int> beta) {
  if (alpha.size() != beta.size()) throw InvalidArgument("sphere_moment: size mismatch");
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (alpha[i] != beta[i]) return 0.0;
  }
  const int n = static_cast<int>(alpha.size()) - 1;
  // n! alpha! / (n + |alpha|)! accumulated as a product of ratios.
  double ratio = 1.0;
  int denom = n;
  for (int a : alpha) {
    for (int i = 1; i <= a; ++i) {
      ++denom;
      ratio *= static_cast<double>(i) / denom;
    }
  }
  return sphere_volume(n) * ratio;
}

double pairwise_sum(std::span<const double> values) { return pairwise_sum_impl(values); }
cplx pairwise_sum(std::span<const cplx> values) { return pairwise_sum_impl(values); }

QuadratureRule::QuadratureRule(int n, int degree, Eigen::MatrixXcd nodes, Eigen::VectorXd weights,
                               std::string id)
    : n_(n), degree_(degree), nodes_(std::move(nodes)), weights_(std::move(weights)), id_(std::move(id)) {
  if (nodes_.rows() != n + 1 || nodes_.cols() != weights_.size()) {
    throw InvalidArgument("QuadratureRule: inconsistent node/weight shapes");
  }
  if ((weights_.array() <= 0.0).any()) throw InvalidArgument("QuadratureRule: weights must be positive");
}

SpherePoint QuadratureRule::node(std::size_t i) const {
  return SpherePoint::normalized(nodes_.col(static_cast<Eigen::Index>(i)));
}

double QuadratureRule::integrate(std::span<const double> values) const {
  if (values.size() != size()) throw InvalidArgument("integrate: sample count mismatch");
  std::vector<double> prod(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) prod[i] = weights_[static_cast<Eigen::Index>(i)] * values[i];
  return pairwise_sum(prod);
}

cplx QuadratureRule::integrate(std::span<const cplx> values) const {
  if (values.size() != size()) throw InvalidArgument("integrate: sample count mismatch");
  std::vector<cplx> prod(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) prod[i] = weights_[static_cast<Eigen::Index>(i)] * values[i];
  return pairwise_sum(prod);
}

double QuadratureRule::integrate(const Eigen::VectorXd& values) const {
  return integrate(std::span<const double>(values.data(), static_cast<std::size_t>(values.size())));
}

cplx QuadratureRule::integrate(const Eigen::VectorXcd& values) const {
  return integrate(std::span<const cplx>(values.data(), static_cast<std::size_t>(values.size())));
}

Eigen::VectorXcd QuadratureRule::sample(const SphereFunction& f) const {
  Eigen::VectorXcd out(static_cast<Eigen::Index>(size()));
  for (std::size_t i = 0; i < size(); ++i) out[static_cast<Eigen::Index>(i)] = f(node(i));
  return out;
}

void QuadratureRule::write_text(std::ostream& os) const {
  os << "# crlab-quadrature n=" << n_ << " degree=" << degree_ << " nodes=" << size() << " id=" << id_
     << '\n';
  os << std::setprecision(17);
  for (Eigen::Index j = 0; j < weights_.size(); ++j) {
    for (int i = 0; i <= n_; ++i) os << nodes_(i, j).real() << ' ' << nodes_(i, j).imag() << ' ';
    os << weights_[j] << '\n';
  }
}

QuadratureRule QuadratureRule::read_text(std::istream& is) {
  std::string header;
  std::getline(is, header);
  int n = -1;
  int degree = -1;
  std::size_t count = 0;
  std::string id;
  {
    std::istringstream hs(header);
    std::string tok;
    hs >> tok;
    if (tok != "#") throw InvalidArgument("read_text: missing quadrature header");
    hs >> tok;
    while (hs >> tok) {
      const auto eq = tok.find('=');
      if (eq == std::string::npos) continue;
      const std::string key = tok.substr(0, eq);
      const std::string val = tok.substr(eq + 1);
      if (key == "n") n = std::stoi(val);
      else if (key == "degree") degree = std::stoi(val);
      else if (key == "nodes") count = std::stoul(val);
      else if (key == "id") id = val;
    }
  }
  if (n < 1 || degree < 0) throw InvalidArgument("read_text: malformed quadrature header");
  Eigen::MatrixXcd nodes(n + 1, static_cast<Eigen::Index>(count));
  Eigen::VectorXd weights(static_cast<Eigen::Index>(count));
  for (std::size_t j = 0; j < count; ++j) {
    for (int i = 0; i <= n; ++i) {
      double re = 0.0;
      double im = 0.0;
      if (!(is >> re >> im)) throw InvalidArgument("read_text: truncated node list");
      nodes(i, static_cast<Eigen::Index>(j)) = cplx(re, im);
    }
    if (!(is >> weights[static_cast<Eigen::Index>(j)])) throw InvalidArgument("read_text: truncated weights");
  }
  return {n, degree, std::move(nodes), std::move(weights), id};
}

void gauss_legendre_unit(int points, std::vector<double>& x, std::vector<double>& w) {
  x.assign(static_cast<std::size_t>(points), 0.0);
  w.assign(static_cast<std::size_t>(points), 0.0);
  for (int i = 0; i < points; ++i) {
    // Newton iteration on P_points from the Chebyshev guess.
    double z = std::cos(std::numbers::pi * (i + 0.75) / (points + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = 0.0;
      for (int j = 1; j <= points; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p2) / j;
      }
      dp = points * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    x[static_cast<std::size_t>(i)] = 0.5 * (1.0 - z);
    w[static_cast<std::size_t>(i)] = 1.0 / ((1.0 - z * z) * dp * dp);
  }
}

int exact_degree(int n, QuadratureResolution res) {
  if (res.gl_points < 1 || res.phase_points < 1) return -1;
  const int by_phase = res.phase_points - 1;
  // Simplex monomials of degree d pick up a Jacobian factor of degree <= n-1.
  const int half = 2 * res.gl_points - 1 - (n - 1);
  if (half < 0) return -1;
  const int by_simplex = 2 * half + 1;
  return std::min(by_phase, by_simplex);
}

QuadratureRule build_quadrature(int n, int degree) {
  if (degree < 0) throw ResolutionTooLow("build_quadrature: degree must be >= 0");
  QuadratureResolution res;
  res.phase_points = degree + 1;
  res.gl_points = 1;
  while (exact_degree(n, res) < degree) ++res.gl_points;
  return build_quadrature(n, res, degree);
}

QuadratureRule build_quadrature(int n, QuadratureResolution res, int required_degree) {
  Dimension dim(n);
  const int achieved = exact_degree(n, res);
  if (achieved < required_degree) {
    throw ResolutionTooLow("build_quadrature: resolution integrates degree " + std::to_string(achieved) +
                           " < required " + std::to_string(required_degree));
  }
  std::vector<double> gx;
  std::vector<double> gw;
  gauss_legendre_unit(res.gl_points, gx, gw);

  const int q = res.gl_points;
  const int m = res.phase_points;
  std::size_t simplex_count = 1;
  for (int i = 0; i < n; ++i) simplex_count *= static_cast<std::size_t>(q);
  std::size_t phase_count = 1;
  for (int i = 0; i <= n; ++i) phase_count *= static_cast<std::size_t>(m);
  const std::size_t total = simplex_count * phase_count;

  Eigen::MatrixXcd nodes(n + 1, static_cast<Eigen::Index>(total));
  Eigen::VectorXd weights(static_cast<Eigen::Index>(total));

  const double base = sphere_volume(n) * factorial(n) / std::pow(static_cast<double>(m), n + 1);
  std::vector<int> sidx(static_cast<std::size_t>(n), 0);
  std::vector<double> t(static_cast<std::size_t>(n + 1));
  std::vector<int> pidx(static_cast<std::size_t>(n + 1), 0);
  std::size_t col = 0;
  for (std::size_t s = 0; s < simplex_count; ++s) {
    // Collapsed coordinates: t_1 = u_1, t_2 = (1-u_1) u_2, ..., t_0 = prod (1-u_i).
    double rest = 1.0;
    double wsimplex = 1.0;
    for (int i = 0; i < n; ++i) {
      const double u = gx[static_cast<std::size_t>(sidx[static_cast<std::size_t>(i)])];
      wsimplex *= gw[static_cast<std::size_t>(sidx[static_cast<std::size_t>(i)])] * std::pow(1.0 - u, n - 1 - i);
      t[static_cast<std::size_t>(i + 1)] = rest * u;
      rest *= 1.0 - u;
    }
    t[0] = rest;
    std::fill(pidx.begin(), pidx.end(), 0);
    for (std::size_t ph = 0; ph < phase_count; ++ph) {
      for (int i = 0; i <= n; ++i) {
        const double angle = 2.0 * std::numbers::pi * pidx[static_cast<std::size_t>(i)] / m;
        nodes(i, static_cast<Eigen::Index>(col)) = std::polar(std::sqrt(t[static_cast<std::size_t>(i)]), angle);
      }
      weights[static_cast<Eigen::Index>(col)] = base * wsimplex;
      ++col;
      for (int i = 0; i <= n; ++i) {
        if (++pidx[static_cast<std::size_t>(i)] < m) break;
        pidx[static_cast<std::size_t>(i)] = 0;
      }
    }
    for (int i = 0; i < n; ++i) {
      if (++sidx[static_cast<std::size_t>(i)] < q) break;
      sidx[static_cast<std::size_t>(i)] = 0;
    }
  }
  std::ostringstream id;
  id << "hopf-n" << n << "-gl" << q << "-ph" << m;
  return {n, achieved, std::move(nodes), std::move(weights), id.str()};
}

QuadratureRule transport(const QuadratureRule& rule, const AutomorphismParam& a) {
  Eigen::MatrixXcd nodes(rule.nodes().rows(), rule.nodes().cols());
  Eigen::VectorXd weights(rule.weights().size());
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const auto col = static_cast<Eigen::Index>(i);
    const SpherePoint image = automorphism_apply(a, rule.node(i));
    nodes.col(col) = image.coords();
    // J_Phi(y) = 1 / (push-forward density at Phi(y)).
    weights[col] = rule.weights()[col] / conformal_factor(a, image);
  }
  return {rule.n(), 0, std::move(nodes), std::move(weights), rule.id() + "-transported"};
}

}  // namespace crlab
