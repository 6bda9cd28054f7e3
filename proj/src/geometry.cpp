#include "crlab/geometry.hpp"

#include <cmath>

namespace crlab {

namespace {

constexpr double kSphereTol = 1e-12;
constexpr double kUnitaryTol = 1e-12;
constexpr double kSouthPoleTol = 1e-14;

Eigen::MatrixXcd nearest_unitary(const Eigen::MatrixXcd& m) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

// Brings an automorphism given as a map of the closed ball (and its inverse)
// into U * phi_c form: c = -Psi^{-1}(0), U = Psi o phi_{-c}.
template <typename Map, typename InvMap>
AutomorphismParam to_standard_form(int n, Map&& map, InvMap&& inverse_map) {
  const Eigen::VectorXcd c = -inverse_map(Eigen::VectorXcd::Zero(n + 1));
  Eigen::MatrixXcd u(n + 1, n + 1);
  for (int m = 0; m <= n; ++m) {
    Eigen::VectorXcd e = Eigen::VectorXcd::Zero(n + 1);
    e[m] = 1.0;
    u.col(m) = map(ball_automorphism(-c, e));
  }
  return {c, nearest_unitary(u)};
}

}  // namespace

Dimension::Dimension(int n) : n_(n) {
  if (n < 1) throw InvalidArgument("Dimension: n must be >= 1, got " + std::to_string(n));
}

Rational Dimension::p_exact(int k) const {
  check_order(k);
  return Rational(2 * Q(), Q() - 2 * k);
}

void Dimension::check_order(int k) const {
  if (k < 1 || k >= n_ + 1) {
    throw OrderOutOfRange("order k = " + std::to_string(k) + " outside [1, n] for n = " +
                          std::to_string(n_));
  }
}

SpherePoint::SpherePoint(Eigen::VectorXcd w) : w_(std::move(w)) {
  if (w_.size() < 2) throw InvalidArgument("SpherePoint: need at least two coordinates");
  if (std::abs(w_.squaredNorm() - 1.0) > kSphereTol) {
    throw InvalidArgument("SpherePoint: coordinates are not on the unit sphere");
  }
}

SpherePoint SpherePoint::normalized(const Eigen::VectorXcd& v) {
  const double r = v.norm();
  if (r == 0.0) throw InvalidArgument("SpherePoint::normalized: zero vector");
  return {v / r, Unchecked{}};
}

SpherePoint SpherePoint::north_pole(int n) {
  Eigen::VectorXcd w = Eigen::VectorXcd::Zero(n + 1);
  w[n] = 1.0;
  return SpherePoint(w);
}

SpherePoint SpherePoint::south_pole(int n) {
  Eigen::VectorXcd w = Eigen::VectorXcd::Zero(n + 1);
  w[n] = -1.0;
  return SpherePoint(w);
}

SpherePoint SpherePoint::random(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::VectorXcd v(n + 1);
  for (auto& x : v) x = cplx(g(rng), g(rng));
  return normalized(v);
}

AutomorphismParam::AutomorphismParam(Eigen::VectorXcd center, Eigen::MatrixXcd unitary)
    : xi_(std::move(center)), u_(std::move(unitary)) {
  const auto dim = xi_.size();
  if (u_.rows() != dim || u_.cols() != dim) {
    throw InvalidArgument("AutomorphismParam: unitary has wrong shape");
  }
  if (xi_.norm() >= 1.0) throw InvalidArgument("AutomorphismParam: |xi| must be < 1");
  const Eigen::MatrixXcd defect = u_.adjoint() * u_ - Eigen::MatrixXcd::Identity(dim, dim);
  if (defect.cwiseAbs().maxCoeff() > kUnitaryTol) {
    throw InvalidArgument("AutomorphismParam: matrix is not unitary");
  }
}

AutomorphismParam AutomorphismParam::identity(int n) {
  return {Eigen::VectorXcd::Zero(n + 1), Eigen::MatrixXcd::Identity(n + 1, n + 1)};
}

AutomorphismParam AutomorphismParam::from_center(Eigen::VectorXcd center) {
  const auto dim = center.size();
  return {std::move(center), Eigen::MatrixXcd::Identity(dim, dim)};
}

AutomorphismParam AutomorphismParam::from_unitary(Eigen::MatrixXcd unitary) {
  const auto dim = unitary.rows();
  return {Eigen::VectorXcd::Zero(dim), std::move(unitary)};
}

SpherePoint cayley(const HeisenbergPoint& h) {
  const int n = h.n();
  const cplx a(1.0 + h.z.squaredNorm(), h.t);
  Eigen::VectorXcd w(n + 1);
  w.head(n) = 2.0 * h.z / a;
  w[n] = (2.0 - a) / a;
  return SpherePoint::normalized(w);
}

HeisenbergPoint cayley_inverse(const SpherePoint& s) {
  const int n = s.n();
  const cplx last = s[n];
  if (std::abs(last + 1.0) <= kSouthPoleTol) {
    throw SouthPoleError("cayley_inverse: the south pole has no Heisenberg preimage");
  }
  const cplx a = 2.0 / (1.0 + last);
  HeisenbergPoint h;
  h.z = s.coords().head(n) * (a / 2.0);
  h.t = a.imag();
  return h;
}

double cayley_conformal_factor(const HeisenbergPoint& h) {
  const double r2 = h.z.squaredNorm();
  return 2.0 / ((1.0 + r2) * (1.0 + r2) + h.t * h.t);
}

HeisenbergPoint dilate(double delta, const HeisenbergPoint& h) {
  if (!(delta > 0.0)) throw NonPositiveDelta("dilate: delta must be positive");
  return {h.z / delta, h.t / (delta * delta)};
}

double heisenberg_volume_density(int n) {
  double v = 1.0;
  for (int i = 1; i <= n; ++i) v *= 4.0 * i;
  return v;
}

Eigen::VectorXcd ball_automorphism(const Eigen::VectorXcd& xi, const Eigen::VectorXcd& z) {
  const double r2 = xi.squaredNorm();
  if (r2 == 0.0) return z;
  const cplx inner = xi.dot(z);  // <z, xi> = sum z_i conj(xi_i)
  const Eigen::VectorXcd pz = (inner / r2) * xi;
  const Eigen::VectorXcd qz = z - pz;
  const double s = std::sqrt(1.0 - r2);
  return (xi + pz + s * qz) / (1.0 + inner);
}

SpherePoint automorphism_apply(const AutomorphismParam& a, const SpherePoint& s) {
  return SpherePoint::normalized(a.unitary() * ball_automorphism(a.center(), s.coords()));
}

SpherePoint automorphism_apply_inverse(const AutomorphismParam& a, const SpherePoint& s) {
  return SpherePoint::normalized(
      ball_automorphism(-a.center(), a.unitary().adjoint() * s.coords()));
}

AutomorphismParam compose(const AutomorphismParam& outer, const AutomorphismParam& inner) {
  auto fwd = [](const AutomorphismParam& a, const Eigen::VectorXcd& z) {
    return Eigen::VectorXcd(a.unitary() * ball_automorphism(a.center(), z));
  };
  auto bwd = [](const AutomorphismParam& a, const Eigen::VectorXcd& z) {
    return ball_automorphism(-a.center(), a.unitary().adjoint() * z);
  };
  return to_standard_form(
      outer.n(), [&](const Eigen::VectorXcd& z) { return fwd(outer, fwd(inner, z)); },
      [&](const Eigen::VectorXcd& z) { return bwd(inner, bwd(outer, z)); });
}

AutomorphismParam inverse(const AutomorphismParam& a) {
  return to_standard_form(
      a.n(), [&](const Eigen::VectorXcd& z) { return ball_automorphism(-a.center(), a.unitary().adjoint() * z); },
      [&](const Eigen::VectorXcd& z) { return Eigen::VectorXcd(a.unitary() * ball_automorphism(a.center(), z)); });
}

double conformal_factor(const AutomorphismParam& a, const SpherePoint& s) {
  const double r2 = a.center().squaredNorm();
  if (r2 == 0.0) return 1.0;
  const int n = a.n();
  const Eigen::VectorXcd y = a.unitary().adjoint() * s.coords();
  const double denom = std::abs(1.0 - a.center().dot(y));
  return std::pow((1.0 - r2) / (denom * denom), n + 1);
}

SphereFunction act_on_function(const AutomorphismParam& a, SphereFunction f, double p) {
  if (!(p > 0.0)) throw InvalidArgument("act_on_function: p must be positive");
  return [a, f = std::move(f), p](const SpherePoint& s) {
    const double scale = std::pow(conformal_factor(a, s), 1.0 / p);
    return scale * f(automorphism_apply_inverse(a, s));
  };
}

Eigen::MatrixXcd random_unitary(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::MatrixXcd m(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) m(i, j) = cplx(g(rng), g(rng));
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(m);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < dim; ++i) {
    const cplx d = r(i, i);
    q.col(i) *= d / std::abs(d);
  }
  return nearest_unitary(q);
}

Eigen::VectorXcd random_ball_point(int n, double r_max, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const SpherePoint dir = SpherePoint::random(n, rng);
  const double r = r_max * std::pow(u(rng), 1.0 / (2.0 * n + 2.0));
  return r * dir.coords();
}

}  // namespace crlab
