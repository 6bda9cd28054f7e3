#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "doctest.h"

#include "crlab/geometry.hpp"
#include "crlab/quadrature.hpp"

using namespace crlab;

namespace {

// Real coordinates (x_0, y_0, x_1, y_1, ...) of a complex vector.
Eigen::VectorXd realify(const Eigen::VectorXcd& v) {
  Eigen::VectorXd r(2 * v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    r[2 * i] = v[i].real();
    r[2 * i + 1] = v[i].imag();
  }
  return r;
}

// theta_0 = sum (x dy - y dx) at p, and d theta_0 = 2 sum dx ^ dy.
double theta0(const Eigen::VectorXd& p, const Eigen::VectorXd& v) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < p.size(); i += 2) s += p[i] * v[i + 1] - p[i + 1] * v[i];
  return s;
}

double dtheta0(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < a.size(); i += 2) s += 2.0 * (a[i] * b[i + 1] - a[i + 1] * b[i]);
  return s;
}

// theta ^ (d theta)^n evaluated on 2n+1 vectors by the full permutation sum.
double contact_volume_form(const Eigen::VectorXd& p, const std::vector<Eigen::VectorXd>& vs) {
  const int m = static_cast<int>(vs.size());
  std::vector<int> perm(static_cast<std::size_t>(m));
  std::iota(perm.begin(), perm.end(), 0);
  double total = 0.0;
  do {
    int inversions = 0;
    for (int a = 0; a < m; ++a)
      for (int b = a + 1; b < m; ++b)
        if (perm[static_cast<std::size_t>(a)] > perm[static_cast<std::size_t>(b)]) ++inversions;
    double term = theta0(p, vs[static_cast<std::size_t>(perm[0])]);
    for (int i = 1; i < m; i += 2) {
      term *= dtheta0(vs[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])],
                      vs[static_cast<std::size_t>(perm[static_cast<std::size_t>(i + 1)])]);
    }
    total += (inversions % 2 == 0 ? 1.0 : -1.0) * term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  const int n = (m - 1) / 2;
  return total / std::pow(2.0, n);
}

}  // namespace

TEST_CASE("Dimension derived quantities") {
  Dimension d(1);
  CHECK(d.Q() == 4);
  CHECK(d.p(1) == doctest::Approx(4.0));
  CHECK(Dimension(2).p_exact(2) == Rational(6));
  CHECK_THROWS_AS(Dimension(1).check_order(2), OrderOutOfRange);
  CHECK_THROWS_AS(Dimension(0), InvalidArgument);
}

TEST_CASE("Cayley transform special values") {
  for (int n = 1; n <= 3; ++n) {
    HeisenbergPoint h{Eigen::VectorXcd::Zero(n), 0.0};
    const SpherePoint s = cayley(h);
    CHECK((s.coords() - SpherePoint::north_pole(n).coords()).norm() < 1e-15);
    HeisenbergPoint far{Eigen::VectorXcd::Zero(n), 1e9};
    CHECK((cayley(far).coords() - SpherePoint::south_pole(n).coords()).norm() < 1e-8);
    CHECK(cayley_conformal_factor(h) == doctest::Approx(2.0));
  }
  HeisenbergPoint h{Eigen::VectorXcd::Ones(1), 0.0};
  const SpherePoint s = cayley(h);
  CHECK(std::abs(s[0] - cplx(1.0, 0.0)) < 1e-15);
  CHECK(std::abs(s[1]) < 1e-15);
  CHECK(s.coords().norm() == doctest::Approx(1.0));
}

TEST_CASE("Cayley round trip and south pole") {
  std::mt19937_64 rng(7);
  for (int n = 1; n <= 3; ++n) {
    for (int trial = 0; trial < 100; ++trial) {
      const SpherePoint s = SpherePoint::random(n, rng);
      const SpherePoint back = cayley(cayley_inverse(s));
      CHECK((back.coords() - s.coords()).norm() < 1e-10);
    }
    CHECK_THROWS_AS(cayley_inverse(SpherePoint::south_pole(n)), SouthPoleError);
    const HeisenbergPoint origin = cayley_inverse(SpherePoint::north_pole(n));
    CHECK(origin.z.norm() == 0.0);
    CHECK(origin.t == 0.0);
  }
}

TEST_CASE("Cayley pulls theta_0 back to -lambda theta_c") {
  // theta_c = dt - 2 sum (x dy - y dx) = dt + i sum (zbar dz - z dzbar); compared
  // on finite-difference pushforwards.
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g;
  for (int n = 1; n <= 3; ++n) {
    HeisenbergPoint h{Eigen::VectorXcd(n), g(rng)};
    for (auto& z : h.z) z = cplx(0.5 * g(rng), 0.5 * g(rng));
    const Eigen::VectorXd base = realify(cayley(h).coords());
    const double lambda = cayley_conformal_factor(h);
    for (int dir = 0; dir <= 2 * n; ++dir) {
      const double eps = 1e-6;
      HeisenbergPoint hp = h;
      HeisenbergPoint hm = h;
      double thc = 0.0;
      if (dir == 2 * n) {
        hp.t += eps;
        hm.t -= eps;
        thc = -1.0;
      } else {
        const cplx step = dir % 2 == 0 ? cplx(eps, 0.0) : cplx(0.0, eps);
        hp.z[dir / 2] += step;
        hm.z[dir / 2] -= step;
        const cplx z = h.z[dir / 2];
        thc = dir % 2 == 0 ? -2.0 * z.imag() : 2.0 * z.real();
      }
      const Eigen::VectorXd v = (realify(cayley(hp).coords()) - realify(cayley(hm).coords())) / (2.0 * eps);
      CHECK(theta0(base, v) == doctest::Approx(lambda * thc).epsilon(1e-7));
    }
  }
}

TEST_CASE("Contact volume density oracle") {
  // theta_0 ^ (d theta_0)^n on an orthonormal tangent frame equals 2^n n!.
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  for (int n = 1; n <= 3; ++n) {
    const Eigen::VectorXd p = realify(SpherePoint::random(n, rng).coords());
    const int dim = 2 * n + 2;
    Eigen::MatrixXd m(dim, dim);
    m.col(0) = p;
    for (int c = 1; c < dim; ++c)
      for (int r = 0; r < dim; ++r) m(r, c) = g(rng);
    const Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
    const Eigen::MatrixXd q = qr.householderQ();
    std::vector<Eigen::VectorXd> frame;
    for (int c = 1; c < dim; ++c) frame.push_back(q.col(c));
    const double value = std::abs(contact_volume_form(p, frame));
    CHECK(value == doctest::Approx(contact_density(n)).epsilon(1e-12));
  }
}

TEST_CASE("Heisenberg volume of lambda^{n+1}") {
  // int lambda^{n+1} * (4^n n!) dz dt over H^n, radial in |z|, via r = tan a, t = tan b.
  std::vector<double> x;
  std::vector<double> w;
  gauss_legendre_unit(200, x, w);
  for (int n = 1; n <= 2; ++n) {
    const double sphere_area = 2.0 * std::pow(std::numbers::pi, n) / std::tgamma(n);  // |S^{2n-1}|
    double total = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double a = 0.5 * std::numbers::pi * x[i];
      const double r = std::tan(a);
      const double dr = 0.5 * std::numbers::pi / (std::cos(a) * std::cos(a));
      for (std::size_t j = 0; j < x.size(); ++j) {
        const double b = std::numbers::pi * (x[j] - 0.5);
        const double t = std::tan(b);
        const double dt = std::numbers::pi / (std::cos(b) * std::cos(b));
        HeisenbergPoint h{Eigen::VectorXcd::Zero(n), t};
        h.z[0] = r;
        const double lam = cayley_conformal_factor(h);
        total += w[i] * w[j] * dr * dt * sphere_area * std::pow(r, 2 * n - 1) * std::pow(lam, n + 1);
      }
    }
    total *= heisenberg_volume_density(n);
    CHECK(total == doctest::Approx(sphere_volume(n)).epsilon(1e-8));
  }
}

TEST_CASE("Dilations") {
  HeisenbergPoint h{Eigen::VectorXcd::Constant(2, cplx(1.0, -2.0)), 3.0};
  const HeisenbergPoint same = dilate(1.0, h);
  CHECK((same.z - h.z).norm() == 0.0);
  CHECK(same.t == h.t);
  const HeisenbergPoint d2 = dilate(2.0, h);
  CHECK((d2.z - h.z / 2.0).norm() < 1e-15);
  CHECK(d2.t == doctest::Approx(0.75));
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.1, 3.0);
  for (int i = 0; i < 20; ++i) {
    const double a = u(rng);
    const double b = u(rng);
    const HeisenbergPoint lhs = dilate(a, dilate(b, h));
    const HeisenbergPoint rhs = dilate(a * b, h);
    CHECK((lhs.z - rhs.z).norm() < 1e-14);
    CHECK(lhs.t == doctest::Approx(rhs.t).epsilon(1e-14));
  }
  CHECK_THROWS_AS(dilate(0.0, h), NonPositiveDelta);
  CHECK_THROWS_AS(dilate(-1.0, h), NonPositiveDelta);
}

TEST_CASE("Automorphisms") {
  std::mt19937_64 rng(13);
  for (int n = 1; n <= 3; ++n) {
    const SpherePoint s = SpherePoint::random(n, rng);
    CHECK((automorphism_apply(AutomorphismParam::identity(n), s).coords() - s.coords()).norm() < 1e-15);
    const Eigen::MatrixXcd u = random_unitary(n + 1, rng);
    CHECK((automorphism_apply(AutomorphismParam::from_unitary(u), s).coords() - u * s.coords()).norm() < 1e-14);
    for (int trial = 0; trial < 20; ++trial) {
      const Eigen::VectorXcd xi = random_ball_point(n, 0.95, rng);
      const SpherePoint y = SpherePoint::random(n, rng);
      const SpherePoint fwd = automorphism_apply(AutomorphismParam::from_center(xi), y);
      CHECK(std::abs(fwd.coords().norm() - 1.0) < 1e-12);
      const SpherePoint back = automorphism_apply(AutomorphismParam::from_center(-xi), fwd);
      CHECK((back.coords() - y.coords()).norm() < 1e-10);
      CHECK((ball_automorphism(xi, Eigen::VectorXcd::Zero(n + 1)) - xi).norm() < 1e-15);

      const AutomorphismParam a(xi, random_unitary(n + 1, rng));
      const AutomorphismParam b(random_ball_point(n, 0.9, rng), random_unitary(n + 1, rng));
      const SpherePoint ab = automorphism_apply(compose(a, b), y);
      const SpherePoint direct = automorphism_apply(a, automorphism_apply(b, y));
      CHECK((ab.coords() - direct.coords()).norm() < 1e-9);
      const SpherePoint inv = automorphism_apply(inverse(a), automorphism_apply(a, y));
      CHECK((inv.coords() - y.coords()).norm() < 1e-9);
      CHECK((automorphism_apply_inverse(a, automorphism_apply(a, y)).coords() - y.coords()).norm() < 1e-10);
    }
    CHECK(conformal_factor(AutomorphismParam::identity(n), s) == 1.0);
    CHECK(conformal_factor(AutomorphismParam::from_unitary(u), s) == 1.0);
  }
  CHECK_THROWS_AS(AutomorphismParam::from_center(Eigen::VectorXcd::Ones(2)), InvalidArgument);
  CHECK_THROWS_AS(AutomorphismParam::from_unitary(2.0 * Eigen::MatrixXcd::Identity(2, 2)), InvalidArgument);
}

TEST_CASE("Automorphism Jacobian matches finite-volume ratio") {
  // The push-forward density at Phi(y) is the inverse of the local volume
  // expansion of Phi at y; compare against the ratio of tiny cap volumes
  // measured through the contact form on pushed-forward frames.
  std::mt19937_64 rng(17);
  std::normal_distribution<double> g;
  for (int n = 1; n <= 2; ++n) {
    const AutomorphismParam a(random_ball_point(n, 0.8, rng), random_unitary(n + 1, rng));
    const SpherePoint y = SpherePoint::random(n, rng);
    const Eigen::VectorXd p = realify(y.coords());
    const int dim = 2 * n + 2;
    Eigen::MatrixXd m(dim, dim);
    m.col(0) = p;
    for (int c = 1; c < dim; ++c)
      for (int r = 0; r < dim; ++r) m(r, c) = g(rng);
    const Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
    const Eigen::MatrixXd q = qr.householderQ();
    std::vector<Eigen::VectorXd> frame;
    std::vector<Eigen::VectorXd> pushed;
    const double eps = 1e-6;
    for (int c = 1; c < dim; ++c) {
      frame.push_back(q.col(c));
      Eigen::VectorXcd dz(n + 1);
      for (int i = 0; i <= n; ++i) dz[i] = cplx(q(2 * i, c), q(2 * i + 1, c));
      const SpherePoint plus = SpherePoint::normalized(y.coords() + eps * dz);
      const SpherePoint minus = SpherePoint::normalized(y.coords() - eps * dz);
      pushed.push_back((realify(automorphism_apply(a, plus).coords()) -
                        realify(automorphism_apply(a, minus).coords())) / (2.0 * eps));
    }
    const SpherePoint image = automorphism_apply(a, y);
    const double expansion = contact_volume_form(realify(image.coords()), pushed) / contact_volume_form(p, frame);
    CHECK(std::abs(expansion) * conformal_factor(a, image) == doctest::Approx(1.0).epsilon(1e-7));
  }
}
