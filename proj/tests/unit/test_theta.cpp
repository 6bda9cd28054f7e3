#include <cmath>
#include <random>

#include "doctest.h"

#include "crlab/theta.hpp"

using namespace crlab;

TEST_CASE("Discrete measures and the objective") {
  const DiscreteMeasure s = simplex_configuration(1);
  CHECK(theta_objective(s, 1.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(theta_objective(s, 0.5) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-14));
  CHECK_THROWS_AS(DiscreteMeasure({SpherePoint::north_pole(1)}, {0.5}), InvalidArgument);
  CHECK_THROWS_AS(DiscreteMeasure({SpherePoint::north_pole(1)}, {-1.0}), InvalidArgument);

  // Two equal atoms.
  const DiscreteMeasure two({SpherePoint::north_pole(2), SpherePoint::south_pole(2)}, {0.5, 0.5});
  CHECK(theta_objective(two, 0.3) == doctest::Approx(std::pow(2.0, 0.7)).epsilon(1e-14));

  // Merging coincident atoms never increases the objective.
  const DiscreteMeasure dup({SpherePoint::north_pole(1), SpherePoint::north_pole(1), SpherePoint::south_pole(1)},
                            {0.2, 0.3, 0.5});
  const DiscreteMeasure merged = dup.merged(1e-12);
  CHECK(merged.size() == 2);
  for (double th : {0.25, 0.5, 0.75}) CHECK(theta_objective(merged, th) <= theta_objective(dup, th));
}

TEST_CASE("Moment system and residuals") {
  const MomentSystem s10(1, 1, 0);
  CHECK(s10.dimension() == 4);
  const MomentSystem s11(1, 1, 1);
  CHECK(s11.dimension() == 4 + 3);
  const MomentSystem s11n2(2, 1, 1);
  CHECK(s11n2.dimension() == 6 + 8);

  // Single atom: residuals are (scaled) coordinates.
  const SpherePoint x = SpherePoint::normalized(Eigen::Vector2cd(cplx(0.6, 0.2), cplx(0.1, -0.7)));
  const Eigen::VectorXd r = moment_residuals(DiscreteMeasure({x}, {1.0}), s10);
  CHECK(r.norm() > 0.5);

  // Dense symmetric quadrature-like measure: product grid over phases is balanced.
  std::vector<SpherePoint> atoms;
  std::vector<double> weights;
  const int m = 8;
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      const double t1 = 2.0 * M_PI * a / m;
      const double t2 = 2.0 * M_PI * b / m;
      atoms.push_back(SpherePoint::normalized(
          Eigen::Vector2cd(std::polar(std::sqrt(0.5), t1), std::polar(std::sqrt(0.5), t2))));
      weights.push_back(1.0 / (m * m));
    }
  }
  CHECK(moment_residuals(DiscreteMeasure(atoms, weights), s10).norm() < 1e-14);

  // Analytic gradients against central differences.
  const Eigen::MatrixXd g = s11.gradients(x.coords());
  const double h = 1e-6;
  for (int c = 0; c < 4; ++c) {
    Eigen::VectorXcd xp = x.coords();
    Eigen::VectorXcd xm = x.coords();
    const cplx d = (c % 2 == 0) ? cplx(h, 0.0) : cplx(0.0, h);
    xp[c / 2] += d;
    xm[c / 2] -= d;
    const Eigen::VectorXd fd = (s11.values(xp) - s11.values(xm)) / (2.0 * h);
    CHECK((fd - g.col(c)).norm() < 1e-7);
  }
}

TEST_CASE("Simplex configuration") {
  for (int n = 1; n <= 3; ++n) {
    const DiscreteMeasure s = simplex_configuration(n);
    CHECK(s.size() == static_cast<std::size_t>(n + 2));
    for (std::size_t i = 0; i < s.size(); ++i) {
      CHECK(s.atoms()[i].coords().imag().norm() == 0.0);
      for (std::size_t j = i + 1; j < s.size(); ++j) {
        const double ip = s.atoms()[i].coords().dot(s.atoms()[j].coords()).real();
        CHECK(ip == doctest::Approx(-1.0 / (n + 1)).epsilon(1e-14));
        const double dist = (s.atoms()[i].coords() - s.atoms()[j].coords()).norm();
        CHECK(std::abs(dist - std::sqrt(2.0 * (n + 2) / (n + 1))) < 1e-9);
      }
    }
    CHECK(moment_residuals(s, MomentSystem(n, 1, 1)).norm() < 1e-12);
    CHECK(v_vector_defect(s) < 1e-12);
    // Unitary invariance.
    std::mt19937_64 rng(static_cast<std::uint64_t>(n));
    const DiscreteMeasure r = s.rotated(random_unitary(n + 1, rng));
    CHECK(moment_residuals(r, MomentSystem(n, 1, 1)).norm() < 1e-12);
    CHECK(theta_objective(r, 0.4) == doctest::Approx(theta_objective(s, 0.4)));
  }
  CHECK(std::abs((simplex_configuration(1).atoms()[0].coords() - simplex_configuration(1).atoms()[1].coords()).norm() -
                 std::sqrt(3.0)) < 1e-12);
}

TEST_CASE("Simplex projection") {
  Eigen::VectorXd v(4);
  v << 0.5, 0.9, -0.3, 0.1;
  const Eigen::VectorXd p = project_simplex(v);
  CHECK(p.sum() == doctest::Approx(1.0));
  CHECK(p.minCoeff() >= 0.0);
  CHECK(p[2] == 0.0);
}

TEST_CASE("Theta minimization reproduces the exact values") {
  ThetaOptions opts;
  opts.seed = 7;
  const ThetaResult first = minimize_theta(1, 1, 0, 0.5, opts);
  CHECK(std::abs(first.value - std::sqrt(2.0)) < 1e-3);
  CHECK(first.residual_norm < 1e-9);

  const ThetaResult r = minimize_theta(1, 1, 1, 0.5, opts);
  CHECK(std::abs(r.value - std::sqrt(3.0)) < 1e-3);
  CHECK(r.value > std::sqrt(3.0) - 1e-6);
  for (double w : r.measure.weights()) CHECK(std::abs(w - 1.0 / 3.0) < 1e-3);
  CHECK(v_vector_defect(r.measure) < 1e-6);

  const ThetaResult again = minimize_theta(1, 1, 1, 0.5, opts);
  CHECK(again.to_json() == r.to_json());
  CHECK(r.to_json().find("\"w_prime\": 1") != std::string::npos);

  ThetaOptions tiny = opts;
  tiny.k_max = 2;
  tiny.restarts = 2;
  CHECK_THROWS_AS(minimize_theta(1, 1, 1, 0.5, tiny), Infeasible);
}
