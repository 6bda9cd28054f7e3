#pragma once

// Discrete moment-constrained problem: minimize sum nu_i^theta over atomic
// probability measures on S^{2n+1} that annihilate every mean-zero polynomial
// of bidegree at most (w, w').

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "crlab/geometry.hpp"
#include "crlab/polynomial.hpp"

namespace crlab {

class DiscreteMeasure {
public:
  /// Throws InvalidArgument unless weights are positive and sum to 1 within 1e-12.
  DiscreteMeasure(std::vector<SpherePoint> atoms, std::vector<double> weights);

  [[nodiscard]] std::size_t size() const { return atoms_.size(); }
  [[nodiscard]] int n() const { return atoms_.front().n(); }
  [[nodiscard]] const std::vector<SpherePoint>& atoms() const { return atoms_; }
  [[nodiscard]] const std::vector<double>& weights() const { return weights_; }

  /// Atoms closer than tol are merged and their weights added.
  [[nodiscard]] DiscreteMeasure merged(double tol) const;
  [[nodiscard]] DiscreteMeasure rotated(const Eigen::MatrixXcd& unitary) const;

private:
  std::vector<SpherePoint> atoms_;
  std::vector<double> weights_;
};

/// Real constraint functions spanning the mean-zero part of the polynomials of
/// bidegree <= (w, w') on the sphere, i.e. the sum of H_{j,l}, j <= w, l <= w',
/// (j, l) != (0, 0). Each complex harmonic contributes its real and imaginary
/// parts, scaled to unit L^2 norm for the normalized measure.
class MomentSystem {
public:
  MomentSystem(int n, int w, int wp);

  [[nodiscard]] int n() const { return n_; }
  [[nodiscard]] int w() const { return w_; }
  [[nodiscard]] int wp() const { return wp_; }
  /// Number of real constraint functions.
  [[nodiscard]] std::size_t size() const { return 2 * complex_.size(); }
  /// Real dimension of the constraint space.
  [[nodiscard]] int dimension() const { return dimension_; }
  [[nodiscard]] const std::vector<ComplexPolynomial>& complex_functions() const { return complex_; }

  /// Values of all real constraint functions at x.
  [[nodiscard]] Eigen::VectorXd values(const Eigen::VectorXcd& x) const;
  /// Jacobian (size() x 2(n+1)) with respect to (Re x_0, Im x_0, ...).
  [[nodiscard]] Eigen::MatrixXd gradients(const Eigen::VectorXcd& x) const;

private:
  int n_;
  int w_;
  int wp_;
  int dimension_ = 0;
  std::vector<ComplexPolynomial> complex_;
  std::vector<Exponent> monomials_;
  Eigen::MatrixXcd coef_;  // functions x monomials
};

Eigen::VectorXd moment_residuals(const DiscreteMeasure& m, const MomentSystem& sys);

double theta_objective(const DiscreteMeasure& m, double theta);

/// n + 2 real unit vectors with pairwise inner product -1/(n+1), equal weights.
DiscreteMeasure simplex_configuration(int n);

/// v_0 = (sqrt(nu_i)), v_j = (sqrt((n+1) nu_i) x_{i,j}); returns max |G - I|
/// over their Gram matrix in l^2.
double v_vector_defect(const DiscreteMeasure& m);

struct ThetaOptions {
  int k_max = 0;        // 0: dimension + 2
  int restarts = 12;
  std::uint64_t seed = 1;
  double tol = 1e-9;    // feasibility required for a restart to count
  int outer_iterations = 40;
  int inner_iterations = 400;
};

struct ThetaResult {
  DiscreteMeasure measure;
  double value = 0.0;
  double residual_norm = 0.0;
  int n = 1;
  int w = 0;
  int wp = 0;
  double theta = 0.5;
  std::uint64_t seed = 1;

  /// JSON text with fields n, w, w_prime, theta, value, atoms, weights, residual_norm, seed.
  [[nodiscard]] std::string to_json() const;
};

/// Augmented Lagrangian on the constraints with projected gradient inner steps
/// (tangent step and renormalization for atoms, simplex projection for the
/// weights), multistart over atom counts, and a Gauss-Newton feasibility polish.
/// Throws Infeasible if no restart reaches opts.tol.
ThetaResult minimize_theta(int n, int w, int wp, double theta, const ThetaOptions& opts = {});

/// Euclidean projection onto the probability simplex.
Eigen::VectorXd project_simplex(const Eigen::VectorXd& v);

}  // namespace crlab
