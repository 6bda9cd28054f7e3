#pragma once

// Product quadrature on S^{2n+1} with respect to the contact volume
// theta_0 ^ (d theta_0)^n, plus closed-form monomial moments.

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "crlab/geometry.hpp"

namespace crlab {

/// Total contact volume of S^{2n+1}: 2^{n+1} pi^{n+1}.
double sphere_volume(int n);

/// Ratio between the contact volume form and the Euclidean surface measure,
/// theta_0 ^ (d theta_0)^n = 2^n n! d sigma.
double contact_density(int n);

/// Closed-form moment int z^alpha zbar^beta d xi (contact volume). Zero unless
/// alpha == beta, in which case it is vol * n! alpha! / (n + |alpha|)!.
double sphere_moment(std::span<const int> alpha, std::span<const int> beta);

/// Deterministic pairwise summation.
double pairwise_sum(std::span<const double> values);
cplx pairwise_sum(std::span<const cplx> values);

struct QuadratureResolution {
  int gl_points = 0;     ///< Gauss-Legendre points per collapsed simplex coordinate
  int phase_points = 0;  ///< trapezoid points per phase angle
};

class QuadratureRule {
public:
  QuadratureRule(int n, int degree, Eigen::MatrixXcd nodes, Eigen::VectorXd weights, std::string id);

  [[nodiscard]] int n() const { return n_; }
  /// Total degree in (z, zbar) integrated exactly.
  [[nodiscard]] int degree() const { return degree_; }
  [[nodiscard]] std::size_t size() const { return static_cast<std::size_t>(weights_.size()); }
  [[nodiscard]] const Eigen::MatrixXcd& nodes() const { return nodes_; }
  [[nodiscard]] const Eigen::VectorXd& weights() const { return weights_; }
  [[nodiscard]] const std::string& id() const { return id_; }
  [[nodiscard]] SpherePoint node(std::size_t i) const;

  [[nodiscard]] double integrate(std::span<const double> values) const;
  [[nodiscard]] cplx integrate(std::span<const cplx> values) const;
  [[nodiscard]] double integrate(const Eigen::VectorXd& values) const;
  [[nodiscard]] cplx integrate(const Eigen::VectorXcd& values) const;

  /// Samples f at every node.
  [[nodiscard]] Eigen::VectorXcd sample(const SphereFunction& f) const;

  /// One node per line: 2n+2 real coordinates (Re z_0, Im z_0, ...) and the
  /// weight, 17 significant digits, after a single '#' header line.
  void write_text(std::ostream& os) const;
  static QuadratureRule read_text(std::istream& is);

private:
  int n_;
  int degree_;
  Eigen::MatrixXcd nodes_;  // (n+1) x N
  Eigen::VectorXd weights_;
  std::string id_;
};

/// Gauss-Legendre nodes and weights on [0, 1].
void gauss_legendre_unit(int points, std::vector<double>& x, std::vector<double>& w);

/// Highest total degree integrated exactly by the given resolution.
int exact_degree(int n, QuadratureResolution res);

/// Smallest tensor rule integrating all polynomials of total degree <= degree.
QuadratureRule build_quadrature(int n, int degree);
/// Rule with explicit resolution; throws ResolutionTooLow if it cannot
/// integrate required_degree exactly.
QuadratureRule build_quadrature(int n, QuadratureResolution res, int required_degree);

/// Transports a rule by an automorphism: integrates f via int f(Phi(y)) J_Phi(y) dy.
/// Nodes cluster where the push-forward of the uniform measure concentrates.
QuadratureRule transport(const QuadratureRule& rule, const AutomorphismParam& a);

}  // namespace crlab
