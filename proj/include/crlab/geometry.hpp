#pragma once

// Model spaces: the CR sphere S^{2n+1} in C^{n+1}, the Heisenberg group
// H^n = C^n x R, the Cayley transform between them, Heisenberg dilations and
// the CR automorphisms of the sphere.

#include <complex>
#include <functional>
#include <random>

#include <Eigen/Dense>

#include "crlab/errors.hpp"
#include "crlab/rational.hpp"

namespace crlab {

using cplx = std::complex<double>;

/// CR dimension n of S^{2n+1}.
class Dimension {
public:
  explicit Dimension(int n);

  [[nodiscard]] int n() const { return n_; }
  /// Homogeneous dimension Q = 2n + 2.
  [[nodiscard]] int Q() const { return 2 * n_ + 2; }
  /// Critical exponent p = 2Q/(Q - 2k); requires 1 <= k < n + 1.
  [[nodiscard]] double p(int k) const { return p_exact(k).to_double(); }
  [[nodiscard]] Rational p_exact(int k) const;
  void check_order(int k) const;

  friend bool operator==(const Dimension&, const Dimension&) = default;

private:
  int n_;
};

class SpherePoint {
public:
  /// Throws InvalidArgument unless |w| = 1 within 1e-12.
  explicit SpherePoint(Eigen::VectorXcd w);
  /// Rescales a nonzero vector onto the sphere.
  static SpherePoint normalized(const Eigen::VectorXcd& v);
  static SpherePoint north_pole(int n);
  static SpherePoint south_pole(int n);
  static SpherePoint random(int n, std::mt19937_64& rng);

  [[nodiscard]] const Eigen::VectorXcd& coords() const { return w_; }
  [[nodiscard]] int n() const { return static_cast<int>(w_.size()) - 1; }
  [[nodiscard]] cplx operator[](int i) const { return w_[i]; }

private:
  struct Unchecked {};
  SpherePoint(Eigen::VectorXcd w, Unchecked) : w_(std::move(w)) {}

  Eigen::VectorXcd w_;
};

struct HeisenbergPoint {
  Eigen::VectorXcd z;
  double t = 0.0;

  [[nodiscard]] int n() const { return static_cast<int>(z.size()); }
};

/// Element U * phi_xi of Aut(S^{2n+1}); phi_xi is the ball automorphism with
/// phi_xi(0) = xi and phi_xi^{-1} = phi_{-xi}.
class AutomorphismParam {
public:
  AutomorphismParam(Eigen::VectorXcd center, Eigen::MatrixXcd unitary);
  static AutomorphismParam identity(int n);
  static AutomorphismParam from_center(Eigen::VectorXcd center);
  static AutomorphismParam from_unitary(Eigen::MatrixXcd unitary);

  [[nodiscard]] const Eigen::VectorXcd& center() const { return xi_; }
  [[nodiscard]] const Eigen::MatrixXcd& unitary() const { return u_; }
  [[nodiscard]] int n() const { return static_cast<int>(xi_.size()) - 1; }

private:
  Eigen::VectorXcd xi_;
  Eigen::MatrixXcd u_;
};

// --- Cayley transform and Heisenberg dilations ------------------------------

SpherePoint cayley(const HeisenbergPoint& h);
HeisenbergPoint cayley_inverse(const SpherePoint& s);
/// lambda(z, t) = 2 / ((1 + |z|^2)^2 + t^2); the volume density is lambda^{n+1}.
double cayley_conformal_factor(const HeisenbergPoint& h);
/// T^delta(z, t) = (z / delta, t / delta^2).
HeisenbergPoint dilate(double delta, const HeisenbergPoint& h);

/// Constant c_n with theta_c ^ (d theta_c)^n = c_n dz dt on H^n, where
/// theta_c = dt + i sum (zbar_j dz_j - z_j dzbar_j). Equals 4^n n!. With the
/// Cayley formula above, the pullback of theta_0 is -lambda theta_c.
double heisenberg_volume_density(int n);

// --- automorphisms ------------------------------------------------------------

/// phi_xi applied to a point of the closed unit ball.
Eigen::VectorXcd ball_automorphism(const Eigen::VectorXcd& xi, const Eigen::VectorXcd& z);

SpherePoint automorphism_apply(const AutomorphismParam& a, const SpherePoint& s);
SpherePoint automorphism_apply_inverse(const AutomorphismParam& a, const SpherePoint& s);
/// The composition outer o inner, renormalized to the (center, unitary) form.
AutomorphismParam compose(const AutomorphismParam& outer, const AutomorphismParam& inner);
AutomorphismParam inverse(const AutomorphismParam& a);

/// Density of the push-forward of the contact volume under the automorphism,
/// |J|(s) = (1 - |xi|^2)^{Q/2} / |1 - xi . conj(U^{-1} s)|^Q. Identically 1 for
/// pure unitaries, and integrates to the total volume.
double conformal_factor(const AutomorphismParam& a, const SpherePoint& s);

using SphereFunction = std::function<cplx(const SpherePoint&)>;

/// F^Phi = |J|^{1/p} * F o Phi^{-1}; preserves the L^p norm.
SphereFunction act_on_function(const AutomorphismParam& a, SphereFunction f, double p);

/// Haar-distributed unitary via QR of a complex Gaussian matrix.
Eigen::MatrixXcd random_unitary(int dim, std::mt19937_64& rng);
/// Uniform point of the open ball of radius r_max in C^{n+1}.
Eigen::VectorXcd random_ball_point(int n, double r_max, std::mt19937_64& rng);

}  // namespace crlab
