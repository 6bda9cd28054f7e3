#pragma once

// The extremal family C / |1 - xi . conj(eta)|^{(Q-2k)/2}, balancing by CR
// automorphisms, Euler-Lagrange residuals and the second variation at
// balanced functions.

#include <Eigen/Dense>

#include "crlab/geometry.hpp"
#include "crlab/harmonics.hpp"
#include "crlab/operators.hpp"
#include "crlab/quadrature.hpp"

namespace crlab {

struct ExtremalParams {
  Eigen::VectorXcd xi;
  cplx amplitude{1.0, 0.0};
  int k = 1;

  /// Throws InvalidArgument unless |xi| < 1, and OrderOutOfRange unless 1 <= k < n + 1.
  void validate() const;
  [[nodiscard]] int n() const { return static_cast<int>(xi.size()) - 1; }
};

/// (Q - 2k) / 2.
double extremal_exponent(int n, int k);

SphereFunction extremal_function(const ExtremalParams& params);

/// First moments (Re z_0, Im z_0, Re z_1, ...) of density * d xi, normalized to
/// a probability measure. Throws NegativeDensity on any negative value and
/// ZeroFunction on zero mass.
Eigen::VectorXd center_of_mass(const Eigen::VectorXd& density, const QuadratureRule& rule);

/// Pushes |F|^p d xi forward by phi_{-zeta} and returns the first moments.
Eigen::VectorXd pushed_moments(const Eigen::VectorXd& density, const QuadratureRule& rule,
                               const Eigen::VectorXcd& zeta);

struct RecenterResult {
  AutomorphismParam map;
  double moment_norm = 0.0;
  int iterations = 0;
};

/// Finds Phi = phi_{-zeta} with |center_of_mass(|F^Phi|^p)| < tol, where
/// F^Phi = |J|^{1/p} F o Phi^{-1}. Damped Newton iteration on zeta with a
/// finite-difference Jacobian and step halving on non-decrease of the moment
/// norm. Throws NoConvergence after max_iter steps.
RecenterResult recenter(const Eigen::VectorXcd& values, const QuadratureRule& rule, double p,
                        double tol = 1e-10, int max_iter = 100);

/// ||P_k F - A(F) |F|^{p-2} F||_2 after scaling F to B(F) = 1; sharp normalization.
double euler_lagrange_residual(const HarmonicExpansion& f, int k, const HarmonicBasis& basis);

/// sum_j int zbar_j u [P_k, z_j] u - (p - 2) int u P_k u for real balanced u,
/// computed with coordinate multiplications (basis cutoff must exceed u's by
/// one). Throws NotBalanced if |center_of_mass(|u|^p)| > balance_tol.
double second_variation_gap(const HarmonicExpansion& u, int k, const HarmonicBasis& basis,
                            double balance_tol = 1e-6);

/// Closed form of the same quantity through the commutator identity:
/// -2^k sum |c_{jl}|^2 ((p-2) lambda_{w,w} + c lambda_{w-1,w}), with c = k (w-k+1)
/// unless overridden.
double second_variation_spectral(const HarmonicExpansion& u, int k, const HarmonicBasis& basis);
double second_variation_spectral(const HarmonicExpansion& u, int k, const HarmonicBasis& basis,
                                 const Rational& coefficient);

}  // namespace crlab
