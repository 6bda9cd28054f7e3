#pragma once

// Rayleigh quotient A / B^{2/p} of the sharp CR Sobolev inequality, its
// minimization over band-limited functions, and concentrating bubble families.

#include <cstdint>
#include <optional>
#include <vector>

#include "crlab/extremals.hpp"
#include "crlab/harmonics.hpp"
#include "crlab/theta.hpp"

namespace crlab {

/// A with sharp normalization over B^{2/p}; throws ZeroFunction.
double rayleigh_quotient(const HarmonicExpansion& f, int k, const HarmonicBasis& basis);

struct MinimizeOptions {
  double tol = 1e-9;     // relative per-step decrease below which the descent stops
  double gtol = 1e-7;    // coefficient-space gradient norm at B = 1
  int max_iter = 500;
  double perturbation = 0.3;  // relative size of the random part of the start
};

struct MinimizeResult {
  HarmonicExpansion f;  // real valued, B(f) = 1
  double value = 0.0;
  double gradient_norm = 0.0;
  int iterations = 0;
};

/// Preconditioned gradient descent on the coefficients with retraction onto
/// {B = 1}: F <- F - tau (F - A P^{-1} Pi(|F|^{p-2} F)), backtracking on tau.
/// Every 20 steps F is also moved to its recentered (balanced) image when
/// that lowers the value, since the quotient is flat along the conformal orbit.
/// Throws NoConvergence if neither tolerance is met within max_iter.
MinimizeResult minimize_quotient(const HarmonicExpansion& start, int k, const HarmonicBasis& basis,
                                 const MinimizeOptions& opts = {});
/// Random start: a positive constant plus a seeded random real perturbation.
MinimizeResult minimize_quotient(const HarmonicBasis& basis, int k, std::uint64_t seed,
                                 const MinimizeOptions& opts = {});

struct Bubble {
  SpherePoint center;
  double delta = 1.0;
  double amplitude = 1.0;
};

struct BubbleSpec {
  int n = 1;
  int k = 1;
  std::vector<Bubble> bubbles;

  /// delta in (0, 1], distinct centers, valid order.
  void validate() const;
};

/// xi of the bubble: (1 - delta) * center.
Eigen::VectorXcd bubble_center(const Bubble& b);

/// Sum of amplitude * g_i / ||g_i||_p with g_i the extremal at bubble_center.
SphereFunction bubble_family(const BubbleSpec& spec);

struct BubbleQuotient {
  double a = 0.0;
  double b = 0.0;
  double quotient = 0.0;
};

/// Quotient of bubble_family(spec). Uses P g = 2^k lambda(0,0) g^{p-1} for
/// every extremal g, so A is a double sum of overlap integrals; integrals are
/// split by the partition of unity chi_m = g_m^p / sum g_i^p and each piece is
/// integrated with the base rule transported to the m-th bubble.
BubbleQuotient bubble_quotient(const BubbleSpec& spec, const QuadratureRule& base);

/// Heisenberg-side bubble: the standard profile lambda^{(Q-2k)/4} dilated by
/// delta, carried to the sphere through the Cayley transform.
SphereFunction heisenberg_bubble(int n, int k, double delta);

struct ProbeRow {
  double delta = 0.0;
  double quotient = 0.0;
};

struct ProbeReport {
  bool admissible = false;
  double moment_residual = 0.0;
  double theta_value = 0.0;   // sum nu_i^theta, theta = (Q - 2k) / Q
  double floor = 0.0;         // theta_value / C_{n,2k}
  std::vector<ProbeRow> rows;
  double min_quotient = 0.0;
  double relative_gap = 0.0;  // (quotient - floor) / floor at the smallest delta
};

/// Bubbles with amplitudes nu_i^{1/p} at the atoms of the configuration; the
/// configuration must annihilate the (w, w') moment system (within 1e-9),
/// otherwise the report is marked inadmissible and no quotients are computed.
ProbeReport improved_constant_probe(int n, int k, int w, int wp, const DiscreteMeasure& config,
                                    const std::vector<double>& deltas, const QuadratureRule& base);

/// |Y(F^Phi) - Y(F)| with F^Phi sampled on the basis rule and re-expanded.
double cr_invariance_check(const HarmonicExpansion& f, int k, const AutomorphismParam& a,
                           const HarmonicBasis& basis);

}  // namespace crlab
