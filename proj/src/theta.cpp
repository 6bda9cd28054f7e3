#include "crlab/theta.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>

#include <json.hpp>

#include "crlab/harmonics.hpp"
#include "crlab/quadrature.hpp"

namespace crlab {

DiscreteMeasure::DiscreteMeasure(std::vector<SpherePoint> atoms, std::vector<double> weights)
    : atoms_(std::move(atoms)), weights_(std::move(weights)) {
  if (atoms_.empty() || atoms_.size() != weights_.size()) {
    throw InvalidArgument("DiscreteMeasure: need as many weights as atoms, at least one");
  }
  double total = 0.0;
  for (double w : weights_) {
    if (!(w > 0.0)) throw InvalidArgument("DiscreteMeasure: weights must be positive");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) throw InvalidArgument("DiscreteMeasure: weights must sum to 1");
  const int n = atoms_.front().n();
  for (const auto& a : atoms_) {
    if (a.n() != n) throw InvalidArgument("DiscreteMeasure: atoms of mixed dimension");
  }
}

DiscreteMeasure DiscreteMeasure::merged(double tol) const {
  std::vector<SpherePoint> atoms;
  std::vector<double> weights;
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    bool found = false;
    for (std::size_t j = 0; j < atoms.size(); ++j) {
      if ((atoms[j].coords() - atoms_[i].coords()).norm() < tol) {
        weights[j] += weights_[i];
        found = true;
        break;
      }
    }
    if (!found) {
      atoms.push_back(atoms_[i]);
      weights.push_back(weights_[i]);
    }
  }
  return {std::move(atoms), std::move(weights)};
}

DiscreteMeasure DiscreteMeasure::rotated(const Eigen::MatrixXcd& unitary) const {
  std::vector<SpherePoint> atoms;
  atoms.reserve(atoms_.size());
  for (const auto& a : atoms_) atoms.push_back(SpherePoint::normalized(unitary * a.coords()));
  return {std::move(atoms), weights_};
}

MomentSystem::MomentSystem(int n, int w, int wp) : n_(n), w_(w), wp_(wp) {
  Dimension dim(n);
  if (w < 0 || wp < 0 || w + wp == 0) throw InvalidArgument("MomentSystem: need w, w' >= 0 and (w, w') != (0, 0)");
  const HarmonicBasis basis = build_algebraic_basis(n, std::max(w, wp));
  const double scale = std::sqrt(sphere_volume(n));
  for (std::size_t b = 0; b < basis.size(); ++b) {
    const auto idx = basis[b].index;
    if (idx.j > w || idx.l > wp || (idx.j == 0 && idx.l == 0)) continue;
    // The conjugate block gives the same real constraints.
    if (idx.j < idx.l && idx.l <= w && idx.j <= wp) continue;
    complex_.push_back(basis[b].poly * cplx(scale, 0.0));
    dimension_ += idx.j == idx.l ? 1 : 2;
  }
  std::map<Exponent, Eigen::Index> slot;
  for (const auto& f : complex_) {
    for (const auto& [e, c] : f.terms()) {
      if (slot.emplace(e, static_cast<Eigen::Index>(monomials_.size())).second) monomials_.push_back(e);
    }
  }
  coef_ = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(complex_.size()), static_cast<Eigen::Index>(monomials_.size()));
  for (std::size_t f = 0; f < complex_.size(); ++f) {
    for (const auto& [e, c] : complex_[f].terms()) coef_(static_cast<Eigen::Index>(f), slot[e]) = c;
  }
}

namespace {

cplx ipow(cplx z, int k) {
  cplx r = 1.0;
  for (int i = 0; i < k; ++i) r *= z;
  return r;
}

// Value of z^alpha zbar^beta with one exponent slot lowered (and multiplied by the old exponent).
cplx monomial_value(const Exponent& e, const Eigen::VectorXcd& x, int lowered) {
  const auto m = static_cast<std::size_t>(x.size());
  cplx v = 1.0;
  for (std::size_t i = 0; i < 2 * m; ++i) {
    int p = e[i];
    if (static_cast<int>(i) == lowered) {
      if (p == 0) return 0.0;
      v *= static_cast<double>(p);
      --p;
    }
    const cplx z = i < m ? x[static_cast<Eigen::Index>(i)] : std::conj(x[static_cast<Eigen::Index>(i - m)]);
    v *= ipow(z, p);
  }
  return v;
}

}  // namespace

Eigen::VectorXd MomentSystem::values(const Eigen::VectorXcd& x) const {
  Eigen::VectorXcd mv(static_cast<Eigen::Index>(monomials_.size()));
  for (std::size_t k = 0; k < monomials_.size(); ++k) mv[static_cast<Eigen::Index>(k)] = monomial_value(monomials_[k], x, -1);
  const Eigen::VectorXcd f = coef_ * mv;
  Eigen::VectorXd out(2 * f.size());
  for (Eigen::Index i = 0; i < f.size(); ++i) {
    out[2 * i] = f[i].real();
    out[2 * i + 1] = f[i].imag();
  }
  return out;
}

Eigen::MatrixXd MomentSystem::gradients(const Eigen::VectorXcd& x) const {
  const auto m = x.size();
  const auto nm = static_cast<Eigen::Index>(monomials_.size());
  Eigen::MatrixXd out(static_cast<Eigen::Index>(size()), 2 * m);
  for (Eigen::Index i = 0; i < m; ++i) {
    Eigen::VectorXcd dz(nm);
    Eigen::VectorXcd dzb(nm);
    for (Eigen::Index k = 0; k < nm; ++k) {
      dz[k] = monomial_value(monomials_[static_cast<std::size_t>(k)], x, static_cast<int>(i));
      dzb[k] = monomial_value(monomials_[static_cast<std::size_t>(k)], x, static_cast<int>(m + i));
    }
    const Eigen::VectorXcd fz = coef_ * dz;
    const Eigen::VectorXcd fzb = coef_ * dzb;
    for (Eigen::Index f = 0; f < fz.size(); ++f) {
      const cplx dx = fz[f] + fzb[f];
      const cplx dy = cplx(0.0, 1.0) * (fz[f] - fzb[f]);
      out(2 * f, 2 * i) = dx.real();
      out(2 * f + 1, 2 * i) = dx.imag();
      out(2 * f, 2 * i + 1) = dy.real();
      out(2 * f + 1, 2 * i + 1) = dy.imag();
    }
  }
  return out;
}

Eigen::VectorXd moment_residuals(const DiscreteMeasure& m, const MomentSystem& sys) {
  if (m.n() != sys.n()) throw InvalidArgument("moment_residuals: dimension mismatch");
  Eigen::VectorXd r = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(sys.size()));
  for (std::size_t i = 0; i < m.size(); ++i) r += m.weights()[i] * sys.values(m.atoms()[i].coords());
  return r;
}

double theta_objective(const DiscreteMeasure& m, double theta) {
  double s = 0.0;
  for (double w : m.weights()) s += std::pow(w, theta);
  return s;
}

DiscreteMeasure simplex_configuration(int n) {
  Dimension dim(n);
  const int count = n + 2;
  const double scale = std::sqrt(static_cast<double>(n + 2) / (n + 1));
  std::vector<SpherePoint> atoms;
  // Helmert basis of the hyperplane orthogonal to (1, ..., 1) in R^{n+2}.
  for (int i = 0; i < count; ++i) {
    Eigen::VectorXcd x = Eigen::VectorXcd::Zero(n + 1);
    for (int m = 1; m <= n + 1; ++m) {
      const double norm = std::sqrt(static_cast<double>(m) * (m + 1));
      double u = 0.0;
      if (i < m) u = 1.0 / norm;
      else if (i == m) u = -static_cast<double>(m) / norm;
      x[m - 1] = scale * u;
    }
    atoms.push_back(SpherePoint::normalized(x));
  }
  return {std::move(atoms), std::vector<double>(static_cast<std::size_t>(count), 1.0 / count)};
}

double v_vector_defect(const DiscreteMeasure& m) {
  const int n = m.n();
  const auto k = static_cast<Eigen::Index>(m.size());
  Eigen::MatrixXcd v(k, n + 2);
  for (Eigen::Index i = 0; i < k; ++i) {
    const double nu = m.weights()[static_cast<std::size_t>(i)];
    v(i, 0) = std::sqrt(nu);
    for (int j = 1; j <= n + 1; ++j) v(i, j) = std::sqrt((n + 1) * nu) * m.atoms()[static_cast<std::size_t>(i)][j - 1];
  }
  const Eigen::MatrixXcd g = v.adjoint() * v;
  return (g - Eigen::MatrixXcd::Identity(n + 2, n + 2)).cwiseAbs().maxCoeff();
}

Eigen::VectorXd project_simplex(const Eigen::VectorXd& v) {
  Eigen::VectorXd u = v;
  std::sort(u.data(), u.data() + u.size(), std::greater<>());
  double cum = 0.0;
  double tau = 0.0;
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    cum += u[i];
    const double t = (cum - 1.0) / static_cast<double>(i + 1);
    if (u[i] - t > 0.0) tau = t;
  }
  return (v.array() - tau).max(0.0).matrix();
}

std::string ThetaResult::to_json() const {
  nlohmann::ordered_json j;
  j["n"] = n;
  j["w"] = w;
  j["w_prime"] = wp;
  j["theta"] = theta;
  j["value"] = value;
  nlohmann::ordered_json atoms = nlohmann::ordered_json::array();
  for (const auto& a : measure.atoms()) {
    nlohmann::ordered_json c = nlohmann::ordered_json::array();
    for (Eigen::Index i = 0; i < a.coords().size(); ++i) {
      c.push_back(a.coords()[i].real());
      c.push_back(a.coords()[i].imag());
    }
    atoms.push_back(c);
  }
  j["atoms"] = atoms;
  j["weights"] = measure.weights();
  j["residual_norm"] = residual_norm;
  j["seed"] = seed;
  return j.dump(2);
}

namespace {

struct State {
  Eigen::MatrixXcd x;  // (n+1) x K
  Eigen::VectorXd nu;
};

Eigen::VectorXd residual(const State& s, const MomentSystem& sys) {
  Eigen::VectorXd r = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(sys.size()));
  for (Eigen::Index i = 0; i < s.nu.size(); ++i) r += s.nu[i] * sys.values(s.x.col(i));
  return r;
}

double lagrangian(const State& s, const MomentSystem& sys, double theta, const Eigen::VectorXd& mu, double rho) {
  const Eigen::VectorXd r = residual(s, sys);
  double obj = 0.0;
  for (Eigen::Index i = 0; i < s.nu.size(); ++i) obj += std::pow(s.nu[i], theta);
  return obj + mu.dot(r) + 0.5 * rho * r.squaredNorm();
}

void prune(State& s, double threshold) {
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < s.nu.size(); ++i) {
    if (s.nu[i] >= threshold) keep.push_back(i);
  }
  if (keep.size() == static_cast<std::size_t>(s.nu.size())) return;
  State t;
  t.x.resize(s.x.rows(), static_cast<Eigen::Index>(keep.size()));
  t.nu.resize(static_cast<Eigen::Index>(keep.size()));
  for (std::size_t k = 0; k < keep.size(); ++k) {
    t.x.col(static_cast<Eigen::Index>(k)) = s.x.col(keep[k]);
    t.nu[static_cast<Eigen::Index>(k)] = s.nu[keep[k]];
  }
  t.nu /= t.nu.sum();
  s = std::move(t);
}

void normalize_columns(Eigen::MatrixXcd& x) {
  for (Eigen::Index i = 0; i < x.cols(); ++i) x.col(i).normalize();
}

// Projected-gradient minimization of the augmented Lagrangian.
void inner_solve(State& s, const MomentSystem& sys, double theta, const Eigen::VectorXd& mu, double rho,
                 int iterations) {
  const Eigen::Index dimx = s.x.rows();
  double tau = 1e-2;
  double current = lagrangian(s, sys, theta, mu, rho);
  for (int it = 0; it < iterations && s.nu.size() > 0; ++it) {
    const Eigen::VectorXd r = residual(s, sys);
    const Eigen::VectorXd m = mu + rho * r;
    const auto k = s.nu.size();
    Eigen::VectorXd gnu(k);
    Eigen::MatrixXcd gx(dimx, k);
    for (Eigen::Index i = 0; i < k; ++i) {
      const Eigen::VectorXcd xi = s.x.col(i);
      gnu[i] = theta * std::pow(s.nu[i], theta - 1.0) + m.dot(sys.values(xi));
      const Eigen::VectorXd g = s.nu[i] * (sys.gradients(xi).transpose() * m);
      Eigen::VectorXcd gc(dimx);
      for (Eigen::Index c = 0; c < dimx; ++c) gc[c] = cplx(g[2 * c], g[2 * c + 1]);
      // Remove the radial component.
      gc -= (xi.dot(gc)).real() * xi;
      gx.col(i) = gc;
    }
    bool accepted = false;
    for (int bt = 0; bt < 50; ++bt) {
      State trial{s.x - tau * gx, project_simplex(s.nu - tau * gnu)};
      normalize_columns(trial.x);
      const double step2 = (trial.x - s.x).squaredNorm() + (trial.nu - s.nu).squaredNorm();
      prune(trial, 1e-7);
      const double value = lagrangian(trial, sys, theta, mu, rho);
      if (value <= current - 1e-4 * step2 / tau) {
        s = std::move(trial);
        current = value;
        accepted = true;
        tau = std::min(tau * 2.0, 1.0);
        if (step2 < 1e-26) return;
        break;
      }
      tau *= 0.5;
    }
    if (!accepted) return;
  }
}

// Gauss-Newton on the constraints, unit norms and the mass, minimum-norm steps.
void polish(State& s, const MomentSystem& sys, int iterations) {
  const Eigen::Index dimx = s.x.rows();
  for (int it = 0; it < iterations; ++it) {
    const auto k = s.nu.size();
    const auto c = static_cast<Eigen::Index>(sys.size());
    const Eigen::Index rows = c + 1;
    const Eigen::Index cols = k * (2 * dimx + 1);
    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(rows, cols);
    Eigen::VectorXd res(rows);
    res.head(c) = residual(s, sys);
    res[c] = s.nu.sum() - 1.0;
    if (res.cwiseAbs().maxCoeff() < 1e-15) return;
    for (Eigen::Index i = 0; i < k; ++i) {
      const Eigen::VectorXcd xi = s.x.col(i);
      jac.block(0, i * 2 * dimx, c, 2 * dimx) = s.nu[i] * sys.gradients(xi);
      jac.block(0, k * 2 * dimx + i, c, 1) = sys.values(xi);
      jac(c, k * 2 * dimx + i) = 1.0;
    }
    const Eigen::VectorXd step = jac.completeOrthogonalDecomposition().solve(-res);
    State t = s;
    for (Eigen::Index i = 0; i < k; ++i) {
      for (Eigen::Index d = 0; d < dimx; ++d) {
        t.x(d, i) += cplx(step[i * 2 * dimx + 2 * d], step[i * 2 * dimx + 2 * d + 1]);
      }
      t.nu[i] += step[k * 2 * dimx + i];
    }
    normalize_columns(t.x);
    if ((t.nu.array() <= 0.0).any()) return;
    if (residual(t, sys).norm() + std::abs(t.nu.sum() - 1.0) >= res.norm() && it > 2) return;
    s = std::move(t);
  }
}

}  // namespace

ThetaResult minimize_theta(int n, int w, int wp, double theta, const ThetaOptions& opts) {
  if (!(theta > 0.0 && theta <= 1.0)) throw InvalidArgument("minimize_theta: theta must lie in (0, 1]");
  const MomentSystem sys(n, w, wp);
  const int k_max = opts.k_max > 0 ? opts.k_max : sys.dimension() + 2;
  if (k_max < 2) throw InvalidArgument("minimize_theta: K_max must be >= 2");
  std::mt19937_64 rng(opts.seed);

  bool have = false;
  ThetaResult best{simplex_configuration(n)};
  best.value = std::numeric_limits<double>::infinity();
  for (int restart = 0; restart < opts.restarts; ++restart) {
    const int k = 2 + restart % (k_max - 1);
    State s;
    s.x.resize(n + 1, k);
    for (int i = 0; i < k; ++i) s.x.col(i) = SpherePoint::random(n, rng).coords();
    std::uniform_real_distribution<double> u(0.5, 1.5);
    s.nu.resize(k);
    for (int i = 0; i < k; ++i) s.nu[i] = u(rng);
    s.nu /= s.nu.sum();

    Eigen::VectorXd mu = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(sys.size()));
    double rho = 10.0;
    double previous = residual(s, sys).norm();
    for (int outer = 0; outer < opts.outer_iterations; ++outer) {
      inner_solve(s, sys, theta, mu, rho, opts.inner_iterations);
      const Eigen::VectorXd r = residual(s, sys);
      mu += rho * r;
      if (r.norm() > 0.25 * previous) rho = std::min(rho * 4.0, 1e8);
      previous = r.norm();
      if (previous < 1e-3 * opts.tol) break;
    }
    polish(s, sys, 60);
    s.nu /= s.nu.sum();

    std::vector<SpherePoint> atoms;
    std::vector<double> weights;
    for (Eigen::Index i = 0; i < s.nu.size(); ++i) {
      atoms.push_back(SpherePoint::normalized(s.x.col(i)));
      weights.push_back(s.nu[i]);
    }
    DiscreteMeasure measure(std::move(atoms), std::move(weights));
    const double res = moment_residuals(measure, sys).norm();
    if (!(res < opts.tol)) continue;
    const double value = theta_objective(measure, theta);
    if (!have || value < best.value) {
      have = true;
      best.measure = std::move(measure);
      best.value = value;
      best.residual_norm = res;
    }
  }
  if (!have) throw Infeasible("minimize_theta: no admissible measure found with at most " + std::to_string(k_max) + " atoms");
  best.n = n;
  best.w = w;
  best.wp = wp;
  best.theta = theta;
  best.seed = opts.seed;
  return best;
}

}  // namespace crlab
