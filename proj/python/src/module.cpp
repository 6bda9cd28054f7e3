#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "crlab/ambient.hpp"
#include "crlab/cli.hpp"
#include "crlab/extremals.hpp"
#include "crlab/operators.hpp"
#include "crlab/theta.hpp"
#include "crlab/yamabe.hpp"

namespace py = pybind11;
using namespace crlab;

namespace {

py::tuple fraction(const Rational& r) { return py::make_tuple(r.num(), r.den()); }

// w + w' = k - n - 1 and w' - w = d.
OperatorSpec spec_from(int n, int k, int d) {
  const Rational w = (Rational(k - n - 1) - Rational(d)) * Rational(1, 2);
  return {n, w, w + Rational(d)};
}

}  // namespace

PYBIND11_MODULE(_crlab, m) {
  m.doc() = "CR sphere Sobolev toolkit";

  auto base = py::register_exception<Error>(m, "CrlabError", PyExc_RuntimeError);
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<OrderOutOfRange>(m, "OrderOutOfRange", base.ptr());
  py::register_exception<InvalidArgument>(m, "InvalidArgument", base.ptr());
  py::register_exception<NoConvergence>(m, "NoConvergence", base.ptr());
  py::register_exception<Infeasible>(m, "Infeasible", base.ptr());
  py::register_exception<ZeroFunction>(m, "ZeroFunction", base.ptr());

  m.def("sphere_volume", &sphere_volume, py::arg("n"));
  m.def("sharp_constant", &sharp_constant, py::arg("n"), py::arg("k"));
  m.def("measured_kappa", &measured_kappa, py::arg("n"), py::arg("k"));

  m.def(
      "gjms_multiplier",
      [](int n, int k, int j, int l, int d, bool sharp) {
        const OperatorSpec spec = spec_from(n, k, d);
        return fraction(gjms_multiplier(spec, j, l, sharp ? Rational(1 << k) : Rational(1)));
      },
      py::arg("n"), py::arg("k"), py::arg("j"), py::arg("l"), py::arg("d") = 0, py::arg("sharp") = true,
      "Eigenvalue on H_{j,l} as (numerator, denominator); d = w' - w.");

  m.def("laplacian_constant", [] { return fraction(calibrate_laplacian_constant()); });

  m.def(
      "ambient_matches",
      [](int n, int k, int j, int l, int d) {
        const OperatorSpec spec = spec_from(n, k, d);
        for (const auto& f : exact_harmonic_block(n, j, l)) {
          if (!ambient_matches_spectrum(spec, f, j, l)) return false;
        }
        return true;
      },
      py::arg("n"), py::arg("k"), py::arg("j"), py::arg("l"), py::arg("d") = 0);

  m.def(
      "extremal",
      [](const Eigen::VectorXcd& xi, int k, const Eigen::MatrixXcd& points) {
        const SphereFunction f = extremal_function({xi, cplx(1.0, 0.0), k});
        Eigen::VectorXcd out(points.rows());
        for (Eigen::Index i = 0; i < points.rows(); ++i) {
          out[i] = f(SpherePoint::normalized(points.row(i).transpose()));
        }
        return out;
      },
      py::arg("xi"), py::arg("k"), py::arg("points"), "Unnormalized extremal at the rows of points.");

  m.def(
      "minimize_theta",
      [](int n, int w, int wp, double theta, std::uint64_t seed, int restarts) {
        ThetaOptions opts;
        opts.seed = seed;
        opts.restarts = restarts;
        return minimize_theta(n, w, wp, theta, opts).to_json();
      },
      py::arg("n"), py::arg("w"), py::arg("wp"), py::arg("theta"), py::arg("seed") = 1, py::arg("restarts") = 12,
      "JSON text of the optimal measure.");

  m.def(
      "minimize_quotient",
      [](int n, int k, int jmax, std::uint64_t seed) {
        const HarmonicBasis basis = n == 1 ? build_basis(1, jmax) : build_basis(n, jmax, 4 * jmax + 4);
        const MinimizeResult r = minimize_quotient(basis, k, seed);
        py::dict d;
        d["value"] = r.value;
        d["iterations"] = r.iterations;
        d["gradient_norm"] = r.gradient_norm;
        return d;
      },
      py::arg("n"), py::arg("k"), py::arg("jmax"), py::arg("seed") = 1);

  m.def(
      "bubble_quotient",
      [](int n, int k, const std::vector<Eigen::VectorXcd>& centers, const std::vector<double>& deltas,
         const std::vector<double>& amplitudes, int degree) {
        if (centers.size() != deltas.size() || centers.size() != amplitudes.size()) {
          throw InvalidArgument("bubble_quotient: centers, deltas and amplitudes differ in length");
        }
        BubbleSpec spec{n, k, {}};
        for (std::size_t i = 0; i < centers.size(); ++i) {
          spec.bubbles.push_back({SpherePoint::normalized(centers[i]), deltas[i], amplitudes[i]});
        }
        return bubble_quotient(spec, build_quadrature(n, degree)).quotient;
      },
      py::arg("n"), py::arg("k"), py::arg("centers"), py::arg("deltas"), py::arg("amplitudes"),
      py::arg("degree") = 30);

  m.def("suite_names", &suite_names);

  m.def(
      "run_suite",
      [](const std::string& suite, int n, int k, int jmax, std::uint64_t seed, double tol, int w, int wp,
         double theta) {
        ExperimentConfig cfg;
        cfg.suite = suite;
        cfg.n = n;
        cfg.k = k;
        cfg.jmax = jmax;
        cfg.seed = seed;
        cfg.tol = tol;
        cfg.w = w;
        cfg.wp = wp;
        cfg.theta = theta;
        const SuiteResult r = run_suite(cfg);
        py::list checks;
        for (const auto& c : r.checks) checks.append(py::make_tuple(c.name, c.passed, c.detail));
        py::dict d;
        d["suite"] = r.suite;
        d["passed"] = r.passed();
        d["checks"] = checks;
        d["columns"] = r.columns;
        d["rows"] = r.rows;
        return d;
      },
      py::arg("suite"), py::arg("n") = 1, py::arg("k") = 1, py::arg("jmax") = 0, py::arg("seed") = 1,
      py::arg("tol") = 0.0, py::arg("w") = 1, py::arg("wp") = 1, py::arg("theta") = 0.5);
}
