import math
import os
import subprocess
from fractions import Fraction

import numpy as np
import pytest

import crlab


def test_constants():
    assert crlab.sphere_volume(1) == pytest.approx(4 * math.pi**2, rel=1e-14)
    assert crlab.sharp_constant(1, 1) == pytest.approx(1 / math.pi, rel=1e-14)
    assert crlab.measured_kappa(2, 2) == pytest.approx(4.0, rel=1e-12)
    with pytest.raises(crlab.OrderOutOfRange):
        crlab.sharp_constant(1, 2)


def test_exact_spectrum():
    # Constants: 2^k prod L(0,0); n = 1, k = 1 gives 2 * (1/2)(1/2).
    assert crlab.gjms_multiplier(1, 1, 0, 0) == Fraction(1, 2)
    assert crlab.gjms_multiplier(1, 1, 0, 0, sharp=False) == Fraction(1, 4)
    assert crlab.laplacian_constant() == Fraction(-2)
    assert all(crlab.ambient_matches(2, 2, j, l, d) for j in range(3) for l in range(3) for d in (-1, 0, 1))


def test_extremal_is_constant_at_origin():
    pts = np.array([[1.0, 0.0], [0.6, 0.8j], [0.0, 1.0]], dtype=complex)
    vals = crlab.extremal(np.zeros(2, dtype=complex), 1, pts)
    assert np.allclose(vals, 1.0)


def test_theta_value():
    res = crlab.minimize_theta(1, 1, 1, 0.5, seed=7)
    assert res["value"] == pytest.approx(math.sqrt(3), abs=1e-3)
    assert sum(res["weights"]) == pytest.approx(1.0, abs=1e-12)


def test_minimize_and_bubbles():
    r = crlab.minimize_quotient(1, 1, 4, seed=3)
    assert r["value"] == pytest.approx(math.pi, abs=1e-4)
    one = crlab.bubble_quotient(1, 1, [np.array([1, 0], dtype=complex)], [0.05], [1.0])
    assert one == pytest.approx(math.pi, rel=1e-5)
    with pytest.raises(crlab.InvalidArgument):
        crlab.bubble_quotient(1, 1, [np.array([1, 0], dtype=complex)], [0.05, 0.1], [1.0])


def test_suites():
    assert "report" in crlab.suite_names()
    r = crlab.run_suite("theta-optimize", n=1, w=1, wp=1, theta=0.5)
    assert r["passed"]
    assert any("1.73205" in detail for _, _, detail in r["checks"])
    with pytest.raises(crlab.ConfigError):
        crlab.run_suite("sharp-constant", n=1, k=2)


@pytest.mark.skipif("CRLAB_CLI" not in os.environ, reason="command-line binary not provided")
def test_cli_exit_status(tmp_path):
    cli = os.environ["CRLAB_CLI"]
    ok = subprocess.run([cli, "verify-spectrum", "--output-dir", str(tmp_path)], capture_output=True, text=True)
    assert ok.returncode == 0
    bad = subprocess.run([cli, "verify-spectrum", "--k", "5"], capture_output=True, text=True)
    assert bad.returncode == 2
