"""Numerical and symbolic checks for the sharp Sobolev inequality on the CR sphere."""

import json
from fractions import Fraction

from . import _crlab
from ._crlab import (
    ConfigError,
    CrlabError,
    Infeasible,
    InvalidArgument,
    NoConvergence,
    OrderOutOfRange,
    ZeroFunction,
    ambient_matches,
    bubble_quotient,
    extremal,
    measured_kappa,
    minimize_quotient,
    run_suite,
    sharp_constant,
    sphere_volume,
    suite_names,
)

__all__ = [
    "ConfigError",
    "CrlabError",
    "Infeasible",
    "InvalidArgument",
    "NoConvergence",
    "OrderOutOfRange",
    "ZeroFunction",
    "ambient_matches",
    "bubble_quotient",
    "extremal",
    "gjms_multiplier",
    "laplacian_constant",
    "measured_kappa",
    "minimize_quotient",
    "minimize_theta",
    "run_suite",
    "sharp_constant",
    "sphere_volume",
    "suite_names",
]


def gjms_multiplier(n, k, j, l, d=0, sharp=True):
    """Exact eigenvalue of the order-k operator on H_{j,l}; d = w' - w."""
    num, den = _crlab.gjms_multiplier(n, k, j, l, d, sharp)
    return Fraction(num, den)


def laplacian_constant():
    num, den = _crlab.laplacian_constant()
    return Fraction(num, den)


def minimize_theta(n, w, wp, theta, seed=1, restarts=12):
    return json.loads(_crlab.minimize_theta(n, w, wp, theta, seed, restarts))
