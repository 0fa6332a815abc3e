"""Shared draw utilities and independent oracles for the test suite.

The quadrature oracle here integrates dt = dx/sqrt(p^2) directly with
scipy's adaptive quadrature between interior points, with no variable
substitution, so it shares no code path with the library's own
time-of-flight machinery.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.integrate import quad

from mlosc import ModelParams, OscillatorKind, energy_to_C, p_squared, shape


def draw_params(rng: np.random.Generator, kind: OscillatorKind,
                lam_sign: int) -> ModelParams:
    """Random valid parameters with alpha, |lambda| in [0.5, 2]."""
    alpha = float(rng.uniform(0.5, 2.0))
    lam = float(lam_sign * rng.uniform(0.5, 2.0))
    if kind is OscillatorKind.ORIGINAL:
        beta = 0.0
    elif kind is OscillatorKind.G1 and lam < 0.0:
        bound = alpha * alpha / (2.0 * math.sqrt(-lam))
        beta = float(rng.uniform(0.05, 0.95)) * bound
    elif kind is OscillatorKind.G2 and lam > 0.0:
        bound = alpha * alpha / math.sqrt(lam)
        beta = float(rng.uniform(0.05, 0.95)) * bound
    else:
        beta = float(rng.uniform(0.05, 2.0))
    return ModelParams(kind, alpha=alpha, beta=beta, lam=lam)


def energy_in_row(rng: np.random.Generator, params: ModelParams, row: str) -> float:
    """Random energy inside the named band of the potential landscape."""
    sh = shape(params)
    u = float(rng.uniform(0.15, 0.85))
    if row == "bounded":
        return sh.V_min + u * (sh.V_plus_inf - sh.V_min)
    if row == "at_plus_inf":
        return sh.V_plus_inf
    if row == "band":
        top = sh.V_max if sh.V_max is not None else sh.V_minus_inf
        return sh.V_plus_inf + u * (top - sh.V_plus_inf)
    if row == "at_top":
        return sh.V_max
    if row == "at_minus_inf":
        return sh.V_minus_inf
    if row == "above":
        top = sh.V_max if sh.V_max is not None else sh.V_minus_inf
        return top + u * max(1.0, abs(top))
    if row == "well":
        # lambda < 0: any energy above the minimum
        return sh.V_min + u * 4.0 * max(1.0, abs(sh.V_min))
    raise ValueError(row)


def plain_quad_time(params: ModelParams, E: float, x1: float, x2: float) -> float:
    """Independent oracle: direct scipy quadrature of dx/sqrt(p^2(x)).

    Both endpoints must be strictly inside the classically allowed region.
    """
    C = energy_to_C(params, E)

    def integrand(x: float) -> float:
        return 1.0 / math.sqrt(float(p_squared(params, C, x)))

    val, err = quad(integrand, x1, x2, epsabs=1e-12, epsrel=1e-12, limit=300)
    return val


def v0_on_shell(params: ModelParams, E: float, x0: float) -> float:
    C = energy_to_C(params, E)
    return math.sqrt(max(0.0, float(p_squared(params, C, x0))))
