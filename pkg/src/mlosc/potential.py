"""Potential evaluation, extrema and energy-regime classification.

The energy regime decides which functional family solves the equation of
motion: for the first generalized oscillator the regime is characterized by
the signs of (C, c, Delta) of the quadratic ``a + b x + c x^2`` under the
square root of the time quadrature; for the second one by the interval in
which C falls relative to the asymptotic potential values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import DomainError
from .model import ModelParams, OscillatorKind, energy_to_C

#: relative wall margin for lambda < 0 evaluation
WALL_MARGIN = 1.0 - 1e-12


def _check_domain(params: ModelParams, x) -> None:
    if params.lam < 0.0:
        wall = WALL_MARGIN / math.sqrt(-params.lam)
        if np.max(np.abs(x)) > wall:
            raise DomainError(
                f"|x| < 1/sqrt|lambda| violated (x outside +-{wall})"
            )


def V(params: ModelParams, x):
    """Potential energy.  Accepts scalars or arrays."""
    _check_domain(params, x)
    x = np.asarray(x, dtype=float)
    m = 1.0 + params.lam * x * x
    if params.kind is OscillatorKind.G2:
        num = params.alpha**2 * x * x - 2.0 * params.beta * x * np.sqrt(m)
    else:
        num = params.alpha**2 * x * x - 2.0 * params.beta * x
    out = 0.5 * num / m
    return out[()] if out.ndim == 0 else out


def dV(params: ModelParams, x):
    """Analytic derivative of :func:`V`."""
    _check_domain(params, x)
    x = np.asarray(x, dtype=float)
    m = 1.0 + params.lam * x * x
    if params.kind is OscillatorKind.G2:
        out = params.alpha**2 * x / m**2 - params.beta / m**1.5
    else:
        out = (params.alpha**2 * x - params.beta * (1.0 - params.lam * x * x)) / m**2
    return out[()] if out.ndim == 0 else out


@dataclass(frozen=True)
class PotentialShape:
    zeros: tuple
    x_min: float
    V_min: float
    x_max: float | None = None
    V_max: float | None = None
    V_plus_inf: float | None = None
    V_minus_inf: float | None = None
    #: G2, lambda > 0, beta = alpha^2/(2 sqrt(lambda)): second zero recedes to +inf
    zero_at_infinity: bool = False

    def to_dict(self) -> dict:
        return {
            "zeros": list(self.zeros),
            "x_min": self.x_min,
            "V_min": self.V_min,
            "x_max": self.x_max,
            "V_max": self.V_max,
            "V_plus_inf": self.V_plus_inf,
            "V_minus_inf": self.V_minus_inf,
            "zero_at_infinity": self.zero_at_infinity,
        }


def shape(params: ModelParams) -> PotentialShape:
    """Zeros, extrema and asymptotes of the potential, in closed form."""
    a2, beta, lam = params.alpha**2, params.beta, params.lam
    if params.kind is OscillatorKind.G2:
        if lam < 0.0:
            al = -lam
            zeros = _dedupe((0.0, 2.0 * beta / math.sqrt(a2 * a2 + 4.0 * al * beta**2)))
            x_min = beta / math.sqrt(a2 * a2 + al * beta**2)
            return PotentialShape(zeros=zeros, x_min=x_min, V_min=-beta**2 / (2.0 * a2))
        x_min = beta / math.sqrt(a2 * a2 - lam * beta**2)
        v_pinf = (a2 - 2.0 * beta * math.sqrt(lam)) / (2.0 * lam)
        v_minf = (a2 + 2.0 * beta * math.sqrt(lam)) / (2.0 * lam)
        crit = a2 / (2.0 * math.sqrt(lam))
        if beta < crit:
            zeros = _dedupe((0.0, 2.0 * beta / math.sqrt(a2 * a2 - 4.0 * lam * beta**2)))
            at_inf = False
        else:
            zeros = (0.0,)
            at_inf = beta == crit
        return PotentialShape(
            zeros=zeros,
            x_min=x_min,
            V_min=-beta**2 / (2.0 * a2),
            V_plus_inf=v_pinf,
            V_minus_inf=v_minf,
            zero_at_infinity=at_inf,
        )

    # original / first generalized
    zeros = _dedupe((0.0, 2.0 * beta / a2))
    if lam < 0.0:
        al = -lam
        if beta == 0.0:
            x_min = 0.0
        else:
            x_min = (a2 - math.sqrt(a2 * a2 - 4.0 * al * beta**2)) / (2.0 * al * beta)
        return PotentialShape(zeros=zeros, x_min=x_min, V_min=-0.5 * beta * x_min)
    v_inf = a2 / (2.0 * lam)
    if beta == 0.0:
        return PotentialShape(
            zeros=zeros, x_min=0.0, V_min=0.0, V_plus_inf=v_inf, V_minus_inf=v_inf
        )
    root = math.sqrt(a2 * a2 + 4.0 * lam * beta**2)
    x_min = (-a2 + root) / (2.0 * lam * beta)
    x_max = (-a2 - root) / (2.0 * lam * beta)
    return PotentialShape(
        zeros=zeros,
        x_min=x_min,
        V_min=-0.5 * beta * x_min,
        x_max=x_max,
        V_max=-0.5 * beta * x_max,
        V_plus_inf=v_inf,
        V_minus_inf=v_inf,
    )


def _dedupe(xs: tuple) -> tuple:
    out: list = []
    for x in xs:
        if not any(math.isclose(x, y, abs_tol=0.0) for y in out):
            out.append(x)
    return tuple(out)


class G1Row(Enum):
    """Energy bands of the first generalized oscillator."""

    BELOW_MIN = "E <= Vmin (no motion)"
    BOUNDED = "Vmin < E < V(+inf)"
    AT_ASYMPTOTE = "E = V(+inf)"
    BARRIER_BAND = "V(+inf) < E < Vmax"
    AT_BARRIER_TOP = "E = Vmax"
    OVER_BARRIER = "Vmax < E"
    NEG_LAMBDA_WELL = "lambda < 0: Vmin < E"


class G2Row(Enum):
    """Energy bands of the second generalized oscillator."""

    BELOW_MIN = "E <= Vmin (no motion)"
    BOUNDED = "Vmin < E < V(+inf)"
    AT_PLUS_ASYMPTOTE = "E = V(+inf)"
    BETWEEN_ASYMPTOTES = "V(+inf) < E < V(-inf)"
    AT_MINUS_ASYMPTOTE = "E = V(-inf)"
    ABOVE_ASYMPTOTES = "V(-inf) < E"
    NEG_LAMBDA_WELL = "lambda < 0: Vmin < E"


@dataclass(frozen=True)
class EnergyRegime:
    row: Enum
    C: float
    #: quadratic coefficient c = C*lambda (first oscillator only)
    c: float | None = None
    #: discriminant 4ac - b^2 of the quadrature (first oscillator only)
    Delta: float | None = None

    def to_dict(self) -> dict:
        return {
            "row": self.row.name,
            "description": self.row.value,
            "C": self.C,
            "c": self.c,
            "Delta": self.Delta,
        }


def energy_tolerance(E: float) -> float:
    """Absolute tolerance for comparing E against regime boundaries."""
    return 1e-12 * max(1.0, abs(E))


def classify_energy(params: ModelParams, E: float) -> EnergyRegime:
    """Map an energy to its regime row.

    Boundary hits within :func:`energy_tolerance` land on the equality rows;
    E at or below the potential minimum gives the below-minimum marker.
    """
    C = energy_to_C(params, E)
    sh = shape(params)
    eps = energy_tolerance(E)
    if params.kind is OscillatorKind.G2:
        if E <= sh.V_min + eps:
            return EnergyRegime(G2Row.BELOW_MIN, C)
        if params.lam < 0.0:
            return EnergyRegime(G2Row.NEG_LAMBDA_WELL, C)
        if abs(E - sh.V_plus_inf) <= eps:
            return EnergyRegime(G2Row.AT_PLUS_ASYMPTOTE, C)
        if E < sh.V_plus_inf:
            return EnergyRegime(G2Row.BOUNDED, C)
        if abs(E - sh.V_minus_inf) <= eps:
            return EnergyRegime(G2Row.AT_MINUS_ASYMPTOTE, C)
        if E < sh.V_minus_inf:
            return EnergyRegime(G2Row.BETWEEN_ASYMPTOTES, C)
        return EnergyRegime(G2Row.ABOVE_ASYMPTOTES, C)

    c = C * params.lam
    Delta = 4.0 * (2.0 * E) * c - 4.0 * params.beta**2
    if E <= sh.V_min + eps:
        return EnergyRegime(G1Row.BELOW_MIN, C, c, Delta)
    if params.lam < 0.0:
        return EnergyRegime(G1Row.NEG_LAMBDA_WELL, C, c, Delta)
    if abs(E - sh.V_plus_inf) <= eps:
        return EnergyRegime(G1Row.AT_ASYMPTOTE, C, c, Delta)
    if E < sh.V_plus_inf:
        return EnergyRegime(G1Row.BOUNDED, C, c, Delta)
    if sh.V_max is None:
        # beta = 0 degenerate case: no barrier, everything above the
        # asymptote is unbounded
        return EnergyRegime(G1Row.OVER_BARRIER, C, c, Delta)
    if abs(E - sh.V_max) <= eps:
        return EnergyRegime(G1Row.AT_BARRIER_TOP, C, c, Delta)
    if E < sh.V_max:
        return EnergyRegime(G1Row.BARRIER_BAND, C, c, Delta)
    return EnergyRegime(G1Row.OVER_BARRIER, C, c, Delta)
