"""Closed-form trajectory families of the first generalized oscillator.

Seven families cover the energy regimes: a sine family for each sign of
lambda (bounded motion), a quadratic and two exponential branches for the
limiting energies, hyperbolic-cosine branches for the band between the
asymptote and the barrier top, and a hyperbolic sine above the barrier.
Every family obeys ``omega^2 = |lambda C|`` with C the first-integral
constant of the energy.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import (
    BranchMismatchError,
    InconsistentAmplitudeError,
    UnreachableError,
)
from .model import ModelParams, OscillatorKind, energy_to_C
from .potential import G1Row, classify_energy

_TWO_PI = 2.0 * math.pi


class Family(Enum):
    SIN = "sin"
    QUADRATIC = "quadratic"
    COSH_RIGHT = "cosh_right"
    COSH_LEFT = "cosh_left"
    EXP_RIGHT = "exp_right"
    EXP_LEFT = "exp_left"
    SINH = "sinh"


@dataclass(frozen=True)
class ClosedFormSolution:
    family: Family
    A: float
    B: float
    phi: float
    omega: float | None
    x_range: tuple
    params: ModelParams
    energy: float

    def to_json(self) -> str:
        return json.dumps(
            {
                "family": self.family.value,
                "A": self.A,
                "B": self.B,
                "phi": self.phi,
                "omega": self.omega,
                "x_range": [self.x_range[0], self.x_range[1]],
            }
        )


def _p_squared(params: ModelParams, C: float, x: float) -> float:
    # first integral of the G1 equation of motion (quadratic in x)
    return C * (1.0 + params.lam * x * x) + params.alpha**2 / params.lam + 2.0 * params.beta * x


def _check_reachable(params: ModelParams, C: float, x0: float) -> None:
    p2 = _p_squared(params, C, x0)
    scale = max(abs(C), params.alpha**2 / abs(params.lam), 1.0)
    if p2 < -1e-12 * scale:
        raise UnreachableError(f"x0 = {x0} is classically forbidden (p^2 = {p2})")


def from_energy(
    params: ModelParams,
    E: float,
    x0: float,
    t0: float = 0.0,
    branch: str = "either",
    direction: int = 1,
) -> ClosedFormSolution:
    """Build the unique solution family for energy E passing through x0 at t0.

    ``direction`` (+1/-1) picks the sign of xdot(t0); ``branch`` selects the
    side of the barrier ("left"/"right"/"either") where two disconnected
    orbits exist at the same energy.
    """
    if params.kind is OscillatorKind.G2:
        raise ValueError("closed-form families exist only for the first oscillator")
    if branch not in ("left", "right", "either"):
        raise ValueError(f"unknown branch {branch!r}")
    if direction not in (1, -1):
        raise ValueError("direction must be +1 or -1")
    regime = classify_energy(params, E)
    if regime.row is G1Row.BELOW_MIN:
        raise UnreachableError(f"E = {E} at or below the potential minimum")
    C = regime.C
    _check_reachable(params, C, x0)
    alpha, beta, lam = params.alpha, params.beta, params.lam
    a2 = alpha * alpha

    if regime.row in (G1Row.BOUNDED, G1Row.NEG_LAMBDA_WELL):
        w2 = abs(lam * C)
        B = beta / w2
        rad = (-w2 * w2 + a2 * w2 + lam * beta**2) / lam  # same formula both signs
        A = math.sqrt(max(rad, 0.0)) / w2
        s = _clip_unit((x0 - B) / A)
        theta = math.asin(s) if direction > 0 else math.pi - math.asin(s)
        omega = math.sqrt(w2)
        phi = (theta - omega * t0) % _TWO_PI
        return ClosedFormSolution(
            Family.SIN, A, B, phi, omega, (B - A, B + A), params, E
        )

    if regime.row is G1Row.AT_ASYMPTOTE:
        if beta == 0.0:
            raise ValueError(
                "E = V(+inf) with beta = 0 is the degenerate linear motion; "
                "no quadratic family exists"
            )
        A = math.sqrt(0.5 * beta)
        B = -a2 / (2.0 * lam * beta)
        if x0 < B - 1e-12 * max(1.0, abs(B)):
            raise UnreachableError(f"x0 = {x0} below the parabola vertex {B}")
        r = math.sqrt(max(x0 - B, 0.0))
        phi = direction * r - A * t0
        return ClosedFormSolution(
            Family.QUADRATIC, A, B, phi, None, (B, math.inf), params, E
        )

    w2 = lam * C
    omega = math.sqrt(w2)
    B = -beta / w2

    if regime.row is G1Row.BARRIER_BAND:
        rad = (-w2 * w2 - a2 * w2 + lam * beta**2) / lam
        Aabs = math.sqrt(max(rad, 0.0)) / w2
        side = _pick_side(branch, x0, B)
        A = Aabs if side == "right" else -Aabs
        edge = A + B
        if side == "right" and x0 < edge - 1e-12 * max(1.0, abs(edge)):
            raise BranchMismatchError(f"x0 = {x0} left of the right cosh branch ({edge})")
        if side == "left" and x0 > edge + 1e-12 * max(1.0, abs(edge)):
            raise BranchMismatchError(f"x0 = {x0} right of the left cosh branch ({edge})")
        ch = max((x0 - B) / A, 1.0)
        theta = math.acosh(ch)
        # xdot = A*omega*sinh(theta): match the requested direction
        if (direction > 0) != (A > 0):
            theta = -theta
        phi = theta - omega * t0
        rng = (edge, math.inf) if side == "right" else (-math.inf, edge)
        fam = Family.COSH_RIGHT if side == "right" else Family.COSH_LEFT
        return ClosedFormSolution(fam, A, B, phi, omega, rng, params, E)

    if regime.row is G1Row.AT_BARRIER_TOP:
        side = _pick_side(branch, x0, B)
        if abs(x0 - B) <= 1e-12 * max(1.0, abs(B)):
            raise UnreachableError(f"x0 = {x0} rests on the barrier top {B}")
        if side == "right" and x0 < B:
            raise BranchMismatchError(f"x0 = {x0} left of the barrier top {B}")
        if side == "left" and x0 > B:
            raise BranchMismatchError(f"x0 = {x0} right of the barrier top {B}")
        wanted = 1 if side == "right" else -1
        if direction != wanted:
            raise BranchMismatchError(
                "barrier-top orbits with omega > 0 move away from the top; "
                "time-reverse the trajectory for the approaching motion"
            )
        A = (x0 - B) * math.exp(-omega * t0)
        rng = (B, math.inf) if side == "right" else (-math.inf, B)
        fam = Family.EXP_RIGHT if side == "right" else Family.EXP_LEFT
        return ClosedFormSolution(fam, A, B, 0.0, omega, rng, params, E)

    # over the barrier: hyperbolic sine across the whole line
    rad = (w2 * w2 + a2 * w2 - lam * beta**2) / lam
    Aabs = math.sqrt(max(rad, 0.0)) / w2
    A = Aabs if direction > 0 else -Aabs
    theta = math.asinh((x0 - B) / A)
    phi = theta - omega * t0
    return ClosedFormSolution(
        Family.SINH, A, B, phi, omega, (-math.inf, math.inf), params, E
    )


def _pick_side(branch: str, x0: float, ref: float) -> str:
    if branch != "either":
        return branch
    return "right" if x0 >= ref else "left"


def _clip_unit(s: float) -> float:
    if abs(s) > 1.0 + 1e-9:
        raise UnreachableError(f"phase argument {s} outside [-1, 1]")
    return min(1.0, max(-1.0, s))


def evaluate(sol: ClosedFormSolution, t):
    """Position and velocity at time t (scalar or array)."""
    t = np.asarray(t, dtype=float)
    A, B, phi, w = sol.A, sol.B, sol.phi, sol.omega
    if sol.family is Family.SIN:
        x = A * np.sin(w * t + phi) + B
        xd = A * w * np.cos(w * t + phi)
    elif sol.family is Family.QUADRATIC:
        x = (A * t + phi) ** 2 + B
        xd = 2.0 * A * (A * t + phi)
    elif sol.family in (Family.COSH_RIGHT, Family.COSH_LEFT):
        x = A * np.cosh(w * t + phi) + B
        xd = A * w * np.sinh(w * t + phi)
    elif sol.family in (Family.EXP_RIGHT, Family.EXP_LEFT):
        e = np.exp(w * t)
        x = A * e + B
        xd = A * w * e
    else:
        x = A * np.sinh(w * t + phi) + B
        xd = A * w * np.cosh(w * t + phi)
    return (x[()], xd[()]) if x.ndim == 0 else (x, xd)


def omega_of_amplitude(params: ModelParams, family: Family, A: float, B: float) -> float:
    """Frequency-like constant from the (A, B) pair of a family.

    Uses the closed forms in A; raises :class:`InconsistentAmplitudeError`
    when the radicand is negative or the pair sits on the undecidable
    boundary of the hyperbolic-sine case split.
    """
    alpha, beta, lam = params.alpha, params.beta, params.lam
    a2 = alpha * alpha

    if family is Family.SIN:
        if lam > 0.0:
            denom = 1.0 + lam * A * A
            rad = a2 * a2 + 4.0 * lam * beta**2 * denom
            w2 = (a2 + _sqrt_checked(rad, a2 * a2)) / (2.0 * denom)
        else:
            al = -lam
            denom = 1.0 - al * A * A
            rad = a2 * a2 - 4.0 * al * beta**2 * denom
            w2 = (a2 + _sqrt_checked(rad, a2 * a2)) / (2.0 * denom)
    elif family is Family.QUADRATIC:
        raise InconsistentAmplitudeError("the quadratic family has no frequency")
    elif family in (Family.COSH_RIGHT, Family.COSH_LEFT):
        denom = 1.0 + lam * A * A
        rad = a2 * a2 + 4.0 * lam * beta**2 * denom
        w2 = (-a2 + _sqrt_checked(rad, a2 * a2)) / (2.0 * denom)
    elif family in (Family.EXP_RIGHT, Family.EXP_LEFT):
        rad = a2 * a2 + 4.0 * lam * beta**2
        w2 = 0.5 * (-a2 + _sqrt_checked(rad))
    elif family is Family.SINH:
        denom = 1.0 - lam * A * A
        gap = lam * B * B - (lam * A * A - 1.0)
        if gap == 0.0:
            raise InconsistentAmplitudeError(
                "lambda B^2 = lambda A^2 - 1: case split undefined"
            )
        if abs(denom) < 1e-14 * max(1.0, abs(lam) * A * A):
            # the quadratic for omega^2 degenerates to a linear equation
            w2 = lam * beta**2 / a2
        else:
            rad = a2 * a2 + 4.0 * lam * beta**2 * denom
            root = _sqrt_checked(rad, a2 * a2)
            w2 = (-a2 + root) / (2.0 * denom) if gap > 0.0 else (-a2 - root) / (2.0 * denom)
    else:
        raise ValueError(f"unknown family {family!r}")

    if w2 <= 0.0:
        raise InconsistentAmplitudeError(f"(A, B) give omega^2 = {w2} <= 0")
    return math.sqrt(w2)


def _sqrt_checked(rad: float, scale: float = 1.0) -> float:
    if rad < -1e-12 * max(1.0, scale):
        raise InconsistentAmplitudeError(f"negative radicand {rad} in omega formula")
    return math.sqrt(max(rad, 0.0))


def residual(sol: ClosedFormSolution, t) -> float:
    """Equation-of-motion residual of the solution at time(s) t."""
    params = sol.params
    x, xd = evaluate(sol, t)
    x = np.asarray(x)
    xd = np.asarray(xd)
    lam, a2, beta = params.lam, params.alpha**2, params.beta
    if sol.family is Family.SIN:
        xdd = -sol.omega**2 * (x - sol.B)
    elif sol.family is Family.QUADRATIC:
        xdd = 2.0 * sol.A**2 * np.ones_like(x)
    else:
        xdd = sol.omega**2 * (x - sol.B)
    res = (1.0 + lam * x * x) * xdd - lam * x * xd * xd + a2 * x - beta * (1.0 - lam * x * x)
    return res[()] if res.ndim == 0 else res
