"""Numerical oracle: direct integration of the equations of motion.

Independent of every closed-form or implicit solution path, so trajectories
produced here serve as the reference in cross-verification.  The stepping
kernel (Dormand-Prince 5(4) with dense output) lives in the backend module;
see ``_backend.BACKEND`` for which implementation is active.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._backend import kernel
from ._roots import bracketed_root
from .errors import DomainError, MassSingularityError, StepSizeUnderflowError
from .model import ModelParams, OscillatorKind, State, energy_from_state, energy_to_C
from .potential import G1Row, classify_energy, shape

_KIND_CODE = {
    OscillatorKind.ORIGINAL: 0,
    OscillatorKind.G1: 1,
    OscillatorKind.G2: 2,
}


def acceleration(params: ModelParams, s: State) -> float:
    """xddot from the equation of motion at the given state."""
    m = params.mass_factor(s.x)
    if m <= 1e-14:
        raise MassSingularityError(f"1 + lambda x^2 = {m} at x = {s.x}")
    if params.kind is OscillatorKind.G1:
        g = 1.0 - params.lam * s.x * s.x
    elif params.kind is OscillatorKind.G2:
        g = math.sqrt(m)
    else:
        g = 0.0
    return (params.lam * s.x * s.xdot**2 - params.alpha**2 * s.x + params.beta * g) / m


def p_squared(params: ModelParams, C: float, x) -> float:
    """Squared velocity along the energy shell with first-integral constant C."""
    x = np.asarray(x, dtype=float)
    m = 1.0 + params.lam * x * x
    if params.kind is OscillatorKind.G2:
        drive = 2.0 * params.beta * x * np.sqrt(np.maximum(m, 0.0))
    else:
        drive = 2.0 * params.beta * x
    out = C * m + params.alpha**2 / params.lam + drive
    return out[()] if out.ndim == 0 else out


@dataclass(frozen=True)
class Trajectory:
    samples: tuple
    E0: float
    max_energy_drift: float

    def arrays(self):
        t = np.array([s.t for s in self.samples])
        x = np.array([s.x for s in self.samples])
        xd = np.array([s.xdot for s in self.samples])
        return t, x, xd


def integrate(
    params: ModelParams,
    s0: State,
    t_end: float,
    rel_tol: float = 1e-10,
    abs_tol: float = 1e-12,
    t_eval=None,
) -> Trajectory:
    """Adaptive Runge-Kutta trajectory from s0 to t_end with dense output.

    ``t_eval`` (ascending, within [s0.t, t_end]) selects the sample times;
    default is 1000 uniform points.
    """
    for name, tol in (("rel_tol", rel_tol), ("abs_tol", abs_tol)):
        if not 1e-14 <= tol <= 1e-3:
            raise ValueError(f"{name} = {tol} outside [1e-14, 1e-3]")
    if not params.domain.contains(s0.x):
        raise DomainError(f"x0 = {s0.x} outside the position domain")
    if t_end <= s0.t:
        raise ValueError(f"t_end = {t_end} must exceed t0 = {s0.t}")
    if t_eval is None:
        t_eval = np.linspace(s0.t, t_end, 1000)
    else:
        t_eval = np.asarray(t_eval, dtype=float)
        if np.any(np.diff(t_eval) < 0.0):
            raise ValueError("t_eval must be ascending")

    x, xd, n_done, status = kernel.integrate(
        _KIND_CODE[params.kind],
        params.alpha,
        params.beta,
        params.lam,
        s0.x,
        s0.xdot,
        s0.t,
        t_end,
        rel_tol,
        abs_tol,
        t_eval,
    )
    if status == 2:
        raise MassSingularityError(
            f"mass factor vanished after {n_done}/{len(t_eval)} samples"
        )
    if status == 1:
        raise StepSizeUnderflowError(
            f"step size underflow after {n_done}/{len(t_eval)} samples "
            "(approach to a domain wall?)"
        )

    E0 = energy_from_state(params, s0)
    samples = []
    drift = 0.0
    for ti, xi, xdi in zip(t_eval, x, xd):
        st = State(float(ti), float(xi), float(xdi))
        drift = max(drift, abs(energy_from_state(params, st) - E0) / max(1.0, abs(E0)))
        samples.append(st)
    return Trajectory(tuple(samples), E0, drift)


def turning_points(params: ModelParams, E: float) -> list:
    """Real zeros of p^2 inside the position domain, sorted ascending."""
    regime = classify_energy(params, E)
    C = regime.C
    if params.kind is OscillatorKind.G2:
        return _turning_points_g2(params, C)

    # quadratic a + b x + c x^2
    a, b, c = 2.0 * E, 2.0 * params.beta, params.lam * C
    alpha2 = params.alpha**2
    if regime.row is G1Row.AT_ASYMPTOTE or abs(c) <= 1e-14 * alpha2:
        return [-a / b] if b != 0.0 else []
    tangency = 1e-12 * (alpha2**2 + 4.0 * abs(params.lam) * params.beta**2)
    if regime.row is G1Row.AT_BARRIER_TOP or abs(regime.Delta) <= tangency:
        return [-b / (2.0 * c)]
    disc = b * b - 4.0 * a * c
    if disc < 0.0:
        return []
    sq = math.sqrt(disc)
    q = -0.5 * (b + math.copysign(sq, b)) if b != 0.0 else None
    if q is None or q == 0.0:
        roots = [(-b + sq) / (2.0 * c), (-b - sq) / (2.0 * c)]
    else:
        roots = [q / c, a / q]
    dom = params.domain
    return sorted(r for r in roots if dom.contains(r))


def _u_quadratic_roots(params: ModelParams, C: float):
    """Roots of p^2 = 0 in the compactified variable u.

    u = sqrt(|lambda|) x / sqrt(1 + lambda x^2); p^2 factors as a quadratic
    in u times the (positive) mass factor.
    """
    alpha2 = params.alpha**2
    al = abs(params.lam)
    qa = -alpha2 / al
    qb = 2.0 * params.beta / math.sqrt(al)
    qc = C + alpha2 / params.lam
    disc = qb * qb - 4.0 * qa * qc
    if disc < 0.0:
        return []
    sq = math.sqrt(disc)
    return sorted(((-qb + sq) / (2.0 * qa), (-qb - sq) / (2.0 * qa)))


def _u_to_x(params: ModelParams, u: float) -> float:
    al = abs(params.lam)
    if params.lam > 0.0:
        return u / math.sqrt(al * (1.0 - u * u))
    return u / math.sqrt(al * (1.0 + u * u))


def _turning_points_g2(params: ModelParams, C: float) -> list:
    roots = []
    for u in _u_quadratic_roots(params, C):
        if params.lam > 0.0 and abs(u) >= 1.0 - 1e-12:
            continue  # root at or beyond spatial infinity
        roots.append(_u_to_x(params, u))
    # polish on p^2 itself when a sign-changing bracket exists
    f = lambda x: float(p_squared(params, C, x))
    polished = []
    for x_hat in sorted(roots):
        scale = max(1.0, abs(x_hat))
        found = None
        delta = 1e-9 * scale
        while delta <= 1e-3 * scale:
            lo, hi = x_hat - delta, x_hat + delta
            if params.lam < 0.0:
                wall = (1.0 - 1e-12) / math.sqrt(-params.lam)
                lo, hi = max(lo, -wall), min(hi, wall)
            flo, fhi = f(lo), f(hi)
            if (flo > 0.0) != (fhi > 0.0):
                found = bracketed_root(f, lo, hi, flo, fhi)
                break
            delta *= 32.0
        polished.append(x_hat if found is None else found)
    return polished


def half_orbit_interval(params: ModelParams, E: float):
    """Reachable interval [x_lo, x_hi] at energy E (infinite ends allowed)."""
    tps = turning_points(params, E)
    C = energy_to_C(params, E)
    dom = params.domain
    if params.lam < 0.0:
        if len(tps) == 2:
            return tps[0], tps[1]
        return dom.lower, dom.upper
    if not tps:
        return -math.inf, math.inf
    if len(tps) == 1:
        x = tps[0]
        probe = x + max(1.0, abs(x))
        if float(p_squared(params, C, probe)) >= 0.0:
            return x, math.inf
        return -math.inf, x
    mid = 0.5 * (tps[0] + tps[1])
    if float(p_squared(params, C, mid)) >= 0.0:
        return tps[0], tps[1]
    # two disconnected outward orbits around a barrier
    return tps  # caller must pick a side


def below_minimum(params: ModelParams, E: float) -> bool:
    sh = shape(params)
    return E <= sh.V_min + 1e-12 * max(1.0, abs(E))
