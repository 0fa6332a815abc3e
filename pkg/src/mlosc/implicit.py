"""Implicit solutions t = t(x) of the second generalized oscillator.

For lambda > 0 the quadrature splits into two elementary integrals I_1 and
I_2 whose functional form (arcsine, algebraic, or logarithmic) depends on
the sign of E - V(+inf) and E - V(-inf); for lambda < 0 a Moebius change of
variable reduces everything to an arctan plus an inverse-hyperbolic term.
The inverse x(t) has no closed form and is recovered by bracketed root
finding on the monotone half-orbit, extended to all times by reflecting at
the turning points.

Each antiderivative is smooth strictly between turning points (the arcsine
argument reaches +-1 exactly at the turning points and nowhere else), but
for lambda < 0 the Moebius variable passes through infinity at one interior
position; the evaluator is therefore assembled piecewise, with the overall
sign of each piece fixed by a derivative probe against 1/sqrt(p^2) and the
joining constants fixed by the analytic limits at the pole.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

from . import quadrature
from ._roots import bracketed_root
from .dynamics import p_squared, turning_points
from .errors import (
    BranchMismatchError,
    ConvergenceError,
    UnreachableError,
)
from .model import ModelParams, OscillatorKind, energy_to_C
from .potential import G2Row, classify_energy, shape

_CASE_BY_ROW = {
    G2Row.BOUNDED: (11, 21),
    G2Row.AT_PLUS_ASYMPTOTE: (12, 21),
    G2Row.BETWEEN_ASYMPTOTES: (13, 21),
    G2Row.AT_MINUS_ASYMPTOTE: (13, 22),
    G2Row.ABOVE_ASYMPTOTES: (13, 23),
}


def _require_g2(params: ModelParams) -> None:
    if params.kind is not OscillatorKind.G2:
        raise ValueError("implicit solutions apply to the second oscillator only")


def _reach_interval(params: ModelParams, E: float):
    tps = turning_points(params, E)
    if params.lam < 0.0:
        if len(tps) != 2:
            raise UnreachableError(f"E = {E} admits no oscillation")
        return tps[0], tps[1]
    if not tps:
        return -math.inf, math.inf
    if len(tps) == 1:
        x = tps[0]
        C = energy_to_C(params, E)
        if float(p_squared(params, C, x + max(1.0, abs(x)))) >= 0.0:
            return x, math.inf
        return -math.inf, x
    return tps[0], tps[1]


def _check_on_branch(branch, x: float) -> None:
    tol = 1e-9 * max(1.0, abs(x))
    if x < branch.x_lo - tol or x > branch.x_hi + tol:
        raise BranchMismatchError(
            f"x = {x} beyond the turning points [{branch.x_lo}, {branch.x_hi}]"
        )
    p2 = float(p_squared(branch.params, branch.C, x))
    scale = max(1.0, abs(branch.C))
    if p2 < -1e-10 * scale:
        raise UnreachableError(f"x = {x} is classically forbidden (p^2 = {p2})")


# ---------------------------------------------------------------------------
# lambda > 0
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ImplicitBranchPos:
    params: ModelParams
    E: float
    C: float
    row: G2Row
    case: tuple
    #: a = 2 lambda [E - V(+inf)], a' = 2 lambda [E - V(-inf)]
    a: float
    a_prime: float
    x_lo: float
    x_hi: float
    sign: float
    K: float
    t_ref: float
    x_ref: float

    def to_json(self) -> str:
        return json.dumps(
            {
                "lambda_sign": "positive",
                "row": self.row.name,
                "case": f"I_{self.case[0]} + I_{self.case[1]}",
                "E": self.E,
                "C": self.C,
                "a": self.a,
                "a_prime": self.a_prime,
                "K": self.K,
                "x_ref": self.x_ref,
                "t_ref": self.t_ref,
            }
        )


def _sqrt_lam_x_plus_s(lam: float, x: float) -> float:
    # sqrt(lam) x + sqrt(1 + lam x^2), cancellation-free for x < 0
    s = math.sqrt(1.0 + lam * x * x)
    r = math.sqrt(lam) * x
    if x >= 0.0:
        return r + s
    return 1.0 / (s - r)


def _snap_asin(arg: float, snap: bool) -> float:
    # at a turning point the argument is exactly +-1; the numerically
    # polished endpoint leaves an O(eps) defect that asin turns into
    # O(sqrt(eps)), so round it away when evaluating at an endpoint
    if snap and abs(arg) > 1.0 - 1e-5:
        return math.copysign(1.0, arg)
    return _clip(arg)


def _snap_rad(rad: float, scale: float, snap: bool) -> float:
    if snap and rad < 1e-5 * scale:
        return 0.0
    return max(rad, 0.0)


def _raw_pos(params: ModelParams, E: float, C: float, case: tuple, x: float,
             snap: bool = False) -> float:
    alpha, beta, lam = params.alpha, params.beta, params.lam
    a2 = alpha * alpha
    rl = math.sqrt(lam)
    sh = shape(params)
    vp, vm, vmin = sh.V_plus_inf, sh.V_minus_inf, sh.V_min
    s = math.sqrt(1.0 + lam * x * x)
    r = _sqrt_lam_x_plus_s(lam, x)
    rb = 1.0 / r  # -sqrt(lam) x + sqrt(1 + lam x^2)
    p2 = 0.0 if snap else max(float(p_squared(params, C, x)), 0.0)
    denom_min = alpha * math.sqrt(2.0 * lam * (E - vmin))
    rad_scale = a2 + 2.0 * beta * rl * (1.0 + lam * x * x) + 2.0 * beta * lam * abs(x) * s

    i1, i2 = case
    if i1 == 11:
        # the arcsine antiderivative carries a sign(v) from |v|; the Moebius
        # variable v = u - 1 is negative everywhere, so the term enters with
        # an overall minus relative to the printed form
        d = vp - E
        arg = (-2.0 * lam * d * s * r + a2 - beta * rl) / denom_min
        val1 = -math.asin(_snap_asin(arg, snap)) / (2.0 * math.sqrt(2.0 * lam * d))
    elif i1 == 12:
        rad = a2 - 2.0 * beta * rl + 2.0 * beta * lam * x * s - 2.0 * beta * lam * rl * x * x
        val1 = r * math.sqrt(_snap_rad(rad, rad_scale, snap)) / (2.0 * (a2 - beta * rl))
    else:
        d = E - vp
        arg = (
            -4.0 * lam * d * s * r
            - 2.0 * (a2 - beta * rl)
            - 2.0 * math.sqrt(2.0) * lam * math.sqrt(d) * r * math.sqrt(p2)
        )
        val1 = _log_abs(arg) / (2.0 * math.sqrt(2.0 * lam * d))

    if i2 == 21:
        d = vm - E
        arg = (-2.0 * lam * d * s * rb + a2 + beta * rl) / denom_min
        val2 = math.asin(_snap_asin(arg, snap)) / (2.0 * math.sqrt(2.0 * lam * d))
    elif i2 == 22:
        rad = a2 + 2.0 * beta * rl + 2.0 * beta * lam * x * s + 2.0 * beta * lam * rl * x * x
        val2 = -rb * math.sqrt(_snap_rad(rad, rad_scale, snap)) / (2.0 * (a2 + beta * rl))
    else:
        d = E - vm
        arg = (
            4.0 * lam * d * s * rb
            + 2.0 * (a2 + beta * rl)
            + 2.0 * math.sqrt(2.0) * lam * math.sqrt(d) * rb * math.sqrt(p2)
        )
        val2 = -_log_abs(arg) / (2.0 * math.sqrt(2.0 * lam * d))

    return val1 + val2


def _clip(arg: float) -> float:
    if abs(arg) > 1.0 + 1e-6:
        raise UnreachableError(f"arcsine argument {arg} outside [-1, 1]")
    return min(1.0, max(-1.0, arg))


def _log_abs(arg: float) -> float:
    mag = abs(arg)
    if mag < 1e-300:
        raise UnreachableError("logarithm argument underflow near a turning point")
    return math.log(mag)


def branch_pos(
    params: ModelParams, E: float, t_ref: float = 0.0, x_ref: float | None = None
) -> ImplicitBranchPos:
    """Implicit-solution branch for lambda > 0, anchored at (t_ref, x_ref).

    Time increases with x along the half-orbit; x_ref defaults to the lower
    turning point (or 0 when the motion reaches both infinities).
    """
    _require_g2(params)
    if params.lam <= 0.0:
        raise ValueError("branch_pos requires lambda > 0")
    regime = classify_energy(params, E)
    if regime.row is G2Row.BELOW_MIN:
        raise UnreachableError(f"E = {E} at or below the potential minimum")
    case = _CASE_BY_ROW[regime.row]
    sh = shape(params)
    a = 2.0 * params.lam * (E - sh.V_plus_inf)
    a_prime = 2.0 * params.lam * (E - sh.V_minus_inf)
    x_lo, x_hi = _reach_interval(params, E)
    if x_ref is None:
        x_ref = x_lo if math.isfinite(x_lo) else 0.0

    raw = lambda x: _raw_pos(params, E, regime.C, case, x)
    sign = _probe_sign(params, regime.C, raw, x_lo, x_hi)
    ref_is_endpoint = x_ref == x_lo or x_ref == x_hi
    K = t_ref - sign * _raw_pos(params, E, regime.C, case, x_ref, ref_is_endpoint)
    return ImplicitBranchPos(
        params, E, regime.C, regime.row, case, a, a_prime,
        x_lo, x_hi, sign, K, t_ref, x_ref,
    )


def _probe_sign(params: ModelParams, C: float, raw, x_lo: float, x_hi: float) -> float:
    # orient the antiderivative so that t grows with x
    if math.isfinite(x_lo) and math.isfinite(x_hi):
        xm = 0.5 * (x_lo + x_hi)
        h = 1e-6 * max(1.0, x_hi - x_lo)
    elif math.isfinite(x_lo):
        xm = x_lo + 0.5 * max(1.0, abs(x_lo))
        h = 1e-6 * max(1.0, abs(xm))
    elif math.isfinite(x_hi):
        xm = x_hi - 0.5 * max(1.0, abs(x_hi))
        h = 1e-6 * max(1.0, abs(xm))
    else:
        xm, h = 0.0, 1e-6
    diff = raw(xm + h) - raw(xm - h)
    if diff == 0.0:
        raise ConvergenceError("flat antiderivative; cannot orient the branch")
    return 1.0 if diff > 0.0 else -1.0


def t_of_x_pos(branch: ImplicitBranchPos, x: float) -> float:
    """Closed-form time at position x along the ascending half-orbit."""
    _check_on_branch(branch, x)
    x = min(max(x, branch.x_lo), branch.x_hi)
    snap = math.isfinite(x) and (x == branch.x_lo or x == branch.x_hi)
    return branch.sign * _raw_pos(
        branch.params, branch.E, branch.C, branch.case, x, snap
    ) + branch.K


# ---------------------------------------------------------------------------
# lambda < 0
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ImplicitBranchNeg:
    params: ModelParams
    E: float
    C: float
    L: float
    p: float
    q: float
    p_plus_q: float
    x_lo: float
    x_hi: float
    #: interior position where the Moebius variable passes through infinity
    x_pole: float | None
    #: (sign, offset) per monotone piece of the assembled antiderivative
    pieces: tuple
    t_ref: float
    x_ref: float
    quadrature_fallback: bool = False

    def to_json(self) -> str:
        return json.dumps(
            {
                "lambda_sign": "negative",
                "E": self.E,
                "C": self.C,
                "L": self.L,
                "p": self.p,
                "q": self.q,
                "p_plus_q": self.p_plus_q,
                "quadrature_fallback": self.quadrature_fallback,
                "x_ref": self.x_ref,
                "t_ref": self.t_ref,
            }
        )


def _neg_constants(params: ModelParams, C: float):
    alpha2 = params.alpha**2
    beta = params.beta
    al = -params.lam
    if beta == 0.0:
        return None
    ral = math.sqrt(al)
    S = math.sqrt(al * C * C + 4.0 * beta**2)
    rho = ral * (alpha2 * C + 2.0 * beta**2) - alpha2 * S
    if rho <= 0.0:
        return None
    L = (
        2.0 * math.sqrt(2.0) * beta**2
        / (S**0.5 * (S - ral * C) * math.sqrt(rho))
    )
    p = (al * C * C + 2.0 * beta**2 + ral * C * S) / (2.0 * beta**2)
    q = (ral * (alpha2 * C + 2.0 * beta**2) + alpha2 * S) / rho
    p_plus_q = (
        S
        / (2.0 * beta**2 * (al * alpha2 * C + al * beta**2 - alpha2**2))
        * (al * (alpha2 * C + beta**2) * (ral * C + S) + 2.0 * ral * alpha2 * beta**2)
    )
    if p <= 0.0 or q <= 0.0 or p_plus_q <= 0.0:
        return None
    if abs(p_plus_q - (p + q)) > 1e-8 * (p + q):
        return None
    return S, L, p, q, p_plus_q


def _v_of_x(params: ModelParams, C: float, S: float, x: float) -> float:
    al = -params.lam
    ral = math.sqrt(al)
    u = ral * x / math.sqrt(1.0 - al * x * x)
    den = 2.0 * params.beta * u + ral * C - S
    num = 2.0 * params.beta * u + ral * C + S
    if den == 0.0:
        return math.inf
    return -num / den


def _raw_neg(params: ModelParams, C: float, S: float, L: float,
             p: float, q: float, x: float) -> float:
    v = _v_of_x(params, C, S, x)
    p_plus_q = p + q
    if math.isinf(v):
        return _pole_limit(L, p, q, 1.0)
    v2q = v * v - q
    if v2q <= 0.0:
        # at (or rounding-below) a turning point both terms vanish
        return 0.0
    w = math.sqrt(v2q / p_plus_q)
    inv_z = math.sqrt(p / p_plus_q) * math.sqrt(v2q) / v
    term1 = L / math.sqrt(p_plus_q) * math.atan(w)
    term2 = L / math.sqrt(p * p_plus_q) * math.atanh(inv_z)
    return term1 + term2


def _pole_limit(L: float, p: float, q: float, v_sign: float) -> float:
    # limits of the antiderivative as |v| -> inf from either side
    p_plus_q = p + q
    term1 = L / math.sqrt(p_plus_q) * (0.5 * math.pi)
    term2 = L / math.sqrt(p * p_plus_q) * math.atanh(math.sqrt(p / p_plus_q))
    return term1 + v_sign * term2


def branch_neg(
    params: ModelParams, E: float, t_ref: float = 0.0, x_ref: float | None = None
) -> ImplicitBranchNeg:
    """Implicit-solution branch for lambda < 0, anchored at (t_ref, x_ref).

    Falls back to direct quadrature of dt = dx/sqrt(p^2) when the constants
    of the closed form cannot be validated (notably beta = 0).
    """
    _require_g2(params)
    if params.lam >= 0.0:
        raise ValueError("branch_neg requires lambda < 0")
    regime = classify_energy(params, E)
    if regime.row is G2Row.BELOW_MIN:
        raise UnreachableError(f"E = {E} at or below the potential minimum")
    C = regime.C
    x_lo, x_hi = _reach_interval(params, E)
    if x_ref is None:
        x_ref = x_lo

    consts = _neg_constants(params, C)
    if consts is None:
        base = quadrature.time_of_flight(params, E, x_lo, x_ref)
        return ImplicitBranchNeg(
            params, E, C, math.nan, math.nan, math.nan, math.nan,
            x_lo, x_hi, None, ((1.0, t_ref - base),), t_ref, x_ref,
            quadrature_fallback=True,
        )

    S, L, p, q, p_plus_q = consts
    al = -params.lam
    ral = math.sqrt(al)
    u_pole = (S - ral * C) / (2.0 * params.beta)
    x_pole = u_pole / math.sqrt(al * (1.0 + u_pole * u_pole))
    raw = lambda x: _raw_neg(params, C, S, L, p, q, x)

    eps = 1e-9 * (x_hi - x_lo)
    if x_lo + eps < x_pole < x_hi - eps:
        # two monotone pieces joined by the analytic limits at the pole
        s1 = _probe_sign(params, C, raw, x_lo, x_pole)
        s2 = _probe_sign(params, C, raw, x_pole, x_hi)
        # the antiderivative vanishes in the limit at both turning points,
        # so the provisional origin t(x_lo) = 0 needs no evaluation there
        t_pole = s1 * _pole_limit(L, p, q, 1.0)
        k2 = t_pole - s2 * _pole_limit(L, p, q, -1.0)
        pieces = ((s1, 0.0), (s2, k2))
        pole: float | None = x_pole
    else:
        s1 = _probe_sign(params, C, raw, x_lo, x_hi)
        pieces = ((s1, 0.0),)
        pole = None

    branch = ImplicitBranchNeg(
        params, E, C, L, p, q, p_plus_q, x_lo, x_hi, pole, pieces, t_ref, x_ref
    )
    # shift the provisional origin so that t(x_ref) = t_ref
    shift = t_ref - _eval_neg(branch, x_ref)
    pieces = tuple((s, k + shift) for s, k in branch.pieces)
    return ImplicitBranchNeg(
        params, E, C, L, p, q, p_plus_q, x_lo, x_hi, pole, pieces, t_ref, x_ref
    )


def _eval_neg(branch: ImplicitBranchNeg, x: float) -> float:
    if branch.quadrature_fallback:
        sign, k = branch.pieces[0]
        if x <= branch.x_lo:
            return k
        if x >= branch.x_hi:
            # exact angular range, avoiding the polished-endpoint defect
            return sign * quadrature.half_period(branch.params, branch.E) + k
        return sign * quadrature.time_of_flight(
            branch.params, branch.E, branch.x_lo, x
        ) + k
    # at the turning points the antiderivative vanishes in the limit; skip
    # the O(sqrt(eps)) evaluation at the numerically polished endpoint
    if x <= branch.x_lo:
        return branch.pieces[0][1]
    if x >= branch.x_hi:
        return branch.pieces[-1][1]
    al = -branch.params.lam
    S = math.sqrt(al * branch.C**2 + 4.0 * branch.params.beta**2)
    raw = _raw_neg(branch.params, branch.C, S, branch.L, branch.p, branch.q, x)
    if branch.x_pole is not None and x > branch.x_pole:
        sign, k = branch.pieces[1]
    else:
        sign, k = branch.pieces[0]
    return sign * raw + k


def t_of_x_neg(branch: ImplicitBranchNeg, x: float) -> float:
    """Closed-form (or fallback-quadrature) time at x along the ascending half-orbit."""
    _check_on_branch(branch, x)
    x = min(max(x, branch.x_lo), branch.x_hi)
    return _eval_neg(branch, x)


# ---------------------------------------------------------------------------
# numerical inversion x(t), shared by both branch types
# ---------------------------------------------------------------------------


def _t_of_x(branch, x: float) -> float:
    if isinstance(branch, ImplicitBranchPos):
        return t_of_x_pos(branch, x)
    return t_of_x_neg(branch, x)


def half_period(branch) -> float:
    """Time from the lower to the upper turning point (bounded motion only)."""
    if not (math.isfinite(branch.x_lo) and math.isfinite(branch.x_hi)):
        raise ValueError("half period undefined for unbounded motion")
    return _t_of_x(branch, branch.x_hi) - _t_of_x(branch, branch.x_lo)


def x_of_t(branch, t: float):
    """Invert the implicit solution: position and velocity at time t.

    Bounded orbits are extended to all t by reflection at the turning
    points; unbounded ones by the mirror symmetry about the reflection
    time at their single turning point (if any).
    """
    params, C = branch.params, branch.C
    bounded = math.isfinite(branch.x_lo) and math.isfinite(branch.x_hi)
    if bounded:
        t_lo = _t_of_x(branch, branch.x_lo)
        th = half_period(branch)
        tau = (t - t_lo) % (2.0 * th)
        if tau <= th:
            target, direction = t_lo + tau, 1.0
        else:
            target, direction = t_lo + 2.0 * th - tau, -1.0
        x = _invert_monotone(branch, target, branch.x_lo, branch.x_hi)
    elif math.isfinite(branch.x_lo):
        t_lo = _t_of_x(branch, branch.x_lo)
        if t >= t_lo:
            target, direction = t, 1.0
        else:
            target, direction = 2.0 * t_lo - t, -1.0
        hi = _expand_up(branch, target)
        x = _invert_monotone(branch, target, branch.x_lo, hi)
    elif math.isfinite(branch.x_hi):
        t_hi = _t_of_x(branch, branch.x_hi)
        if t <= t_hi:
            target, direction = t, 1.0
        else:
            target, direction = 2.0 * t_hi - t, -1.0
        lo = _expand_down(branch, target)
        x = _invert_monotone(branch, target, lo, branch.x_hi)
    else:
        target, direction = t, 1.0
        hi = _expand_up(branch, target)
        lo = _expand_down(branch, target)
        x = _invert_monotone(branch, target, lo, hi)
    xdot = direction * math.sqrt(max(float(p_squared(params, C, x)), 0.0))
    return x, xdot


def _invert_monotone(branch, target: float, lo: float, hi: float) -> float:
    f = lambda x: _t_of_x(branch, x) - target
    flo, fhi = f(lo), f(hi)
    if flo > 0.0 and flo < 1e-9:
        return lo
    if fhi < 0.0 and fhi > -1e-9:
        return hi
    return bracketed_root(f, lo, hi, flo, fhi, xtol=1e-12, max_iter=200)


def _expand_up(branch, target: float) -> float:
    x0 = branch.x_ref if math.isfinite(branch.x_ref) else 0.0
    step = max(1.0, abs(x0))
    x = x0
    for _ in range(200):
        x = x + step
        if _t_of_x(branch, x) >= target:
            return x
        step *= 2.0
    raise ConvergenceError(f"could not bracket t = {target} toward +infinity")


def _expand_down(branch, target: float) -> float:
    x0 = branch.x_ref if math.isfinite(branch.x_ref) else 0.0
    step = max(1.0, abs(x0))
    x = x0
    for _ in range(200):
        x = x - step
        if _t_of_x(branch, x) <= target:
            return x
        step *= 2.0
    raise ConvergenceError(f"could not bracket t = {target} toward -infinity")
