"""Time-of-flight quadrature for the second generalized oscillator.

In the compactified variable ``u = sqrt(|lambda|) x / sqrt(1 + lambda x^2)``
the squared velocity factors as the mass factor times a quadratic in u, and
the angle substitution ``u = mid + hw sin(theta)`` removes the inverse
square-root singularities at the turning points.  The remaining integrand
``1 / (alpha (1 -+ u^2))`` is smooth, so plain adaptive quadrature reaches
near machine accuracy.
"""

from __future__ import annotations

import math

from scipy.integrate import quad

from .errors import UnreachableError
from .model import ModelParams, OscillatorKind, energy_to_C


def _u_of_x(params: ModelParams, x: float) -> float:
    al = abs(params.lam)
    if params.lam > 0.0:
        if math.isinf(x):
            return math.copysign(1.0, x)
        return math.sqrt(al) * x / math.sqrt(1.0 + al * x * x)
    return math.sqrt(al) * x / math.sqrt(1.0 - al * x * x)


def _u_quadratic(params: ModelParams, E: float):
    alpha2 = params.alpha**2
    al = abs(params.lam)
    C = energy_to_C(params, E)
    qa = -alpha2 / al
    qb = 2.0 * params.beta / math.sqrt(al)
    qc = C + alpha2 / params.lam
    disc = qb * qb - 4.0 * qa * qc
    if disc < 0.0:
        raise UnreachableError(f"E = {E} below the potential minimum")
    sq = math.sqrt(disc)
    u1, u2 = sorted(((-qb + sq) / (2.0 * qa), (-qb - sq) / (2.0 * qa)))
    return u1, u2


def time_of_flight(params: ModelParams, E: float, x1: float, x2: float) -> float:
    """Time for the half-orbit motion to travel from x1 to x2.

    Signed: negative when x2 < x1.  Both points must be reachable at E.
    """
    if params.kind is not OscillatorKind.G2:
        raise ValueError("quadrature oracle is specific to the second oscillator")
    u1, u2 = _u_quadratic(params, E)
    mid, hw = 0.5 * (u1 + u2), 0.5 * (u2 - u1)
    sign = 1.0 if params.lam > 0.0 else -1.0

    def theta_of(x: float) -> float:
        u = _u_of_x(params, x)
        s = (u - mid) / hw
        if abs(s) > 1.0 + 1e-9:
            raise UnreachableError(f"x = {x} is classically forbidden at E = {E}")
        return math.asin(min(1.0, max(-1.0, s)))

    th1, th2 = theta_of(x1), theta_of(x2)
    alpha = params.alpha

    def integrand(theta: float) -> float:
        u = mid + hw * math.sin(theta)
        return 1.0 / (alpha * (1.0 - sign * u * u))

    val, _err = quad(integrand, th1, th2, epsabs=1e-13, epsrel=1e-13, limit=200)
    return val


def half_period(params: ModelParams, E: float) -> float:
    """Half oscillation period for bounded motion (turning point to turning point)."""
    u1, u2 = _u_quadratic(params, E)
    if params.lam > 0.0 and (u1 <= -1.0 + 1e-12 or u2 >= 1.0 - 1e-12):
        raise ValueError(f"motion at E = {E} is not bounded between two turning points")
    mid, hw = 0.5 * (u1 + u2), 0.5 * (u2 - u1)
    sign = 1.0 if params.lam > 0.0 else -1.0
    alpha = params.alpha

    def integrand(theta: float) -> float:
        u = mid + hw * math.sin(theta)
        return 1.0 / (alpha * (1.0 - sign * u * u))

    val, _err = quad(integrand, -0.5 * math.pi, 0.5 * math.pi,
                     epsabs=1e-13, epsrel=1e-13, limit=200)
    return val
