"""Pure-Python Dormand-Prince 5(4) kernel.

Fallback twin of the compiled extension in ``_kernel.pyx``; same algorithm,
same coefficients, same call signature.  Operates on the two-dimensional
oscillator state (x, xdot) with the right-hand side inlined.

Status codes: 0 ok, 1 step-size underflow, 2 mass singularity.
"""

from __future__ import annotations

import math

import numpy as np

BACKEND = "python"

# Butcher tableau (7 stages, FSAL); the RHS is autonomous so the c nodes
# are not needed
_A21 = 0.2
_A31, _A32 = 3.0 / 40.0, 9.0 / 40.0
_A41, _A42, _A43 = 44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0
_A51, _A52, _A53, _A54 = 19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0
_A61, _A62, _A63, _A64, _A65 = (
    9017.0 / 3168.0,
    -355.0 / 33.0,
    46732.0 / 5247.0,
    49.0 / 176.0,
    -5103.0 / 18656.0,
)
_B1, _B3, _B4, _B5, _B6 = 35.0 / 384.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0

# embedded 4th-order error weights
_E1, _E3, _E4, _E5, _E6, _E7 = (
    71.0 / 57600.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
)

# dense-output polynomial (order 4 in the step fraction theta)
_P = (
    (1.0, -8048581381.0 / 2820520608.0, 8663915743.0 / 2820520608.0, -12715105075.0 / 11282082432.0),
    (0.0, 0.0, 0.0, 0.0),
    (0.0, 131558114200.0 / 32700410799.0, -68118460800.0 / 10900136933.0, 87487479700.0 / 32700410799.0),
    (0.0, -1754552775.0 / 470086768.0, 14199869525.0 / 1410260304.0, -10690763975.0 / 1880347072.0),
    (0.0, 127303824393.0 / 49829197408.0, -318862633887.0 / 49829197408.0, 701980252875.0 / 199316789632.0),
    (0.0, -282668133.0 / 205662961.0, 2019193451.0 / 616988883.0, -1453857185.0 / 822651844.0),
    (0.0, 40617522.0 / 29380423.0, -110615467.0 / 29380423.0, 69997945.0 / 29380423.0),
)

_EPS = 2.220446049250313e-16


def _accel(kind: int, alpha2: float, beta: float, lam: float, x: float, v: float):
    m = 1.0 + lam * x * x
    if m <= 1e-14:
        return 0.0, False
    if kind == 1:
        g = 1.0 - lam * x * x
    elif kind == 2:
        g = math.sqrt(m)
    else:
        g = 0.0
    return (lam * x * v * v - alpha2 * x + beta * g) / m, True


def integrate(kind, alpha, beta, lam, x0, v0, t0, t_end, rtol, atol, t_eval):
    """Integrate from (t0, x0, v0) to t_end, sampling at t_eval (ascending).

    Returns (x_out, v_out, n_done, status).
    """
    t_eval = np.asarray(t_eval, dtype=float)
    n = t_eval.shape[0]
    x_out = np.empty(n)
    v_out = np.empty(n)
    alpha2 = alpha * alpha

    t = t0
    x, v = x0, v0
    fx, ok = v, True
    fv, ok = _accel(kind, alpha2, beta, lam, x, v)
    if not ok:
        return x_out, v_out, 0, 2

    # initial step size, from the magnitude of the state and its derivative
    d0 = max(abs(x), abs(v), 1e-8)
    d1 = max(abs(fx), abs(fv), 1e-8)
    h = min(0.01 * d0 / d1, 0.1 * abs(t_end - t0))
    h = max(h, 1e-10)

    idx = 0
    # emit samples at or before t0
    while idx < n and t_eval[idx] <= t0:
        x_out[idx] = x
        v_out[idx] = v
        idx += 1

    max_steps = 10_000_000
    for _ in range(max_steps):
        if idx >= n or t >= t_end:
            return x_out, v_out, idx, 0
        if h < 16.0 * _EPS * max(abs(t), 1.0):
            return x_out, v_out, idx, 1
        if t + h > t_end:
            h = t_end - t

        k1x, k1v = fx, fv
        yx = x + h * _A21 * k1x
        yv = v + h * _A21 * k1v
        k2x = yv
        k2v, ok = _accel(kind, alpha2, beta, lam, yx, yv)
        if not ok:
            return x_out, v_out, idx, 2
        yx = x + h * (_A31 * k1x + _A32 * k2x)
        yv = v + h * (_A31 * k1v + _A32 * k2v)
        k3x = yv
        k3v, ok = _accel(kind, alpha2, beta, lam, yx, yv)
        if not ok:
            return x_out, v_out, idx, 2
        yx = x + h * (_A41 * k1x + _A42 * k2x + _A43 * k3x)
        yv = v + h * (_A41 * k1v + _A42 * k2v + _A43 * k3v)
        k4x = yv
        k4v, ok = _accel(kind, alpha2, beta, lam, yx, yv)
        if not ok:
            return x_out, v_out, idx, 2
        yx = x + h * (_A51 * k1x + _A52 * k2x + _A53 * k3x + _A54 * k4x)
        yv = v + h * (_A51 * k1v + _A52 * k2v + _A53 * k3v + _A54 * k4v)
        k5x = yv
        k5v, ok = _accel(kind, alpha2, beta, lam, yx, yv)
        if not ok:
            return x_out, v_out, idx, 2
        yx = x + h * (_A61 * k1x + _A62 * k2x + _A63 * k3x + _A64 * k4x + _A65 * k5x)
        yv = v + h * (_A61 * k1v + _A62 * k2v + _A63 * k3v + _A64 * k4v + _A65 * k5v)
        k6x = yv
        k6v, ok = _accel(kind, alpha2, beta, lam, yx, yv)
        if not ok:
            return x_out, v_out, idx, 2
        x_new = x + h * (_B1 * k1x + _B3 * k3x + _B4 * k4x + _B5 * k5x + _B6 * k6x)
        v_new = v + h * (_B1 * k1v + _B3 * k3v + _B4 * k4v + _B5 * k5v + _B6 * k6v)
        k7x = v_new
        k7v, ok = _accel(kind, alpha2, beta, lam, x_new, v_new)
        if not ok:
            return x_out, v_out, idx, 2

        err_x = h * (_E1 * k1x + _E3 * k3x + _E4 * k4x + _E5 * k5x + _E6 * k6x + _E7 * k7x)
        err_v = h * (_E1 * k1v + _E3 * k3v + _E4 * k4v + _E5 * k5v + _E6 * k6v + _E7 * k7v)
        sx = atol + rtol * max(abs(x), abs(x_new))
        sv = atol + rtol * max(abs(v), abs(v_new))
        err = math.sqrt(0.5 * ((err_x / sx) ** 2 + (err_v / sv) ** 2))

        if err > 1.0:
            h *= max(0.2, 0.9 * err ** -0.2)
            continue

        # accepted: dense output over [t, t+h]
        kx = (k1x, k2x, k3x, k4x, k5x, k6x, k7x)
        kv = (k1v, k2v, k3v, k4v, k5v, k6v, k7v)
        t_next = t + h
        while idx < n and t_eval[idx] <= t_next + 1e-15 * max(1.0, abs(t_next)):
            theta = (t_eval[idx] - t) / h
            if theta >= 1.0:
                x_out[idx] = x_new
                v_out[idx] = v_new
            else:
                th2 = theta * theta
                qx = 0.0
                qv = 0.0
                for s in range(7):
                    p = _P[s]
                    w = theta * p[0] + th2 * (p[1] + theta * (p[2] + theta * p[3]))
                    qx += w * kx[s]
                    qv += w * kv[s]
                x_out[idx] = x + h * qx
                v_out[idx] = v + h * qv
            idx += 1

        t = t_next
        x, v = x_new, v_new
        fx, fv = k7x, k7v  # FSAL
        factor = 0.9 * err ** -0.2 if err > 0.0 else 10.0
        h *= min(10.0, max(0.2, factor))

    return x_out, v_out, idx, 1
