# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled Dormand-Prince 5(4) kernel.

Hot inner loop of the numerical oracle: adaptive stepping with the
oscillator right-hand side inlined, FSAL, and quartic dense output.
Mirrors ``_kernel_py.py`` exactly; keep the two in sync.

Status codes: 0 ok, 1 step-size underflow, 2 mass singularity.
"""

from libc.math cimport sqrt, fabs, fmax, fmin

import numpy as np

BACKEND = "cython"

cdef double EPS = 2.220446049250313e-16

cdef double A21 = 0.2
cdef double A31 = 3.0 / 40.0, A32 = 9.0 / 40.0
cdef double A41 = 44.0 / 45.0, A42 = -56.0 / 15.0, A43 = 32.0 / 9.0
cdef double A51 = 19372.0 / 6561.0, A52 = -25360.0 / 2187.0
cdef double A53 = 64448.0 / 6561.0, A54 = -212.0 / 729.0
cdef double A61 = 9017.0 / 3168.0, A62 = -355.0 / 33.0, A63 = 46732.0 / 5247.0
cdef double A64 = 49.0 / 176.0, A65 = -5103.0 / 18656.0
cdef double B1 = 35.0 / 384.0, B3 = 500.0 / 1113.0, B4 = 125.0 / 192.0
cdef double B5 = -2187.0 / 6784.0, B6 = 11.0 / 84.0
cdef double E1 = 71.0 / 57600.0, E3 = -71.0 / 16695.0, E4 = 71.0 / 1920.0
cdef double E5 = -17253.0 / 339200.0, E6 = 22.0 / 525.0, E7 = -1.0 / 40.0

cdef double[7][4] P = [
    [1.0, -8048581381.0 / 2820520608.0, 8663915743.0 / 2820520608.0,
     -12715105075.0 / 11282082432.0],
    [0.0, 0.0, 0.0, 0.0],
    [0.0, 131558114200.0 / 32700410799.0, -68118460800.0 / 10900136933.0,
     87487479700.0 / 32700410799.0],
    [0.0, -1754552775.0 / 470086768.0, 14199869525.0 / 1410260304.0,
     -10690763975.0 / 1880347072.0],
    [0.0, 127303824393.0 / 49829197408.0, -318862633887.0 / 49829197408.0,
     701980252875.0 / 199316789632.0],
    [0.0, -282668133.0 / 205662961.0, 2019193451.0 / 616988883.0,
     -1453857185.0 / 822651844.0],
    [0.0, 40617522.0 / 29380423.0, -110615467.0 / 29380423.0,
     69997945.0 / 29380423.0],
]


cdef inline int accel(int kind, double alpha2, double beta, double lam,
                      double x, double v, double* out) nogil:
    cdef double m = 1.0 + lam * x * x
    cdef double g
    if m <= 1e-14:
        return 0
    if kind == 1:
        g = 1.0 - lam * x * x
    elif kind == 2:
        g = sqrt(m)
    else:
        g = 0.0
    out[0] = (lam * x * v * v - alpha2 * x + beta * g) / m
    return 1


def integrate(int kind, double alpha, double beta, double lam,
              double x0, double v0, double t0, double t_end,
              double rtol, double atol, t_eval):
    """Integrate from (t0, x0, v0) to t_end, sampling at t_eval (ascending).

    Returns (x_out, v_out, n_done, status).
    """
    cdef double[::1] tv = np.ascontiguousarray(t_eval, dtype=np.float64)
    cdef Py_ssize_t n = tv.shape[0]
    x_arr = np.empty(n, dtype=np.float64)
    v_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] x_out = x_arr
    cdef double[::1] v_out = v_arr

    cdef double alpha2 = alpha * alpha
    cdef double t = t0, x = x0, v = v0
    cdef double fx = v0, fv = 0.0
    cdef double h, d0, d1
    cdef double yx, yv, x_new, v_new
    cdef double k1x, k2x, k3x, k4x, k5x, k6x, k7x
    cdef double k1v, k2v, k3v, k4v, k5v, k6v, k7v
    cdef double err_x, err_v, sx, sv, err, t_next, theta, th2, qx, qv, w
    cdef Py_ssize_t idx = 0, s
    cdef long step, max_steps = 10000000

    if not accel(kind, alpha2, beta, lam, x, v, &fv):
        return x_arr, v_arr, 0, 2

    d0 = fmax(fmax(fabs(x), fabs(v)), 1e-8)
    d1 = fmax(fmax(fabs(fx), fabs(fv)), 1e-8)
    h = fmin(0.01 * d0 / d1, 0.1 * fabs(t_end - t0))
    h = fmax(h, 1e-10)

    while idx < n and tv[idx] <= t0:
        x_out[idx] = x
        v_out[idx] = v
        idx += 1

    for step in range(max_steps):
        if idx >= n or t >= t_end:
            return x_arr, v_arr, idx, 0
        if h < 16.0 * EPS * fmax(fabs(t), 1.0):
            return x_arr, v_arr, idx, 1
        if t + h > t_end:
            h = t_end - t

        k1x = fx; k1v = fv
        yx = x + h * A21 * k1x
        yv = v + h * A21 * k1v
        k2x = yv
        if not accel(kind, alpha2, beta, lam, yx, yv, &k2v):
            return x_arr, v_arr, idx, 2
        yx = x + h * (A31 * k1x + A32 * k2x)
        yv = v + h * (A31 * k1v + A32 * k2v)
        k3x = yv
        if not accel(kind, alpha2, beta, lam, yx, yv, &k3v):
            return x_arr, v_arr, idx, 2
        yx = x + h * (A41 * k1x + A42 * k2x + A43 * k3x)
        yv = v + h * (A41 * k1v + A42 * k2v + A43 * k3v)
        k4x = yv
        if not accel(kind, alpha2, beta, lam, yx, yv, &k4v):
            return x_arr, v_arr, idx, 2
        yx = x + h * (A51 * k1x + A52 * k2x + A53 * k3x + A54 * k4x)
        yv = v + h * (A51 * k1v + A52 * k2v + A53 * k3v + A54 * k4v)
        k5x = yv
        if not accel(kind, alpha2, beta, lam, yx, yv, &k5v):
            return x_arr, v_arr, idx, 2
        yx = x + h * (A61 * k1x + A62 * k2x + A63 * k3x + A64 * k4x + A65 * k5x)
        yv = v + h * (A61 * k1v + A62 * k2v + A63 * k3v + A64 * k4v + A65 * k5v)
        k6x = yv
        if not accel(kind, alpha2, beta, lam, yx, yv, &k6v):
            return x_arr, v_arr, idx, 2
        x_new = x + h * (B1 * k1x + B3 * k3x + B4 * k4x + B5 * k5x + B6 * k6x)
        v_new = v + h * (B1 * k1v + B3 * k3v + B4 * k4v + B5 * k5v + B6 * k6v)
        k7x = v_new
        if not accel(kind, alpha2, beta, lam, x_new, v_new, &k7v):
            return x_arr, v_arr, idx, 2

        err_x = h * (E1 * k1x + E3 * k3x + E4 * k4x + E5 * k5x + E6 * k6x + E7 * k7x)
        err_v = h * (E1 * k1v + E3 * k3v + E4 * k4v + E5 * k5v + E6 * k6v + E7 * k7v)
        sx = atol + rtol * fmax(fabs(x), fabs(x_new))
        sv = atol + rtol * fmax(fabs(v), fabs(v_new))
        err = sqrt(0.5 * ((err_x / sx) ** 2 + (err_v / sv) ** 2))

        if err > 1.0:
            h *= fmax(0.2, 0.9 * err ** -0.2)
            continue

        t_next = t + h
        while idx < n and tv[idx] <= t_next + 1e-15 * fmax(1.0, fabs(t_next)):
            theta = (tv[idx] - t) / h
            if theta >= 1.0:
                x_out[idx] = x_new
                v_out[idx] = v_new
            else:
                th2 = theta * theta
                qx = 0.0
                qv = 0.0
                for s in range(7):
                    w = theta * P[s][0] + th2 * (P[s][1] + theta * (P[s][2] + theta * P[s][3]))
                    if s == 0:
                        qx += w * k1x; qv += w * k1v
                    elif s == 2:
                        qx += w * k3x; qv += w * k3v
                    elif s == 3:
                        qx += w * k4x; qv += w * k4v
                    elif s == 4:
                        qx += w * k5x; qv += w * k5v
                    elif s == 5:
                        qx += w * k6x; qv += w * k6v
                    elif s == 6:
                        qx += w * k7x; qv += w * k7v
                x_out[idx] = x + h * qx
                v_out[idx] = v + h * qv
            idx += 1

        t = t_next
        x = x_new; v = v_new
        fx = k7x; fv = k7v
        if err > 0.0:
            h *= fmin(10.0, fmax(0.2, 0.9 * err ** -0.2))
        else:
            h *= 10.0

    return x_arr, v_arr, idx, 1
