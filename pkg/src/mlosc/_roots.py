"""Bracketed scalar root finding: secant steps safeguarded by bisection."""

from __future__ import annotations

from .errors import ConvergenceError


def bracketed_root(f, lo: float, hi: float, flo=None, fhi=None,
                   xtol: float = 1e-12, max_iter: int = 200) -> float:
    """Root of f inside [lo, hi]; f(lo) and f(hi) must differ in sign.

    Converges to ``xtol * max(1, |x|)``; raises :class:`ConvergenceError`
    after ``max_iter`` iterations.
    """
    a, b = float(lo), float(hi)
    fa = f(a) if flo is None else flo
    fb = f(b) if fhi is None else fhi
    if fa == 0.0:
        return a
    if fb == 0.0:
        return b
    if (fa > 0.0) == (fb > 0.0):
        raise ValueError(f"no sign change on [{lo}, {hi}] (f: {fa}, {fb})")

    for _ in range(max_iter):
        if abs(b - a) <= xtol * max(1.0, abs(a), abs(b)):
            return 0.5 * (a + b)
        # secant through the bracket endpoints, bisection when degenerate
        # or when the step leaves the bracket
        denom = fb - fa
        if denom != 0.0:
            x = b - fb * (b - a) / denom
        else:
            x = 0.5 * (a + b)
        margin = 0.01 * abs(b - a)
        if not (min(a, b) + margin < x < max(a, b) - margin):
            x = 0.5 * (a + b)
        fx = f(x)
        if fx == 0.0:
            return x
        if (fx > 0.0) == (fa > 0.0):
            a, fa = x, fx
        else:
            b, fb = x, fx
    raise ConvergenceError(
        f"root not bracketed to {xtol} within {max_iter} iterations"
    )
