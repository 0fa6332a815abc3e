"""Compare the compiled integrator kernel against the pure-Python twin.

Run: python3 benchmarks/bench_kernel.py
"""

from __future__ import annotations

import time

import numpy as np

from mlosc import _kernel_py

try:
    from mlosc import _kernel
except ImportError:
    _kernel = None

CASES = [
    ("g1 bounded, lam<0", 1, 1.0, 0.45, -1.0, 0.1, 0.3, 100.0),
    ("g1 bounded, lam>0", 1, 1.0, 1.0, 1.0, 0.4, 0.2, 100.0),
    ("g2 well, lam<0", 2, 1.0, 1.0, -1.0, 0.2, 0.5, 100.0),
    ("original", 0, 1.3, 0.0, 0.7, 0.4, 0.0, 100.0),
]


def run(kernel, case, t_eval):
    _name, kind, a, b, l, x0, v0, t_end = case
    return kernel.integrate(kind, a, b, l, x0, v0, 0.0, t_end, 1e-10, 1e-12, t_eval)


def main() -> None:
    if _kernel is None:
        print("compiled kernel not built; benchmarking the Python kernel only")
    repeats = 5
    for case in CASES:
        t_eval = np.linspace(0.0, case[-1], 2000)
        rows = []
        for name, kern in (("python", _kernel_py),) + (
            (("cython", _kernel),) if _kernel else ()
        ):
            best = min(
                _timed(lambda: run(kern, case, t_eval)) for _ in range(repeats)
            )
            rows.append((name, best))
        line = f"{case[0]:22s}"
        for name, best in rows:
            line += f"  {name}: {best * 1e3:8.2f} ms"
        if len(rows) == 2:
            line += f"  speedup: {rows[0][1] / rows[1][1]:6.1f}x"
        print(line)
        if len(rows) == 2:
            xp, vp, *_ = run(_kernel_py, case, t_eval)
            xc, vc, *_ = run(_kernel, case, t_eval)
            dx = float(np.max(np.abs(np.asarray(xp) - np.asarray(xc))))
            print(f"{'':22s}  max |x_py - x_cy| = {dx:.2e}")


def _timed(fn) -> float:
    t0 = time.perf_counter()
    fn()
    return time.perf_counter() - t0


if __name__ == "__main__":
    main()
