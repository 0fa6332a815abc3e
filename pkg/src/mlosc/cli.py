"""Command-line front door.

Subcommands: ``classify`` (energy regime report), ``solve`` (trajectory CSV
from one producer), ``compare`` (cross-verification report), ``figures``
(potential-curve CSV for the four standard parameter sets).

Output is byte-reproducible: data files carry no timestamps, numbers are
written with 17 significant digits, '.' decimal separator and LF newlines.
Exit codes: 0 success, 1 invalid input, 2 verification failure.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from . import closed_form, dynamics, implicit
from ._backend import BACKEND
from .errors import MloscError
from .model import ModelParams, OscillatorKind, State, energy_to_C
from .potential import G1Row, G2Row, V, classify_energy, shape

_CONFIG_DEFAULTS = {
    "t_end": 10.0,
    "grid": 1000,
    "rel_tol": 1e-10,
    "abs_tol": 1e-12,
    "x_error_threshold": 1e-6,
    "energy_drift_threshold": 1e-8,
    "residual_threshold": 1e-8,
}

_FIGURES = {
    1: ("g1", 1.0, 0.45, -1.0),
    2: ("g1", 1.0, 1.0, 1.0),
    3: ("g2", 1.0, 1.0, -1.0),
    4: ("g2", 1.0, 0.5, 0.5),
}


def _fmt(x: float) -> str:
    return "%.17g" % x


def _load_config(path: str | None) -> dict:
    """Flags > config file (JSON) > defaults; NLOSC_CONFIG names the default file."""
    cfg = dict(_CONFIG_DEFAULTS)
    if path is None:
        path = os.environ.get("NLOSC_CONFIG")
    if path:
        with open(path, "r", encoding="utf-8") as fh:
            loaded = json.load(fh)
        unknown = set(loaded) - set(_CONFIG_DEFAULTS)
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        cfg.update(loaded)
    return cfg


def _settings(args, cfg: dict) -> dict:
    out = dict(cfg)
    for flag, key in (("t_end", "t_end"), ("grid", "grid"),
                      ("rel_tol", "rel_tol"), ("abs_tol", "abs_tol")):
        val = getattr(args, flag, None)
        if val is not None:
            out[key] = val
    return out


def _params(args) -> ModelParams:
    return ModelParams(
        OscillatorKind(args.kind),
        alpha=args.alpha,
        beta=args.beta,
        lam=args.lam,
    )


def _write_lines(lines, out_path: str | None) -> None:
    text = "\n".join(lines) + "\n"
    if out_path:
        with open(out_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_json(obj: dict) -> None:
    sys.stdout.write(json.dumps(obj, indent=2) + "\n")


# ---------------------------------------------------------------------------
# classify
# ---------------------------------------------------------------------------


def cmd_classify(args, cfg: dict) -> int:
    params = _params(args)
    regime = classify_energy(params, args.energy)
    sh = shape(params)
    report = {
        "params": json.loads(params.to_json()),
        "E": args.energy,
        "regime": regime.to_dict(),
        "potential": sh.to_dict(),
    }
    _emit_json(report)
    return 0


# ---------------------------------------------------------------------------
# solve
# ---------------------------------------------------------------------------


def _initial_position(params: ModelParams, E: float) -> float:
    """Canonical starting point: the lower turning point, else x = 0."""
    lo, hi = implicit._reach_interval(params, E) if params.kind is OscillatorKind.G2 \
        else dynamics.half_orbit_interval(params, E)
    if isinstance(lo, list):
        lo = lo[0]
    if math.isfinite(lo):
        return lo
    if math.isfinite(hi):
        return hi
    return 0.0


def _grid(params: ModelParams, E: float, settings: dict) -> np.ndarray:
    return np.linspace(0.0, settings["t_end"], int(settings["grid"]))


def _produce(params: ModelParams, E: float, producer: str, t: np.ndarray,
             settings: dict):
    """Trajectory (x, xdot) arrays on the grid t, plus a detail dict."""
    x0 = _initial_position(params, E)
    if producer == "closed":
        if params.kind is OscillatorKind.G2:
            raise ValueError("closed-form producer applies to kinds 'original' and 'g1'")
        sol = closed_form.from_energy(params, E, x0=x0, direction=1)
        x, xd = closed_form.evaluate(sol, t)
        return x, xd, {"family": sol.family.name, "omega": sol.omega}
    if producer == "implicit":
        if params.kind is not OscillatorKind.G2:
            raise ValueError("implicit producer applies to kind 'g2'")
        if params.lam > 0.0:
            br = implicit.branch_pos(params, E)
            detail = {"case": f"I_{br.case[0]} + I_{br.case[1]}", "row": br.row.name}
        else:
            br = implicit.branch_neg(params, E)
            detail = {
                "form": "quadrature fallback" if br.quadrature_fallback
                else "arctan/artanh closed form",
            }
        pairs = [implicit.x_of_t(br, ti) for ti in t]
        x = np.array([p[0] for p in pairs])
        xd = np.array([p[1] for p in pairs])
        return x, xd, detail
    if producer == "ode":
        C = energy_to_C(params, E)
        v0 = math.sqrt(max(0.0, float(dynamics.p_squared(params, C, x0))))
        tr = dynamics.integrate(
            params, State(float(t[0]), x0, v0), float(t[-1]),
            rel_tol=settings["rel_tol"], abs_tol=settings["abs_tol"], t_eval=t,
        )
        _, x, xd = tr.arrays()
        return x, xd, {"backend": BACKEND, "max_energy_drift": tr.max_energy_drift}
    raise ValueError(f"unknown producer {producer!r}")


def cmd_solve(args, cfg: dict) -> int:
    params = _params(args)
    settings = _settings(args, cfg)
    E = args.energy
    classify_energy(params, E)  # rejects E below the motion threshold early
    if dynamics.below_minimum(params, E):
        raise ValueError(f"no classical motion at E = {E}")
    t = _grid(params, E, settings)
    x, xd, detail = _produce(params, E, args.producer, t, settings)
    m = 1.0 + params.lam * x * x
    energy = np.asarray(V(params, x) + 0.5 * xd * xd / m)
    lines = ["t,x,xdot,E"]
    for row in zip(t, x, xd, energy):
        lines.append(",".join(_fmt(v) for v in row))
    _write_lines(lines, args.out)
    x0 = _initial_position(params, E)
    v0 = math.sqrt(max(0.0, float(dynamics.p_squared(params, energy_to_C(params, E), x0))))
    manifest = {
        "command": "solve",
        "params": json.loads(params.to_json()),
        "E": E,
        "producer": args.producer,
        "detail": detail,
        "initial_state": {"t": float(t[0]), "x": x0, "xdot": v0},
        "rel_tol": settings["rel_tol"],
        "abs_tol": settings["abs_tol"],
        "samples": len(t),
        "t_end": settings["t_end"],
    }
    sys.stderr.write(json.dumps(manifest) + "\n")
    return 0


# ---------------------------------------------------------------------------
# compare
# ---------------------------------------------------------------------------


def cmd_compare(args, cfg: dict) -> int:
    params = _params(args)
    settings = _settings(args, cfg)
    E = args.energy
    regime = classify_energy(params, E)
    report = {
        "command": "compare",
        "params": json.loads(params.to_json()),
        "E": E,
        "regime_row": regime.row.name,
    }
    if dynamics.below_minimum(params, E) or regime.row in (G1Row.BELOW_MIN, G2Row.BELOW_MIN):
        report.update(producers=[], verdict="pass",
                      note="no classical motion at this energy")
        _emit_json(report)
        return 0

    t = _grid(params, E, settings)
    analytic = "implicit" if params.kind is OscillatorKind.G2 else "closed"
    xa, xda, detail = _produce(params, E, analytic, t, settings)
    xo, xdo, ode_detail = _produce(params, E, "ode", t, settings)

    max_abs_x_error = float(np.max(np.abs(xa - xo)))
    max_energy_drift = float(ode_detail["max_energy_drift"])
    if analytic == "closed":
        sol = closed_form.from_energy(params, E, x0=_initial_position(params, E))
        residual_max = float(np.max(np.abs(closed_form.residual(sol, t))))
        residual_scale = params.alpha**2 * max(1.0, float(np.max(np.abs(xa))))
    else:
        # implicit producer: energy deviation of the sampled states from E
        m = 1.0 + params.lam * xa * xa
        e_dev = np.abs(V(params, xa) + 0.5 * xda * xda / m - E)
        residual_max = float(np.max(e_dev))
        residual_scale = max(1.0, abs(E))

    verdict = (
        max_abs_x_error <= settings["x_error_threshold"]
        and max_energy_drift <= settings["energy_drift_threshold"]
        and residual_max <= settings["residual_threshold"] * residual_scale
    )
    report.update(
        producers=[analytic, "ode"],
        detail=detail,
        max_abs_x_error=max_abs_x_error,
        max_energy_drift=max_energy_drift,
        residual_max=residual_max,
        thresholds={
            "x_error": settings["x_error_threshold"],
            "energy_drift": settings["energy_drift_threshold"],
            "residual": settings["residual_threshold"] * residual_scale,
        },
        verdict="pass" if verdict else "fail",
    )
    _emit_json(report)
    return 0 if verdict else 2


# ---------------------------------------------------------------------------
# figures
# ---------------------------------------------------------------------------


def cmd_figures(args, cfg: dict) -> int:
    settings = _settings(args, cfg)
    kind, alpha, beta, lam = _FIGURES[args.fig]
    solid = ModelParams(OscillatorKind(kind), alpha=alpha, beta=beta, lam=lam)
    dashed = ModelParams(OscillatorKind(kind), alpha=alpha, beta=0.0, lam=lam)
    n = int(settings["grid"])
    if lam < 0.0:
        wall = 1.0 / math.sqrt(-lam)
        xs = np.linspace(-0.999 * wall, 0.999 * wall, n)
    else:
        xs = np.linspace(-5.0, 5.0, n)
    vs = V(solid, xs)
    vd = V(dashed, xs)
    lines = ["x,V_solid,V_dashed"]
    for row in zip(xs, vs, vd):
        lines.append(",".join(_fmt(v) for v in row))
    _write_lines(lines, args.out)
    manifest = {
        "command": "figures",
        "figure": args.fig,
        "solid": {"params": json.loads(solid.to_json()), "shape": shape(solid).to_dict()},
        "dashed": {"params": json.loads(dashed.to_json()), "shape": shape(dashed).to_dict()},
        "samples": n,
    }
    sys.stderr.write(json.dumps(manifest) + "\n")
    return 0


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def _add_model_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--kind", required=True, choices=["original", "g1", "g2"])
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--beta", type=float, default=0.0)
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--energy", type=float, required=True)


def _add_common_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--t-end", dest="t_end", type=float, default=None)
    p.add_argument("--grid", type=int, default=None)
    p.add_argument("--rel-tol", dest="rel_tol", type=float, default=None)
    p.add_argument("--abs-tol", dest="abs_tol", type=float, default=None)
    p.add_argument("--out", default=None)
    p.add_argument("--config", default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mlosc",
        description="Nonlinear oscillator with a position-dependent mass: "
                    "classify regimes, produce and cross-verify trajectories.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="energy regime report (JSON)")
    _add_model_args(p)
    p.add_argument("--config", default=None)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("solve", help="trajectory CSV from one producer")
    _add_model_args(p)
    p.add_argument("--producer", required=True, choices=["closed", "implicit", "ode"])
    _add_common_args(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("compare", help="cross-verify producers (JSON report)")
    _add_model_args(p)
    _add_common_args(p)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("figures", help="potential curves CSV for figure sets 1-4")
    p.add_argument("--fig", type=int, required=True, choices=[1, 2, 3, 4])
    p.add_argument("--grid", type=int, default=None)
    p.add_argument("--out", default=None)
    p.add_argument("--config", default=None)
    p.set_defaults(func=cmd_figures)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _load_config(getattr(args, "config", None))
        return args.func(args, cfg)
    except (MloscError, ValueError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
