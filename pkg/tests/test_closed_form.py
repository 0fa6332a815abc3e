import math

import numpy as np
import pytest

from mlosc import (
    BranchMismatchError,
    C_to_energy,
    Family,
    InconsistentAmplitudeError,
    ModelParams,
    OscillatorKind,
    State,
    UnreachableError,
    energy_from_state,
    energy_to_C,
    evaluate,
    from_energy,
    omega_of_amplitude,
    residual,
    shape,
)

G1_POS = ModelParams(OscillatorKind.G1, alpha=1.0, beta=1.0, lam=1.0)
G1_NEG = ModelParams(OscillatorKind.G1, alpha=1.0, beta=0.45, lam=-1.0)

RNG = np.random.default_rng(20230815)


def test_sin_family_negative_lambda_example():
    # C = 1 gives omega = 1, A = B = 0.45, x in [0, 0.9]
    E = C_to_energy(G1_NEG, 1.0)
    sol = from_energy(G1_NEG, E, x0=0.45)
    assert sol.family is Family.SIN
    assert sol.omega == pytest.approx(1.0, rel=1e-12)
    assert sol.B == pytest.approx(0.45, rel=1e-12)
    assert sol.A == pytest.approx(0.45, rel=1e-12)
    assert sol.x_range[0] == pytest.approx(0.0, abs=1e-12)
    assert sol.x_range[1] == pytest.approx(0.9, rel=1e-12)
    assert 0.0 <= sol.phi < 2.0 * math.pi


def test_quadratic_family_example():
    # E = V(+inf) = 0.5 means C = 0
    sol = from_energy(G1_POS, 0.5, x0=1.0)
    assert sol.family is Family.QUADRATIC
    assert sol.A == pytest.approx(math.sqrt(0.5), rel=1e-12)
    assert sol.B == pytest.approx(-0.5, rel=1e-12)
    assert sol.omega is None
    assert sol.x_range == (-0.5, math.inf)


def test_exp_family_at_barrier_top():
    E = shape(G1_POS).V_max
    sol = from_energy(G1_POS, E, x0=0.5, direction=1)
    assert sol.family is Family.EXP_RIGHT
    assert sol.omega**2 == pytest.approx((-1.0 + math.sqrt(5.0)) / 2.0, rel=1e-12)
    assert sol.B == pytest.approx(-G1_POS.beta / sol.omega**2, rel=1e-12)
    # asymptote x -> B as t -> -inf
    x_past, _ = evaluate(sol, -200.0)
    assert x_past == pytest.approx(sol.B, abs=1e-12)


def test_evaluate_formulas():
    sin_sol = from_energy(G1_NEG, C_to_energy(G1_NEG, 1.0), x0=0.9)
    x, xd = evaluate(sin_sol, (math.pi / 2.0 - sin_sol.phi) / sin_sol.omega)
    assert x == pytest.approx(0.9, rel=1e-12) and xd == pytest.approx(0.0, abs=1e-12)

    quad_sol = from_energy(G1_POS, 0.5, x0=-0.5, t0=0.0)
    x, xd = evaluate(quad_sol, 0.0)
    assert x == pytest.approx(-0.5, rel=1e-12) and xd == pytest.approx(0.0, abs=1e-12)


def test_initial_conditions_and_direction():
    for params, E, x0 in (
        (G1_NEG, C_to_energy(G1_NEG, 1.0), 0.3),
        (G1_POS, 0.25, 0.1),
        (G1_POS, 0.6, 2.0),
        (G1_POS, 1.5, -0.7),
    ):
        for direction in (1, -1):
            sol = from_energy(params, E, x0=x0, t0=0.25, direction=direction)
            x, xd = evaluate(sol, 0.25)
            assert x == pytest.approx(x0, rel=1e-9, abs=1e-9)
            assert direction * xd >= 0.0


def test_residuals_random_sample():
    cases = []
    for _ in range(30):
        params = ModelParams(
            OscillatorKind.G1,
            alpha=float(RNG.uniform(0.5, 2.0)),
            beta=float(RNG.uniform(0.1, 1.5)),
            lam=float(RNG.uniform(0.3, 2.0)),
        )
        sh = shape(params)
        cases.append((params, sh.V_min + 0.5 * (sh.V_plus_inf - sh.V_min)))
        cases.append((params, sh.V_plus_inf + 0.5 * (sh.V_max - sh.V_plus_inf)))
        cases.append((params, sh.V_max + 0.3))
    for params, E in cases:
        sh = shape(params)
        x0 = sh.x_min if E < sh.V_plus_inf else sh.x_min + 0.1
        sol = from_energy(params, E, x0=x0)
        t = np.linspace(-2.0, 2.0, 50)
        xs, _ = evaluate(sol, t)
        bound = 1e-9 * params.alpha**2 * np.maximum(1.0, np.abs(xs))
        assert np.all(np.abs(residual(sol, t)) <= bound)


def test_energy_is_conserved_and_equals_input():
    E = 0.6
    sol = from_energy(G1_POS, E, x0=2.0)
    for t in np.linspace(-3.0, 3.0, 25):
        x, xd = evaluate(sol, float(t))
        assert energy_from_state(G1_POS, State(float(t), x, xd)) == pytest.approx(
            E, rel=1e-10
        )


def test_omega_squared_is_abs_lambda_C():
    for params, E in ((G1_NEG, C_to_energy(G1_NEG, 1.0)), (G1_POS, 0.25),
                      (G1_POS, 0.6), (G1_POS, 1.5)):
        sh = shape(params)
        x0 = sh.x_min if E < (sh.V_plus_inf or math.inf) else 1.0
        sol = from_energy(params, E, x0=x0)
        assert sol.omega**2 == pytest.approx(
            abs(params.lam * energy_to_C(params, E)), rel=1e-12
        )


def test_omega_of_amplitude_consistency():
    for params, E, x0 in (
        (G1_NEG, C_to_energy(G1_NEG, 1.0), 0.45),
        (G1_POS, 0.25, shape(G1_POS).x_min),
        (G1_POS, 0.6, 2.0),
        (G1_POS, shape(G1_POS).V_max, 0.5),
        (G1_POS, 1.5, 0.0),
    ):
        sol = from_energy(params, E, x0=x0)
        w = omega_of_amplitude(params, sol.family, sol.A, sol.B)
        assert w == pytest.approx(sol.omega, rel=1e-10)


def test_omega_of_amplitude_ml_limit():
    # beta = 0, lambda < 0: omega^2 = alpha^2 / (1 - |lambda| A^2)
    params = ModelParams(OscillatorKind.G1, alpha=1.0, beta=0.0, lam=-1.0)
    A = 0.6
    w = omega_of_amplitude(params, Family.SIN, A, 0.0)
    assert w**2 == pytest.approx(1.0 / (1.0 - A * A), rel=1e-12)


def test_omega_of_amplitude_errors():
    with pytest.raises(InconsistentAmplitudeError):
        omega_of_amplitude(G1_POS, Family.QUADRATIC, 1.0, 0.0)
    # sinh case-split boundary lambda B^2 = lambda A^2 - 1
    with pytest.raises(InconsistentAmplitudeError):
        omega_of_amplitude(G1_POS, Family.SINH, math.sqrt(2.0), 1.0)


def test_cosh_branches_never_cross():
    E = 0.6
    right = from_energy(G1_POS, E, x0=2.0, branch="right")
    left = from_energy(G1_POS, E, x0=-10.0, branch="left")
    assert right.family is Family.COSH_RIGHT and right.A > 0.0
    assert left.family is Family.COSH_LEFT and left.A < 0.0
    t = np.linspace(-50.0 / right.omega, 50.0 / right.omega, 500)
    xr, _ = evaluate(right, t)
    xl, _ = evaluate(left, t)
    assert np.all(xr >= right.A + right.B - 1e-12)
    assert np.all(xl <= left.A + left.B + 1e-12)


def test_unreachable_and_branch_errors():
    with pytest.raises(UnreachableError):
        from_energy(G1_NEG, C_to_energy(G1_NEG, 1.0), x0=-0.5)
    with pytest.raises(BranchMismatchError):
        from_energy(G1_POS, 0.6, x0=-10.0, branch="right")
    with pytest.raises(UnreachableError):
        from_energy(G1_POS, -1.0, x0=0.0)  # below the minimum
    with pytest.raises(BranchMismatchError):
        # barrier-top orbits move away from the top when omega > 0
        from_energy(G1_POS, shape(G1_POS).V_max, x0=0.5, direction=-1)


def test_g2_is_rejected():
    g2 = ModelParams(OscillatorKind.G2, alpha=1.0, beta=0.5, lam=0.5)
    with pytest.raises(ValueError):
        from_energy(g2, 0.1, x0=0.5)
