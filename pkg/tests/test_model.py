import math

import pytest

from mlosc import (
    C_to_energy,
    DomainError,
    ModelParams,
    OscillatorKind,
    State,
    energy_from_state,
    energy_to_C,
)


def test_valid_construction_all_kinds():
    ModelParams(OscillatorKind.ORIGINAL, alpha=1.0, beta=0.0, lam=1.0)
    ModelParams(OscillatorKind.G1, alpha=1.0, beta=0.45, lam=-1.0)
    ModelParams(OscillatorKind.G1, alpha=1.0, beta=3.0, lam=1.0)
    ModelParams(OscillatorKind.G2, alpha=1.0, beta=1.0, lam=-1.0)
    ModelParams(OscillatorKind.G2, alpha=1.0, beta=0.5, lam=0.5)


@pytest.mark.parametrize(
    "kwargs,fragment",
    [
        (dict(kind=OscillatorKind.G1, alpha=0.0, beta=0.1, lam=1.0), "alpha > 0"),
        (dict(kind=OscillatorKind.G1, alpha=-1.0, beta=0.1, lam=1.0), "alpha > 0"),
        (dict(kind=OscillatorKind.G1, alpha=1.0, beta=0.1, lam=0.0), "lambda != 0"),
        (dict(kind=OscillatorKind.G1, alpha=1.0, beta=-0.1, lam=1.0), "beta >= 0"),
        (dict(kind=OscillatorKind.ORIGINAL, alpha=1.0, beta=0.5, lam=1.0), "beta = 0"),
        (
            dict(kind=OscillatorKind.G1, alpha=1.0, beta=0.6, lam=-1.0),
            "beta < alpha^2/(2 sqrt|lambda|)",
        ),
        (
            dict(kind=OscillatorKind.G2, alpha=1.0, beta=1.5, lam=1.0),
            "beta < alpha^2/sqrt(lambda)",
        ),
    ],
)
def test_invalid_params_name_the_inequality(kwargs, fragment):
    with pytest.raises(DomainError) as exc:
        ModelParams(**kwargs)
    assert fragment in str(exc.value)


def test_g1_negative_lambda_beta_bound_is_strict():
    # bound is alpha^2 / (2 sqrt|lambda|) = 0.5 here
    ModelParams(OscillatorKind.G1, alpha=1.0, beta=0.499, lam=-1.0)
    with pytest.raises(DomainError):
        ModelParams(OscillatorKind.G1, alpha=1.0, beta=0.5, lam=-1.0)


def test_position_domain():
    open_line = ModelParams(OscillatorKind.G1, alpha=1.0, beta=1.0, lam=1.0).domain
    assert open_line.contains(1e6) and open_line.contains(-1e6)

    walled = ModelParams(OscillatorKind.G1, alpha=1.0, beta=0.2, lam=-4.0).domain
    assert walled.upper == pytest.approx(0.5)
    assert walled.contains(0.49) and not walled.contains(0.5)
    assert not walled.contains(-0.51)


def test_energy_C_round_trip():
    params = ModelParams(OscillatorKind.G1, alpha=1.3, beta=0.7, lam=0.9)
    for E in (-0.3, 0.0, 2.5):
        assert C_to_energy(params, energy_to_C(params, E)) == pytest.approx(E, abs=1e-14)


def test_energy_from_state_matches_definition():
    params = ModelParams(OscillatorKind.G2, alpha=1.0, beta=1.0, lam=-1.0)
    s = State(0.0, 0.3, 0.4)
    m = 1.0 + params.lam * s.x**2
    expected = 0.5 * (s.xdot**2 + s.x**2 - 2.0 * s.x * math.sqrt(m)) / m
    assert energy_from_state(params, s) == pytest.approx(expected, rel=1e-14)


def test_energy_from_state_rejects_vanishing_mass():
    params = ModelParams(OscillatorKind.G1, alpha=1.0, beta=0.2, lam=-1.0)
    with pytest.raises(DomainError):
        energy_from_state(params, State(0.0, 1.5, 0.0))


def test_json_round_trip():
    params = ModelParams(OscillatorKind.G2, alpha=1.5, beta=0.25, lam=0.5)
    assert ModelParams.from_json(params.to_json()) == params
