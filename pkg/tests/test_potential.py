import math

import numpy as np
import pytest

from mlosc import (
    DomainError,
    G1Row,
    G2Row,
    ModelParams,
    OscillatorKind,
    V,
    classify_energy,
    dV,
    energy_to_C,
    shape,
)

G1_POS = ModelParams(OscillatorKind.G1, alpha=1.0, beta=1.0, lam=1.0)
G2_NEG = ModelParams(OscillatorKind.G2, alpha=1.0, beta=1.0, lam=-1.0)
G2_POS = ModelParams(OscillatorKind.G2, alpha=1.0, beta=0.5, lam=0.5)


def test_potential_values():
    assert V(G1_POS, 0.0) == 0.0
    assert V(G1_POS, 2.0) == pytest.approx(0.0, abs=1e-14)
    assert V(G2_NEG, 1.0 / math.sqrt(2.0)) == pytest.approx(-0.5, rel=1e-12)


def test_potential_domain_error_near_wall():
    with pytest.raises(DomainError):
        V(G2_NEG, 1.0)
    # just inside the wall is fine
    V(G2_NEG, 1.0 - 1e-9)


def test_derivative_matches_finite_difference():
    h = 1e-6
    for params, xs in (
        (G1_POS, np.linspace(-3.0, 3.0, 41)),
        (G2_NEG, np.linspace(-0.9, 0.9, 41)),
        (G2_POS, np.linspace(-3.0, 3.0, 41)),
    ):
        fd = (V(params, xs + h) - V(params, xs - h)) / (2.0 * h)
        scale = np.maximum(1.0, np.abs(fd))
        assert np.max(np.abs(dV(params, xs) - fd) / scale) < 1e-8


def test_derivative_special_points():
    x_min = (-1.0 + math.sqrt(5.0)) / 2.0
    assert dV(G1_POS, x_min) == pytest.approx(0.0, abs=1e-14)
    original = ModelParams(OscillatorKind.ORIGINAL, alpha=1.0, beta=0.0, lam=1.0)
    assert dV(original, 0.0) == 0.0
    assert dV(G2_NEG, 0.0) == pytest.approx(-1.0, rel=1e-14)


def test_shape_g1_positive_lambda():
    sh = shape(G1_POS)
    assert sh.x_min == pytest.approx((-1.0 + math.sqrt(5.0)) / 2.0, rel=1e-12)
    assert sh.V_min == pytest.approx(-0.30901699437494745, rel=1e-12)
    assert sh.x_max == pytest.approx((-1.0 - math.sqrt(5.0)) / 2.0, rel=1e-12)
    assert sh.V_max == pytest.approx(0.8090169943749475, rel=1e-12)
    assert sh.V_plus_inf == pytest.approx(0.5) and sh.V_minus_inf == pytest.approx(0.5)
    assert sh.V_max > sh.V_plus_inf
    assert sorted(sh.zeros) == pytest.approx([0.0, 2.0])


def test_shape_g2():
    sh = shape(G2_NEG)
    assert sh.x_min == pytest.approx(1.0 / math.sqrt(2.0), rel=1e-12)
    assert sh.V_min == pytest.approx(-0.5, rel=1e-12)

    sh = shape(G2_POS)
    assert sh.V_plus_inf == pytest.approx((1.0 - math.sqrt(0.5)) / 1.0, rel=1e-12)
    assert sh.V_minus_inf == pytest.approx((1.0 + math.sqrt(0.5)) / 1.0, rel=1e-12)
    assert sh.V_minus_inf > 0.0
    assert sh.x_max is None and sh.V_max is None


def test_shape_invariants_numerically():
    h = 1e-5
    for params in (G1_POS, G2_NEG, G2_POS):
        sh = shape(params)
        for z in sh.zeros:
            assert abs(float(V(params, z))) < 1e-12
        assert abs(float(dV(params, sh.x_min))) < 1e-9
        second = float(V(params, sh.x_min + h) + V(params, sh.x_min - h)
                       - 2.0 * V(params, sh.x_min)) / h**2
        assert second > 0.0


def test_shape_minimum_matches_grid_scan():
    for params in (G1_POS, G2_POS):
        xs = np.linspace(-30.0, 30.0, 200001)
        assert abs(float(np.min(V(params, xs))) - shape(params).V_min) < 1e-8
    xs = np.linspace(-0.999, 0.999, 200001)
    assert abs(float(np.min(V(G2_NEG, xs))) - shape(G2_NEG).V_min) < 1e-8


def test_g2_second_zero_three_way_cases():
    # critical beta = alpha^2 / (2 sqrt(lambda))
    below = ModelParams(OscillatorKind.G2, alpha=1.0, beta=0.4, lam=0.5)
    at = ModelParams(OscillatorKind.G2, alpha=1.0, beta=1.0 / (2.0 * math.sqrt(0.5)), lam=0.5)
    above = ModelParams(OscillatorKind.G2, alpha=1.0, beta=1.2, lam=0.5)
    assert len(shape(below).zeros) == 2 and not shape(below).zero_at_infinity
    assert shape(at).zeros == (0.0,) and shape(at).zero_at_infinity
    assert shape(above).zeros == (0.0,) and not shape(above).zero_at_infinity


def test_beta_zero_degenerates_to_symmetric_well():
    params = ModelParams(OscillatorKind.G1, alpha=1.0, beta=0.0, lam=1.0)
    sh = shape(params)
    assert sh.x_min == 0.0 and sh.V_min == 0.0
    xs = np.linspace(0.0, 5.0, 100)
    assert np.max(np.abs(V(params, xs) - V(params, -xs))) < 1e-12


def test_classify_g1_band():
    regime = classify_energy(G1_POS, 0.6)
    assert regime.row is G1Row.BARRIER_BAND
    assert regime.C == pytest.approx(0.2, rel=1e-12)
    assert regime.c > 0.0 and regime.Delta < 0.0


def test_classify_g1_barrier_top():
    regime = classify_energy(G1_POS, shape(G1_POS).V_max)
    assert regime.row is G1Row.AT_BARRIER_TOP
    assert regime.C == pytest.approx((-1.0 + math.sqrt(5.0)) / 2.0, rel=1e-12)


def test_classify_g2_between_asymptotes():
    regime = classify_energy(G2_POS, 1.0)
    assert regime.row is G2Row.BETWEEN_ASYMPTOTES
    assert regime.C == pytest.approx(0.0, abs=1e-12)
    half_width = 2.0 * G2_POS.beta / math.sqrt(G2_POS.lam)
    assert -half_width < regime.C < half_width


def test_classify_below_minimum_is_a_regime():
    assert classify_energy(G1_POS, -1.0).row is G1Row.BELOW_MIN
    assert classify_energy(G2_NEG, -1.0).row is G2Row.BELOW_MIN


def test_classify_boundary_tolerance():
    sh = shape(G1_POS)
    assert classify_energy(G1_POS, sh.V_plus_inf + 1e-14).row is G1Row.AT_ASYMPTOTE
    assert classify_energy(G1_POS, sh.V_plus_inf + 1e-6).row is G1Row.BARRIER_BAND
    assert classify_energy(G1_POS, sh.V_plus_inf - 1e-6).row is G1Row.BOUNDED


def test_delta_matches_quadrature_coefficients():
    for E in (0.1, 0.6, 1.5):
        regime = classify_energy(G1_POS, E)
        a = energy_to_C(G1_POS, E) + G1_POS.alpha**2 / G1_POS.lam
        b = 2.0 * G1_POS.beta
        c = regime.c
        assert regime.Delta == pytest.approx(4.0 * a * c - b * b, rel=1e-12)
