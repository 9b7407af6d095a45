import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from torsionlab import maps
from torsionlab.errors import ValidationError

finite = st.floats(-5, 5, allow_nan=False)
eps_s = st.floats(0, 6, allow_nan=False)
preset_s = st.sampled_from(maps.PRESETS)


def preset(name, eps):
    return {"standard": maps.MapDef.standard, "three-harmonic": maps.MapDef.three_harmonic,
            "rational-harmonic": maps.MapDef.rational_harmonic}[name](eps)


def test_lift_step_examples():
    assert maps.lift_step(maps.MapDef.standard(0), (0.3, 0.25)) == pytest.approx((0.55, 0.25))
    assert maps.lift_step(maps.MapDef.standard(2), (0, 0)) == (0.0, 0.0)
    z = maps.lift_step(maps.MapDef.three_harmonic(1), (0, 0.5))
    assert z == pytest.approx((0.5, 0.5), abs=1e-15)


def test_inverse_step_examples():
    assert maps.inverse_step(maps.MapDef.standard(0), (0.55, 0.25)) == pytest.approx((0.3, 0.25))
    z = maps.inverse_step(maps.MapDef.three_harmonic(1), (0.5, 0.5))
    assert z == pytest.approx((0.0, 0.5), abs=1e-14)


def test_inverse_round_trip_bulk():
    rng = np.random.default_rng(1)
    for name in maps.PRESETS:
        m = preset(name, 2.5)
        err = 0.0
        for x, y in rng.uniform(-3, 3, (1000, 2)):
            back = maps.inverse_step(m, maps.lift_step(m, (x, y)))
            err = max(err, abs(back[0] - x), abs(back[1] - y))
        assert err < 1e-13


def test_derivative_examples():
    np.testing.assert_allclose(maps.derivative(maps.MapDef.standard(4), (0, 0)), [[-3, 1], [-4, 1]])
    np.testing.assert_allclose(maps.derivative(maps.MapDef.standard(0), (0.3, 1)), [[1, 1], [0, 1]])
    np.testing.assert_allclose(maps.derivative(maps.MapDef.standard(2), (0, 0.5)), [[-1, 1], [-2, 1]])


def test_derivative_matches_finite_differences():
    m = maps.MapDef.three_harmonic(0.7)
    z, h = np.array([0.123, -0.4]), 1e-6
    fd = np.column_stack([(np.array(maps.lift_step(m, z + h * e)) - np.array(maps.lift_step(m, z - h * e))) / (2 * h)
                          for e in np.eye(2)])
    np.testing.assert_allclose(maps.derivative(m, z), fd, atol=1e-8)


def test_action_term_examples():
    assert maps.action_term(maps.MapDef.standard(0), 0.2, 0.7) == pytest.approx(0.125)
    m = maps.MapDef.standard(1.7)
    x, xn = 0.31, 0.9
    want = 0.5 * (xn - x) ** 2 + 1.7 / (2 * math.pi) ** 2 * math.cos(2 * math.pi * x)
    assert maps.action_term(m, x, xn) == pytest.approx(want, abs=1e-15)


def test_symmetry_lines():
    lines = maps.symmetry_lines(maps.MapDef.standard(1))
    assert lines[0] == (1, 0, 0)
    assert lines[1] == (1, 0, -0.5)
    assert lines[2] == (1, -0.5, 0)
    assert lines[3] == (1, -0.5, -0.5)


def test_potential_is_antiderivative_of_force():
    for name in maps.PRESETS:
        m = preset(name, 1.0)
        xs = np.linspace(-0.5, 0.5, 41)
        h = 1e-6
        dV = (m.potential(xs + h) - m.potential(xs - h)) / (2 * h)
        np.testing.assert_allclose(-dV, m.force(xs), atol=1e-8)
        dF = (m.force(xs + h) - m.force(xs - h)) / (2 * h)
        np.testing.assert_allclose(dF, m.force_prime(xs), atol=1e-7)


def test_rational_force_closed_form():
    m = maps.MapDef.rational_harmonic(1.3, a=0.4)
    x = 0.17
    want = 1.3 * math.sin(2 * math.pi * x) / (2 * math.pi * (1 - 0.4 * math.cos(2 * math.pi * x)))
    assert float(m.g(x)) == pytest.approx(want, rel=1e-14)
    assert float(maps.MapDef.rational_harmonic(1.0, a=0.0).potential(0.0)) == pytest.approx(1 / (2 * math.pi) ** 2)


def test_large_argument_reduction():
    m = maps.MapDef.standard(2.0)
    assert float(m.g(1e8 + 0.25)) == pytest.approx(float(m.g(0.25)), abs=1e-7)


@pytest.mark.parametrize("bad", [
    {"preset": "nope"}, {"epsilon": -1, "preset": "standard"}, {"gamma": []},
    {"preset": "standard", "extra": 1}, {"rational_a": 1.5}, {"preset": "standard", "epsilon": "x"},
    [1, 2],
])
def test_from_dict_rejects(bad):
    with pytest.raises(ValidationError):
        maps.MapDef.from_dict(bad)


def test_from_dict_presets_round_trip():
    m = maps.MapDef.from_dict({"preset": "three-harmonic", "epsilon": 0.4})
    assert m.gamma == maps.THREE_HARMONIC_GAMMA and m.epsilon == 0.4
    m2 = maps.MapDef.from_dict({"gamma": [0.1, 0.2], "epsilon": 1})
    assert maps.MapDef.from_dict(m2.to_dict()) == m2
    r = maps.MapDef.from_dict({"rational_a": -0.2, "epsilon": 1})
    assert r.rational_a == -0.2


@settings(max_examples=200, deadline=None)
@given(preset_s, eps_s, finite, finite)
def test_area_preservation(name, eps, x, y):
    assert np.linalg.det(maps.derivative(preset(name, eps), (x, y))) == pytest.approx(1.0, abs=1e-12)


@settings(max_examples=200, deadline=None)
@given(preset_s, eps_s, finite, finite)
def test_lift_periodicity(name, eps, x, y):
    m = preset(name, eps)
    a = maps.lift_step(m, (x + 1.0, y))
    b = maps.lift_step(m, (x, y))
    assert a[0] == pytest.approx(b[0] + 1.0, abs=1e-12) and a[1] == pytest.approx(b[1], abs=1e-12)


@settings(max_examples=200, deadline=None)
@given(preset_s, eps_s, finite, finite)
def test_generating_function_consistency(name, eps, x, xn):
    m = preset(name, eps)
    y = -float(maps.h1(m, x, xn))
    yn = float(maps.h2(m, x, xn))
    img = maps.lift_step(m, (x, y))
    assert img[0] == pytest.approx(xn, abs=1e-12) and img[1] == pytest.approx(yn, abs=1e-12)


@settings(max_examples=200, deadline=None)
@given(preset_s, eps_s, finite, finite)
def test_reversor_factorization(name, eps, x, y):
    m = preset(name, eps)
    a = maps.reversor_i(maps.reversor_r(m, (x, y)))
    b = maps.lift_step(m, (x, y))
    assert a[0] == pytest.approx(b[0], abs=1e-12) and a[1] == pytest.approx(b[1], abs=1e-12)
