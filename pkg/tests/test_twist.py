import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from torsionlab import maps, orbits, spectral, twist
from torsionlab.errors import (InconsistentSpectra, NotElliptic, NotPositiveTwist,
                               ValidationError, ZeroCrossingAmbiguous)
from torsionlab.twist import Twist

EXACT, INTERVAL = Twist.exact, Twist.interval


def refine(m, p, q, z):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        return orbits.refine_from_point(m, p, q, z)


@pytest.mark.parametrize("eps,p,q,z,dyn,tw", [
    (1.4578, 8, 13, (0.5, 0.7237177352891645), twist.ELLIPTIC, INTERVAL(-1, -0.5)),
    (3.0, 1, 7, (-0.387429398213243, 0.225141203573513), twist.INVERSE_HYPERBOLIC, EXACT(-1.5)),
    (2.87, 3, 5, (0.5, 0.323020669964897189), twist.REGULAR_HYPERBOLIC, EXACT(0)),
])
def test_classify_standard_examples(eps, p, q, z, dyn, tw):
    m = maps.MapDef.standard(eps)
    rep = twist.classify_twist(m, refine(m, p, q, z))
    assert rep.dyn_type == dyn and rep.twist == tw and not rep.degenerate_flag


def test_classify_example4():
    m = maps.MapDef.three_harmonic(1.0)
    rep = twist.classify_twist(m, refine(m, 1, 2, (0.0, 0.5)))
    assert rep.dyn_type == twist.REGULAR_HYPERBOLIC and rep.twist == EXACT(-1)
    for z in ((0.099868507451075, 0.699123941758688), (0.900131492548925, 0.300876058241312)):
        rep = twist.classify_twist(m, refine(m, 1, 2, z))
        assert rep.dyn_type == twist.INVERSE_HYPERBOLIC and rep.twist == EXACT(-0.5)


def test_twist_from_indices_cases():
    f = twist._twist_from_indices
    assert f(2, False, 2) == EXACT(-1)
    assert f(3, True, 3) == EXACT(-2)
    assert f(1, False, 0) == INTERVAL(-0.5, 0)
    assert f(1, False, 1) == EXACT(-0.5)
    assert f(1, False, 2) == INTERVAL(-1, -0.5)
    with pytest.raises(InconsistentSpectra):
        f(1, False, 3)


def test_naive_interval_examples():
    m = maps.MapDef.standard(7.221365)
    assert twist.naive_interval(m, refine(m, 1, 3, (0.181826060531142, 0.681826060531142))) \
        == INTERVAL(-1, -0.5)
    m = maps.MapDef.standard(4.05)
    child = orbits.period_doubled_orbit(m, orbits.newton_refine(m, 0, 1, [0.0]))
    for s in range(child.q):
        assert twist.naive_interval(m, child.shifted(s)) == INTERVAL(-1, -0.5)
    m = maps.MapDef.standard(0.1)
    o = orbits.newton_refine(m, 1, 3, np.arange(3) / 3)
    assert twist.naive_interval(m, o) == INTERVAL(-0.5, 0)


def test_naive_interval_errors():
    m = maps.MapDef.standard(2.87)
    with pytest.raises(NotElliptic):
        twist.naive_interval(m, refine(m, 3, 5, (0.5, 0.323020669964897189)))
    # at eps = 1 the origin's derivative [[0, 1], [-1, 1]] sends (1, 0) to the vertical
    m = maps.MapDef.standard(1.0)
    fp = orbits.PeriodicOrbit(0, 1, [0.0], [[0.0, 0.0]], 0.0)
    with pytest.raises(ZeroCrossingAmbiguous):
        twist.naive_interval(m, fp, w0=(1.0, 0.0))


def test_winding_examples():
    m = maps.MapDef.standard(3.0)
    w = twist.winding_estimate(m, refine(m, 1, 7, (-0.387429398213243, 0.225141203573513)), 1000)
    assert -1.501 <= w <= -1.499
    w = twist.winding_estimate(m, refine(m, 1, 7, (-0.5, 0.008258333079127612)), 1000)
    assert abs(w) <= 1e-3
    m0 = maps.MapDef.standard(0.0)
    assert twist.winding_estimate(m0, orbits.newton_refine(m0, 1, 4, np.arange(4) / 4), 50) == 0.0
    with pytest.raises(ValidationError):
        twist.winding_estimate(m, refine(m, 1, 7, (-0.5, 0.008258333079127612)), 0)


def test_basic_lift_regions():
    assert twist.basic_lift_region([[0, 1], [-1, 1]]).label == "E-1"
    r = twist.basic_lift_region([[1, 1], [0, 1]])
    assert r.label == "P+" and r.b_minus_c == 1
    assert twist.basic_lift_region(maps.derivative(maps.MapDef.standard(5), (0, 0))).label == "H'-1"
    assert twist.basic_lift_region([[2, 1], [1, 1]]).label == "H0"
    with pytest.raises(NotPositiveTwist):
        twist.basic_lift_region([[1, -1], [0, 1]])
    with pytest.raises(ValidationError):
        twist.basic_lift_region([[1, 1], [1, 1]])


@pytest.mark.parametrize("eps,want", [(1.0, INTERVAL(-0.5, 0)), (5.0, EXACT(-0.5)), (0.0, EXACT(0))])
def test_fixed_point_classification(eps, want):
    m = maps.MapDef.standard(eps)
    fp = orbits.PeriodicOrbit(0, 1, [0.0], [[0.0, 0.0]], 0.0)
    assert twist.classify_twist(m, fp).twist == want


def test_fixed_point_h0():
    m = maps.MapDef.standard(1.0)
    fp = orbits.PeriodicOrbit(0, 1, [0.5], [[0.5, 0.0]], 0.0)
    assert twist.classify_twist(m, fp).twist == EXACT(0)


@settings(max_examples=60, deadline=None)
@given(st.floats(0.05, 3.95))
def test_winding_matches_elliptic_rotation_angle(eps):
    # an elliptic fixed point with b > 0 rotates clockwise by arccos(tr / 2)
    m = maps.MapDef.standard(eps)
    fp = orbits.PeriodicOrbit(0, 1, [0.0], [[0.0, 0.0]], 0.0)
    want = -math.acos(1 - eps / 2) / (2 * math.pi)
    n = 400
    assert abs(twist.winding_estimate(m, fp, n) - want) <= 1.0 / n
    assert twist.classify_twist(m, fp).twist.contains(want)


@settings(max_examples=100, deadline=None)
@given(st.floats(-20, 20), st.floats(0.01, 20), st.floats(-20, 20), st.floats(0, 2 * math.pi))
def test_basic_lift_increment_range(a, b, c, phi):
    # any positive-twist SL(2) step: the chosen branch displaces all directions
    # within a half turn of the vertical's displacement, which lies in (-pi, 0)
    d = (1 + b * c) / a if abs(a) > 1e-3 else None
    if d is None:
        return
    A = np.array([[a, b], [c, d]])
    v = np.array([math.cos(phi), math.sin(phi)])
    inc = twist.basic_lift_increment(A, v)
    ref = math.atan2(d, b) - 0.5 * math.pi
    assert -math.pi < ref < 0
    assert abs(inc - ref) <= math.pi + 1e-9
    w = A @ v
    assert math.isclose(math.cos(inc), (v @ w) / np.linalg.norm(w), abs_tol=1e-9)


def test_doubling_consistency(golden_orbits):
    for name, m, o, _ in golden_orbits:
        t = twist.classify_twist(m, o).twist
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", RuntimeWarning)
            t2 = twist.classify_twist(m, o.doubled()).twist
        if t.is_exact:
            assert t2 == t.doubled(), name
        else:
            # the doubled interval spans a full unit; the doubled orbit's demi-unit
            # interval (or half-integer) must sit inside it
            assert t.doubled().lo <= t2.lo and t2.hi <= t.doubled().hi, name


def test_random_orbits_invariants(random_orbits):
    for name, m, o in random_orbits:
        rep = twist.classify_twist(m, o, oracle_periods=2000)
        t = rep.twist
        assert t.lo >= -o.q / 2, name
        if rep.dyn_type == twist.ELLIPTIC:
            assert not t.is_exact and rep.naive_interval == t, name
        elif rep.dyn_type == twist.REGULAR_HYPERBOLIC:
            assert t.is_exact and float(t.lo).is_integer(), name
        elif rep.dyn_type == twist.INVERSE_HYPERBOLIC:
            assert t.is_exact and not float(t.lo).is_integer(), name
        w = rep.winding_estimate
        assert (abs(w - t.lo) <= 1e-3) if t.is_exact else t.contains(w, 1e-3), name
        if rep.morse_I == 0:
            assert t == EXACT(0), name


def test_golden_elliptic_naive_agrees(golden_orbits):
    for name, m, o, _ in golden_orbits:
        rep = twist.classify_twist(m, o)
        if rep.dyn_type == twist.ELLIPTIC:
            assert rep.naive_interval == rep.twist, name


def test_report_dict():
    m = maps.MapDef.standard(3.0)
    d = twist.classify_twist(m, refine(m, 1, 7, (-0.387429398213243, 0.225141203573513))).to_dict()
    assert d["twist"] == {"kind": "exact", "value": -1.5}
    assert d["residue"] > 1


def test_degenerate_flag_near_parabolic():
    # the (1,2) orbit through (0, 1/2) at eps = 2 sits exactly on trace = -2
    m = maps.MapDef.standard(2.0)
    rep = twist.classify_twist(m, orbits.newton_refine(m, 1, 2, [0.0, 0.5]))
    assert rep.dyn_type == twist.PARABOLIC_NEG and rep.degenerate_flag
