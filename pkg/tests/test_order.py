import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from torsionlab import maps, order, orbits
from torsionlab.errors import MismatchedType, NoGap


def refine(m, p, q, z):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        return orbits.refine_from_point(m, p, q, z)


def make(p, config):
    config = np.asarray(config, float)
    return orbits.PeriodicOrbit(p, config.size, config,
                                np.column_stack([config, np.zeros_like(config)]), 0.0)


def brute_force_birkhoff(orbit, tol=1e-10):
    """Check all translates with |i| <= 3q and a j window wide enough for those i."""
    q, p, x = orbit.q, orbit.p, orbit.config

    def xk(k):
        return x[k % q] + p * (k // q)

    span = 3 * abs(p) + 4 + int(np.ptp(x)) + 1
    for i in range(-3 * q, 3 * q + 1):
        for j in range(-span, span + 1):
            d = np.array([xk(k + i) + j - xk(k) for k in range(q)])
            if np.any(d > tol) and np.any(d < -tol):
                return False
    return True


def brute_force_crossings(cand, mini, margin=1e-12):
    """Crossings of two Aubry diagrams over k in (0, q], max over translates.

    A crossing is either a strict sign change of the difference inside a unit
    segment, or a touching vertex whose two neighbours lie on opposite sides.
    """
    q, p = cand.q, cand.p

    def ext(x, k):
        return x[k % q] + p * (k // q)

    best = 0
    for i in range(-q, 2 * q):
        for j in range(-3 * abs(p) - 6, 3 * abs(p) + 7):
            d = [ext(mini.config, k + i) + j - ext(cand.config, k) for k in range(q + 2)]
            count = 0
            for k in range(1, q + 1):
                if abs(d[k]) <= margin:
                    count += d[k - 1] * d[k + 1] < 0
                elif abs(d[k - 1]) > margin and d[k - 1] * d[k] < 0:
                    count += 1
            best = max(best, count)
    return best


@pytest.mark.parametrize("eps,p,q,z,want", [
    (3.0, 1, 7, (-0.5, 0.008258333079127612), True),
    (1.4578, 8, 13, (0.5, 0.7237177352891645), False),
    (2.87, 3, 5, (0.5, 0.323020669964897189), False),
])
def test_cyclic_order_examples(eps, p, q, z, want):
    o = refine(maps.MapDef.standard(eps), p, q, z)
    rep = order.cyclic_order_test(o)
    assert rep.birkhoff is want
    assert (rep.violating_pair is None) is want
    assert brute_force_birkhoff(o) is want


def test_example4_all_ordered():
    m = maps.MapDef.three_harmonic(1.0)
    for z in [(0, 0.5), (0.099868507451075, 0.699123941758688),
              (0.900131492548925, 0.300876058241312), (0.220481551875563, 0.440963103751125)]:
        assert order.cyclic_order_test(refine(m, 1, 2, z)).birkhoff


def test_witness_is_a_real_violation():
    o = refine(maps.MapDef.standard(1.4578), 8, 13, (0.5, 0.7237177352891645))
    i, j = order.cyclic_order_test(o).violating_pair
    d = order._shifted_config(o, i) + j - o.config
    assert d.max() > 1e-10 and d.min() < -1e-10


def test_invariance_under_translation_and_shift(golden_orbits):
    for name, m, o, _ in golden_orbits:
        want = order.cyclic_order_test(o).birkhoff
        for s in range(o.q):
            assert order.cyclic_order_test(o.shifted(s).translated(3)).birkhoff is want, name


config_s = st.integers(2, 6).flatmap(lambda q: st.tuples(
    st.integers(-3, 3), st.lists(st.floats(-1.5, 1.5), min_size=q, max_size=q)))


@settings(max_examples=120, deadline=None)
@given(config_s)
def test_window_matches_brute_force(pc):
    p, xs = pc
    o = make(p, np.sort(xs) if p >= 0 else xs)
    assert order.cyclic_order_test(o).birkhoff is brute_force_birkhoff(o)


@settings(max_examples=80, deadline=None)
@given(config_s, st.integers(0, 2**31))
def test_crossings_match_segment_oracle(pc, seed):
    p, xs = pc
    rng = np.random.default_rng(seed)
    a = make(p, xs)
    b = make(p, np.asarray(xs) + rng.normal(0, 0.3, len(xs)))
    assert order.aubry_crossings(a, b) == brute_force_crossings(a, b)


def test_aubry_crossings_examples():
    m = maps.MapDef.standard(3.0)
    mn = refine(m, 1, 7, (-0.5, 0.008258333079127612))
    mm = refine(m, 1, 7, (0.0, 0.390375216334041475))
    assert order.aubry_crossings(mn.translated(1), mn) == 0
    assert order.aubry_crossings(mn.shifted(1), mn) == 0
    assert order.aubry_crossings(mm, mn) == 0
    m1 = maps.MapDef.standard(1.4578)
    bad = refine(m1, 8, 13, (0.5, 0.7237177352891645))
    mn1 = refine(m1, 8, 13, (0.5, 0.693821664066481))
    n = order.aubry_crossings(bad, mn1)
    assert n >= 2 and n % 2 == 0 and n == brute_force_crossings(bad, mn1)
    with pytest.raises(MismatchedType):
        order.aubry_crossings(bad, mn)


def test_gap_count():
    m = maps.MapDef.standard(1.4578)
    mn = refine(m, 8, 13, (0.5, 0.693821664066481))
    for z in [(0.5, 0.7237177352891645), (0.5, 0.723372427461496)]:
        assert order.gap_count(refine(m, 8, 13, z), mn) == 2
    assert order.gap_count(mn, mn) == 0
    mm = refine(m, 8, 13, (0.0, 0.586319735666097))
    with pytest.raises(NoGap):
        order.gap_count(mn, mm)
    with pytest.raises(MismatchedType):
        order.gap_count(mn, make(1, [0.1, 0.6]))


def test_minimizers_are_birkhoff(random_orbits):
    for name, m, o in random_orbits:
        if np.all(np.linalg.eigvalsh(orbits.action_hessian(m, o.config)) > 0):
            assert order.cyclic_order_test(o).birkhoff, name
            mn = o
            assert order.aubry_crossings(mn, mn) == 0


def test_order_report_dict():
    m = maps.MapDef.standard(1.4578)
    mn = refine(m, 8, 13, (0.5, 0.693821664066481))
    bad = refine(m, 8, 13, (0.5, 0.7237177352891645))
    d = order.order_report(bad, mn).to_dict()
    assert d["birkhoff"] is False and d["points_in_gap"] == 2 and d["crossings_vs_minimizer"] >= 2
