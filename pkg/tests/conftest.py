import math
import warnings

import numpy as np
import pytest

from torsionlab import golden, maps, orbits, twist
from torsionlab.errors import NumericalError

ACCEPTANCE_RESULTS = {}


def make_map(preset, eps):
    return {"standard": maps.MapDef.standard,
            "three-harmonic": maps.MapDef.three_harmonic,
            "rational-harmonic": maps.MapDef.rational_harmonic}[preset](eps)


def random_near_integrable_orbits(n=50, seed=20240611):
    """``n`` orbits of random presets with eps in [0.01, 0.2] and q in 2..8.

    Newton starts from the uniform configuration ``x_i = x0 + i p / q`` with
    ``x0`` either 0 or ``1/(2q)``.  Orbits flagged degenerate are redrawn.
    """
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < n:
        preset = rng.choice(maps.PRESETS)
        eps = float(rng.uniform(0.01, 0.2))
        q = int(rng.integers(2, 9))
        p = int(rng.integers(1, q))
        if math.gcd(p, q) != 1:
            continue
        x0 = float(rng.choice([0.0, 0.5 / q]))
        m = make_map(preset, eps)
        try:
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", RuntimeWarning)
                o = orbits.newton_refine(m, p, q, x0 + np.arange(q) * p / q)
        except NumericalError:
            continue
        # skip orbits so close to a resonance that a Hessian eigenvalue is numerically zero
        if orbits.least_period(o) == q and not twist.classify_twist(m, o).degenerate_flag:
            out.append((f"random{len(out)}:{preset}:eps={eps:.3f}:({p},{q})", m, o))
    return out


@pytest.fixture(scope="session")
def golden_reports():
    return {n: golden.run_example(n) for n in range(1, 6)}


@pytest.fixture(scope="session")
def golden_orbits(golden_reports):
    """``(name, map, orbit, label)`` for every bundled example orbit."""
    fx = golden.load_fixtures()
    out = []
    for n, rep in golden_reports.items():
        m = maps.MapDef.from_dict(fx["examples"][str(n)]["map"])
        for label, o in rep.orbits.items():
            out.append((f"ex{n}:{label}", m, o, label))
    return out


@pytest.fixture(scope="session")
def random_orbits():
    return random_near_integrable_orbits()


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_RESULTS):
        ok, detail = ACCEPTANCE_RESULTS[k]
        terminalreporter.write_line(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
