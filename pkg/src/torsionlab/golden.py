"""Reproduction of the bundled reference examples.

Seeds and expected values live in ``data/fixtures.json`` (override the path
with the ``TORSIONLAB_FIXTURES`` environment variable).  Each orbit is
refined from its seed point, then run through the spectral, twist, order
and action computations and compared field by field with the fixture.
"""
from __future__ import annotations

import json
import math
import os
import warnings
from dataclasses import dataclass, field
from importlib import resources
from typing import Any

import numpy as np

from . import maps, order, orbits, spectral, twist
from .config import DEFAULTS
from .errors import NoGap, ValidationError

ENV_VAR = "TORSIONLAB_FIXTURES"


@dataclass
class Check:
    orbit: str
    field: str
    expected: Any
    actual: Any
    delta: float | None = None
    tol: float | None = None
    ok: bool = True

    def to_dict(self) -> dict:
        return dict(self.__dict__)

    def line(self) -> str:
        mark = "ok  " if self.ok else "FAIL"
        extra = "" if self.delta is None else f"  delta={self.delta:.3e} (tol {self.tol:g})"
        return f"  [{mark}] {self.orbit}.{self.field}: expected {self.expected}, got {self.actual}{extra}"


@dataclass
class ExampleReport:
    number: int
    note: str
    checks: list = field(default_factory=list)
    orbits: dict = field(default_factory=dict)
    reports: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.checks)

    def failures(self) -> list:
        return [c for c in self.checks if not c.ok]

    def check(self, orbit: str, name: str):
        return next(c for c in self.checks if c.orbit == orbit and c.field == name)

    def to_dict(self) -> dict:
        return {"example": self.number, "note": self.note, "passed": self.passed,
                "checks": [c.to_dict() for c in self.checks],
                "orbits": {k: o.to_dict() for k, o in self.orbits.items()},
                "twist": {k: r.to_dict() for k, r in self.reports.items()}}

    def summary(self) -> str:
        head = f"example {self.number}: {'PASS' if self.passed else 'FAIL'}  ({self.note})"
        return "\n".join([head] + [c.line() for c in self.checks])


def fixtures_path() -> str:
    env = os.environ.get(ENV_VAR)
    if env:
        return env
    return str(resources.files("torsionlab") / "data" / "fixtures.json")


def load_fixtures(path: str | None = None) -> dict:
    path = path or fixtures_path()
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ValidationError(f"cannot read fixtures {path}: {exc}") from exc
    if "examples" not in data:
        raise ValidationError(f"fixtures {path} have no 'examples' section")
    return data


def _twist_from_dict(d: dict) -> twist.Twist:
    if d["kind"] == "exact":
        return twist.Twist.exact(d["value"])
    return twist.Twist.interval(d["lo"], d["hi"])


def refine_example_orbit(m, p, q, seed, point_tol=1e-8, tol=DEFAULTS):
    """Refine an orbit from a seed point and confirm it still passes through it."""
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        orbit = orbits.refine_from_point(m, p, q, seed, tol=tol)
    return orbit, orbits.passes_through(orbit, seed, point_tol)


def run_example(n: int, fixtures: dict | None = None, *, oracle_periods: int = 0,
                tol=DEFAULTS) -> ExampleReport:
    """Run the full pipeline on example ``n`` and diff against the fixtures.

    Raises
    ------
    ValidationError
        If ``n`` is not an example in the fixture file.
    """
    fixtures = fixtures or load_fixtures()
    ex = fixtures["examples"].get(str(n))
    if ex is None:
        raise ValidationError(f"no example {n}; available: {sorted(fixtures['examples'])}")
    tols = {"point": 1e-8, "residue": 1e-8, "eigenvalue": 1e-8, "action": 1e-9}
    tols.update(fixtures.get("tolerances", {}))
    m = maps.MapDef.from_dict(ex["map"])
    p, q = int(ex["p"]), int(ex["q"])
    rep = ExampleReport(int(n), ex.get("note", ""))

    for entry in ex["orbits"]:
        label = entry["label"]
        orbit, through = refine_example_orbit(m, p, q, entry["seed"], tols["point"], tol)
        rep.orbits[label] = orbit
        rep.checks.append(Check(label, "passes_through_seed", True, through, ok=through))
        rep.checks.append(Check(label, "closure_residual", f"<= {tol.closure:g}",
                                orbit.closure_residual, ok=orbit.closure_residual <= tol.closure))
        rep.reports[label] = twist.classify_twist(m, orbit, oracle_periods=oracle_periods or None,
                                                  tol=tol)

    minimizer = rep.orbits.get(ex.get("minimizer", ""))
    for entry in ex["orbits"]:
        label = entry["label"]
        orbit, tr = rep.orbits[label], rep.reports[label]
        for key, want in entry.get("expect", {}).items():
            rep.checks.append(_compare(m, label, key, want, orbit, tr, minimizer, tols, tol))
    return rep


def _num(label, name, want, got, tolerance):
    delta = abs(got - want)
    return Check(label, name, want, got, delta, tolerance, bool(delta <= tolerance))


def _compare(m, label, key, want, orbit, tr, minimizer, tols, tol) -> Check:
    if key == "residue":
        return _num(label, key, want, orbits.residue_and_trace(m, orbit)[0], tols["residue"])
    if key == "action":
        return _num(label, key, want, orbits.action(m, orbit), tols["action"])
    if key == "eigenvalues":
        got = spectral.eigenvalues_sym(spectral.hessian_config(m, orbit))
        want = np.asarray(want, dtype=float)
        delta = float(np.max(np.abs(got - want))) if got.shape == want.shape else math.inf
        return Check(label, key, want.tolist(), got.tolist(), delta, tols["eigenvalue"],
                     delta <= tols["eigenvalue"])
    if key == "morse_I":
        return Check(label, key, want, tr.morse_I, ok=tr.morse_I == want)
    if key == "dyn_type":
        return Check(label, key, want, tr.dyn_type, ok=tr.dyn_type == want)
    if key == "twist":
        expected = _twist_from_dict(want)
        return Check(label, key, str(expected), str(tr.twist), ok=tr.twist == expected)
    if key == "birkhoff":
        got = order.cyclic_order_test(orbit, tol=tol).birkhoff
        return Check(label, key, want, got, ok=got == want)
    if key == "gap_count":
        try:
            got = order.gap_count(orbit, minimizer)
        except (NoGap, AttributeError) as exc:
            return Check(label, key, want, f"error: {exc}", ok=False)
        return Check(label, key, want, got, ok=got == want)
    if key == "aubry_crossings":
        got = order.aubry_crossings(orbit, minimizer, tol=tol)
        return Check(label, key, want, got, ok=got == want)
    raise ValidationError(f"unknown expectation {key!r} for {label}")
