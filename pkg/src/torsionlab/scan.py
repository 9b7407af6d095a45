"""Parameter continuation of periodic orbits and phase-portrait emission.

:func:`scan_epsilon` follows one orbit along a monotone grid of ``eps``
values.  Each step predicts the new configuration from the tangent
``dx/deps = -H^{-1} force(x)`` and polishes it with Newton.  Between
consecutive rows where ``trace - 2`` or ``trace + 2`` changes sign the
crossing is located by Brent's method on the continued branch.
"""
from __future__ import annotations

import csv
import math
import warnings
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy import optimize

from . import cone, maps, orbits, order, twist
from .config import DEFAULTS
from .errors import (InconsistentSpectra, NoConvergence, NumericalError, SeedInvalid,
                     SingularJacobian, ValidationError)

OK = "OK"
CONTINUATION_LOST = "CONTINUATION_LOST"


@dataclass
class ScanRow:
    epsilon: float
    orbit_id: str
    trace: float = math.nan
    residue: float = math.nan
    twist: Optional[twist.Twist] = None
    dyn_type: Optional[str] = None
    birkhoff: Optional[bool] = None
    delta_min: float = math.nan
    status: str = OK
    jump: bool = False
    config: Optional[np.ndarray] = None

    def to_dict(self) -> dict:
        return {"epsilon": self.epsilon, "orbit_id": self.orbit_id, "status": self.status,
                "trace": self.trace, "residue": self.residue,
                "twist": None if self.twist is None else self.twist.to_dict(),
                "dyn_type": self.dyn_type, "birkhoff": self.birkhoff,
                "delta_min": self.delta_min, "jump": self.jump,
                "config": None if self.config is None else self.config.tolist()}


@dataclass
class Threshold:
    level: float          # +2 or -2
    epsilon: float
    orbit_id: str
    before: Optional[twist.Twist] = None
    after: Optional[twist.Twist] = None

    def to_dict(self) -> dict:
        return {"level": self.level, "epsilon": self.epsilon, "orbit_id": self.orbit_id,
                "before": None if self.before is None else self.before.to_dict(),
                "after": None if self.after is None else self.after.to_dict()}


@dataclass
class ScanResult:
    rows: list = field(default_factory=list)
    thresholds: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"rows": [r.to_dict() for r in self.rows],
                "thresholds": [t.to_dict() for t in self.thresholds]}

    def regimes(self) -> list:
        """Consecutive distinct twist classifications along the branch."""
        out = []
        for r in self.rows:
            if r.twist is not None and (not out or out[-1] != r.twist):
                out.append(r.twist)
        return out


def config_tangent(m: maps.MapDef, config) -> np.ndarray:
    """``dx/deps`` along a branch of critical points of the action."""
    H = orbits.action_hessian(m, config)
    return -np.linalg.solve(H, np.atleast_1d(m.force(np.asarray(config, float))))


def _continue(m: maps.MapDef, p, q, config, eps_from, eps_to, allow_multiple, tol):
    x = np.asarray(config, float)
    try:
        x = x + (eps_to - eps_from) * config_tangent(m.with_epsilon(eps_from), x)
    except np.linalg.LinAlgError:
        pass
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        return orbits.newton_refine(m.with_epsilon(eps_to), p, q, x,
                                    allow_multiple=allow_multiple, tol=tol)


def _classify_row(m: maps.MapDef, orbit, eps, orbit_id, tol) -> ScanRow:
    R, tr, _ = orbits.residue_and_trace(m, orbit)
    try:
        rep = twist.classify_twist(m, orbit, tol=tol)
        tw, dyn = rep.twist, rep.dyn_type
    except InconsistentSpectra:
        tw, dyn = None, twist.dynamical_type(tr, tol.parabolic)
    return ScanRow(eps, orbit_id, tr, R, tw, dyn,
                   order.cyclic_order_test(orbit, tol=tol).birkhoff,
                   float(np.min(cone.delta_closed(m, orbit.config))),
                   config=orbit.config.copy())


def scan_epsilon(family: maps.MapDef, p: int, q: int, seed, eps_grid, *,
                 orbit_id: str = "branch", allow_multiple: bool = False,
                 threshold_xtol: float = DEFAULTS.threshold_xtol, tol=DEFAULTS) -> ScanResult:
    """Continue a ``(p, q)`` orbit over ``eps_grid`` and mark trace = +-2 crossings.

    Parameters
    ----------
    family : MapDef
        The map family; its own ``epsilon`` is ignored.
    seed : PeriodicOrbit or sequence of float
        Orbit (or configuration) at ``eps_grid[0]``.

    Raises
    ------
    ValidationError
        If the grid is empty or not strictly monotone.
    SeedInvalid
        If the seed does not refine to a nearby orbit at the first grid point.
    """
    grid = np.asarray(eps_grid, dtype=float)
    if grid.ndim != 1 or grid.size == 0:
        raise ValidationError("eps_grid must be a non-empty 1-d sequence")
    steps = np.diff(grid)
    if grid.size > 1 and not (np.all(steps > 0) or np.all(steps < 0)):
        raise ValidationError("eps_grid must be strictly monotone")
    if np.any(grid < 0):
        raise ValidationError("eps_grid values must be >= 0")
    config0 = np.asarray(getattr(seed, "config", seed), dtype=float)
    if config0.shape != (q,):
        raise SeedInvalid(f"seed must have {q} configuration entries")
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", RuntimeWarning)
            orbit = orbits.newton_refine(family.with_epsilon(grid[0]), p, q, config0,
                                         allow_multiple=allow_multiple, tol=tol)
    except (NoConvergence, SingularJacobian) as exc:
        raise SeedInvalid(f"seed does not refine at eps = {grid[0]}: {exc}") from exc
    if np.max(np.abs(orbit.config - config0)) > 1e-3:
        raise SeedInvalid("seed is not close to an orbit at the first grid point")

    result = ScanResult()
    prev_row, prev_orbit = None, None
    # last row strictly off each level, so a grid point landing on it is not missed
    anchor = {2.0: None, -2.0: None}
    for eps in grid:
        m = family.with_epsilon(eps)
        if prev_orbit is not None:
            try:
                orbit = _continue(family, p, q, prev_orbit.config, prev_row.epsilon, eps,
                                  allow_multiple, tol)
            except NumericalError:
                result.rows.append(ScanRow(float(eps), orbit_id, status=CONTINUATION_LOST))
                break
        row = _classify_row(m, orbit, float(eps), orbit_id, tol)
        if prev_row is not None:
            row.jump = _is_jump(family, prev_row, row)
        for level in (2.0, -2.0):
            off = row.trace - level
            if abs(off) <= tol.parabolic:
                continue
            a = anchor[level]
            if a is not None and (a.trace - level) * off < 0:
                result.thresholds.append(
                    _locate(family, p, q, a, level, row.epsilon, orbit_id,
                            allow_multiple, threshold_xtol, tol, row))
            anchor[level] = row
        result.rows.append(row)
        prev_row, prev_orbit = row, orbit
    return result


def _is_jump(family, prev: ScanRow, row: ScanRow) -> bool:
    """Consecutive configurations further apart than ten tangent-predicted steps."""
    d_eps = abs(row.epsilon - prev.epsilon)
    slopes = []
    for r in (prev, row):
        try:
            slopes.append(np.max(np.abs(config_tangent(family.with_epsilon(r.epsilon), r.config))))
        except np.linalg.LinAlgError:
            return False
    moved = np.max(np.abs(row.config - prev.config))
    return bool(moved > 10.0 * d_eps * max(slopes) + 1e-12)


def _locate(family, p, q, prev_row, level, eps_hi, orbit_id, allow_multiple, xtol, tol, row):
    def f(eps):
        if eps == prev_row.epsilon:
            return prev_row.trace - level
        o = _continue(family, p, q, prev_row.config, prev_row.epsilon, eps, allow_multiple, tol)
        return orbits.residue_and_trace(family.with_epsilon(eps), o)[1] - level

    try:
        eps_c = optimize.brentq(f, prev_row.epsilon, eps_hi, xtol=xtol)
    except (NumericalError, ValueError):
        eps_c = math.nan
    return Threshold(level, float(eps_c), orbit_id, prev_row.twist, row.twist)


# -- phase portraits ----------------------------------------------------------

def _fmt(v: float) -> str:
    return format(float(v), ".17g")


def phase_portrait_rows(m: maps.MapDef, seeds, iterations: int):
    """Yield ``(seed_id, n, x mod 1 in [-0.5, 0.5), y)`` for ``n = 0..iterations``."""
    if iterations < 1:
        raise ValidationError("iterations must be >= 1")
    for sid, z0 in enumerate(seeds):
        traj = maps.iterate(m, z0, iterations)
        for n, (x, y) in enumerate(traj):
            yield sid, n, float(maps.wrap(x)), float(y)


def phase_portrait(m: maps.MapDef, seeds, iterations: int, stream) -> int:
    """Write the portrait CSV (header plus rows, 17 significant digits); returns row count.

    An empty seed list writes nothing at all.
    """
    seeds = list(seeds)
    if not seeds:
        return 0
    w = csv.writer(stream, lineterminator="\n")
    w.writerow(["seed_id", "n", "x", "y"])
    count = 0
    for sid, n, x, y in phase_portrait_rows(m, seeds, iterations):
        w.writerow([sid, n, _fmt(x), _fmt(y)])
        count += 1
    return count


def write_csv(stream, header, rows) -> None:
    w = csv.writer(stream, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([_fmt(v) if isinstance(v, (float, np.floating)) else v for v in r])
