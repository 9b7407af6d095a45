"""Order properties of periodic orbits.

A ``(p, q)`` configuration is *well ordered* (Birkhoff) when every integer
translate ``(tau_ij x)_k = x_{k+i} + j`` lies entirely on one side of ``x``.
Comparing with a minimizer is done through Aubry diagrams, the piecewise
linear graphs of ``k -> x_k``; transversal crossings between a diagram and a
translate of another certify bad relative order.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import maps
from .config import DEFAULTS
from .errors import MismatchedType, NoGap


@dataclass
class OrderReport:
    birkhoff: bool
    violating_pair: Optional[tuple] = None
    crossings_vs_minimizer: Optional[int] = None
    points_in_gap: Optional[int] = None

    def to_dict(self) -> dict:
        return {"birkhoff": self.birkhoff,
                "violating_pair": None if self.violating_pair is None else list(self.violating_pair),
                "crossings_vs_minimizer": self.crossings_vs_minimizer,
                "points_in_gap": self.points_in_gap}


def _shifted_config(orbit, i: int) -> np.ndarray:
    """``x_{k+i}`` for ``k = 0..q-1`` using ``x_{k+q} = x_k + p``."""
    k = np.arange(orbit.q) + i
    return orbit.config[k % orbit.q] + orbit.p * (k // orbit.q)


def _j_window(diff: np.ndarray) -> range:
    # outside this window |j| dominates the spread of diff and d is single-signed
    return range(math.ceil(-diff.max()) - 1, math.ceil(-diff.min()) + 2)


def _mixed(d: np.ndarray, tol: float) -> bool:
    return bool(np.any(d > tol) and np.any(d < -tol))


def cyclic_order_test(orbit, *, tol=DEFAULTS) -> OrderReport:
    """Check ``x <= tau_ij x`` or ``tau_ij x <= x`` for all translates.

    ``d_k = x_{k+i} + j - x_k`` is ``q``-periodic in ``k`` and ``i`` only
    matters modulo ``q`` up to a shift of ``j`` by ``p``, so ``i = 0..q-1``
    and a finite ``j`` window suffice.  The first violating ``(i, j)`` in
    lexicographic order is reported as a witness.
    """
    x = orbit.config
    for i in range(orbit.q):
        diff = _shifted_config(orbit, i) - x
        for j in _j_window(diff):
            if _mixed(diff + j, tol.order_eq):
                return OrderReport(False, (i, j))
    return OrderReport(True)


def _cyclic_sign_changes(d: np.ndarray, margin: float) -> int:
    """Transversal zero crossings of the closed piecewise-linear curve through ``d``.

    Values within ``margin`` of zero are contacts; a contact only counts when
    the sign on either side of it differs.
    """
    s = np.sign(d) * (np.abs(d) > margin)
    s = s[s != 0]
    if s.size == 0:
        return 0
    return int(np.sum(s != np.roll(s, 1)))


def aubry_crossings(candidate, minimizer, *, tol=DEFAULTS) -> int:
    """Largest number of transversal crossings between the Aubry diagram of
    ``candidate`` and any translate ``tau_ij`` of ``minimizer`` over one period.

    Zero means ``candidate`` is comparable with every translate, that is, the
    two orbits are ordered with respect to each other.

    Raises
    ------
    MismatchedType
        If the two orbits have different ``(p, q)``.
    """
    if (candidate.p, candidate.q) != (minimizer.p, minimizer.q):
        raise MismatchedType(f"({candidate.p},{candidate.q}) vs ({minimizer.p},{minimizer.q})")
    x = candidate.config
    best = 0
    for i in range(minimizer.q):
        diff = _shifted_config(minimizer, i) - x
        for j in _j_window(diff):
            best = max(best, _cyclic_sign_changes(diff + j, tol.crossing_margin))
    return best


def gap_count(candidate, minimizer, zero_tol: float = 1e-10) -> int:
    """Points of ``candidate`` strictly between the two minimizer points nearest 0.

    Both orbits are projected to the circle ``[-0.5, 0.5)``; ``x_l < 0 < x_r``
    are the minimizer abscissas closest to 0 on either side.

    Raises
    ------
    MismatchedType
        If the two orbits have different ``(p, q)``.
    NoGap
        If the minimizer sits at 0 or has no point on one side of it.
    """
    if (candidate.p, candidate.q) != (minimizer.p, minimizer.q):
        raise MismatchedType(f"({candidate.p},{candidate.q}) vs ({minimizer.p},{minimizer.q})")
    xm = maps.wrap(minimizer.config)
    if np.any(np.abs(xm) <= zero_tol):
        raise NoGap("minimizer has a point at x = 0")
    left, right = xm[xm < 0], xm[xm > 0]
    if left.size == 0 or right.size == 0:
        raise NoGap("minimizer has no point on one side of x = 0")
    xl, xr = left.max(), right.min()
    xc = maps.wrap(candidate.config)
    return int(np.sum((xc > xl) & (xc < xr)))


def order_report(orbit, minimizer=None, *, tol=DEFAULTS) -> OrderReport:
    """:func:`cyclic_order_test` plus the minimizer comparisons when one is given."""
    rep = cyclic_order_test(orbit, tol=tol)
    if minimizer is not None:
        rep.crossings_vs_minimizer = aubry_crossings(orbit, minimizer, tol=tol)
        try:
            rep.points_in_gap = gap_count(orbit, minimizer)
        except NoGap:
            rep.points_in_gap = None
    return rep
