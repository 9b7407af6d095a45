"""The 1-cone function and the folding regions of a standard-like map.

For a twist map with derivative ``[[a, b], [c, d]]`` the 1-cone function is
``delta(z) = d/b`` evaluated at the preimage of ``z`` plus ``a/b`` at ``z``.
For the standard-like family ``b = d = 1`` and ``a = 1 + g'``, so

    delta(x, y) = 2 + g'(x) = 2 - eps V''(x)

independently of ``y``.  The folding region is ``{a <= 0}`` and the strong
folding region ``{delta <= 0}``; both are unions of vertical strips.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import optimize

from . import maps
from .config import DEFAULTS
from .errors import IllConditioned

NONE = "NONE"
USF = "USF"
TSF = "TSF"

LINE_X = {"Gamma0": 0.0, "Gamma0'": 0.5}
FAMILY_MARGIN = 1.001


def delta(m: maps.MapDef, z) -> float:
    """1-cone function at a phase point, from the derivative at ``z`` and its preimage."""
    z_prev = maps.inverse_step(m, z)
    Dp = maps.derivative(m, z_prev)
    D = maps.derivative(m, z)
    return float(Dp[1, 1] / Dp[0, 1] + D[0, 0] / D[0, 1])


def delta_closed(m: maps.MapDef, x):
    """``2 + g'(x)``; agrees with :func:`delta` on the whole family."""
    return 2.0 + m.g_prime(x)


def fold_function(m: maps.MapDef, x):
    """Entry ``a(x) = 1 + g'(x)`` of the derivative."""
    return 1.0 + m.g_prime(x)


def delta_surface(m: maps.MapDef, xs, ys) -> np.ndarray:
    """Rows ``(x, y, delta)`` on the tensor grid ``xs x ys`` (general formula, vectorized)."""
    X, Y = np.meshgrid(np.asarray(xs, float), np.asarray(ys, float), indexing="ij")
    X_prev = X - Y
    gp_prev = m.g_prime(X_prev)
    gp = m.g_prime(X)
    # preimage derivative [[1+g', 1], [g', 1]] contributes d/b = 1
    D = np.ones_like(gp_prev) + (1.0 + gp)
    return np.column_stack([X.ravel(), Y.ravel(), D.ravel()])


@dataclass(frozen=True)
class Interval:
    """Closed arc ``[lo, hi]`` of the circle with ``lo`` in ``[-0.5, 0.5)``; ``hi`` may exceed 0.5."""

    lo: float
    hi: float
    tangency: bool = False

    def __post_init__(self):
        object.__setattr__(self, "lo", float(self.lo))
        object.__setattr__(self, "hi", float(self.hi))

    def contains(self, x: float, slack: float = 0.0) -> bool:
        t = self.lo + ((x - self.lo) % 1.0)
        if t - 1.0 >= self.lo - slack:
            t -= 1.0
        return self.lo - slack <= t <= self.hi + slack

    @property
    def length(self) -> float:
        return self.hi - self.lo

    def to_list(self) -> list:
        return [self.lo, self.hi]


def sublevel_intervals(f, *, n: int = DEFAULTS.cone_grid, xtol: float = DEFAULTS.cone_xtol,
                       touch_tol: float = 1e-12) -> list:
    """Maximal arcs of the circle where the 1-periodic function ``f`` is ``<= 0``.

    ``f`` is sampled at ``n`` uniform points of ``[-0.5, 0.5)``; each sign
    change is bisected to ``xtol``.  Arcs that cross ``x = +-0.5`` are
    returned as one arc.  Grid local minima that stay positive are polished
    with a bounded scalar minimization; a minimum within ``touch_tol`` of zero
    yields a single-point arc with ``tangency=True``.
    """
    xs = -0.5 + np.arange(n) / n
    vals = np.asarray(f(xs), dtype=float)
    neg = vals <= 0.0
    h = 1.0 / n
    if np.all(neg):
        return [Interval(-0.5, 0.5)]

    def root(x0, x1):
        f0, f1 = float(f(x0)), float(f(x1))
        if f0 == 0.0:
            return x0
        if f1 == 0.0:
            return x1
        return optimize.brentq(lambda t: float(f(t)), x0, x1, xtol=xtol, rtol=4 * np.finfo(float).eps)

    out = []
    if np.any(neg):
        start = int(np.argmin(neg))        # first index outside the region
        order = (start + np.arange(n)) % n
        k = 0
        while k < n:
            idx = order[k]
            if not neg[idx]:
                k += 1
                continue
            first = k
            while k < n and neg[order[k]]:
                k += 1
            last = k - 1
            i0, i1 = start + first, start + last     # unwrapped indices
            lo = root(xs[0] + (i0 - 1) * h, xs[0] + i0 * h)
            hi = root(xs[0] + i1 * h, xs[0] + (i1 + 1) * h)
            shift = math.floor(lo + 0.5)
            out.append(Interval(lo - shift, hi - shift))
    # tangencies: positive local minima on the grid that touch zero
    for i in range(n):
        v, vl, vr = vals[i], vals[i - 1], vals[(i + 1) % n]
        # a smooth minimum that dips to zero near xs[i] has v below the neighbour rise
        near = v <= 2.0 * max(vl - v, vr - v) + touch_tol
        if v > 0 and v <= vl and v <= vr and near and not neg[i - 1] and not neg[(i + 1) % n]:
            res = optimize.minimize_scalar(lambda t: float(f(t)), bounds=(xs[i] - h, xs[i] + h),
                                           method="bounded", options={"xatol": 1e-12})
            if res.fun < 0.0:
                # a dip narrower than the grid spacing
                lo = root(xs[i] - h, float(res.x))
                hi = root(float(res.x), xs[i] + h)
                shift = math.floor(lo + 0.5)
                out.append(Interval(lo - shift, hi - shift))
            elif res.fun <= touch_tol:
                x = float(maps.wrap(res.x))
                out.append(Interval(x, x, tangency=True))
    merged = []
    for iv in sorted(out, key=lambda iv: iv.lo):
        if iv.length == 0.0 and any(o.contains(iv.lo, xtol) for o in merged):
            continue
        if iv.length == 0.0 and not iv.tangency:
            # a vanishing grid sample with positive neighbours
            iv = Interval(iv.lo, iv.hi, tangency=True)
        merged.append(iv)
    return merged


def folding_intervals(m: maps.MapDef, *, tol=DEFAULTS) -> list:
    """Arcs where ``1 + g'(x) <= 0``."""
    if m.epsilon == 0.0:
        return []
    return sublevel_intervals(lambda x: fold_function(m, x), n=tol.cone_grid, xtol=tol.cone_xtol)


def strong_folding_intervals(m: maps.MapDef, *, tol=DEFAULTS) -> list:
    """Arcs where ``delta(x) = 2 + g'(x) <= 0``."""
    if m.epsilon == 0.0:
        return []
    return sublevel_intervals(lambda x: delta_closed(m, x), n=tol.cone_grid, xtol=tol.cone_xtol)


def max_vpp(m: maps.MapDef, n: int = DEFAULTS.cone_grid) -> tuple[float, float]:
    """Maximum of ``V''`` over a period and where it is attained (grid plus polish)."""
    xs = -0.5 + np.arange(n) / n
    v = np.asarray(m.vpp(xs), dtype=float)
    i = int(np.argmax(v))
    h = 1.0 / n
    res = optimize.minimize_scalar(lambda t: -float(m.vpp(t)), bounds=(xs[i] - h, xs[i] + h),
                                   method="bounded", options={"xatol": 1e-13})
    best = max(-res.fun, v[i])
    at = float(maps.wrap(res.x)) if -res.fun >= v[i] else float(xs[i])
    return float(best), at


def thresholds(m: maps.MapDef, n: int = DEFAULTS.cone_grid) -> tuple[float, float]:
    """Folding threshold ``1 / max V''`` and strong folding threshold ``2 / max V''``.

    Raises
    ------
    IllConditioned
        If ``max V'' <= 0``: the family never folds.
    """
    vmax, _ = max_vpp(m, n)
    if vmax <= 0:
        raise IllConditioned("max V'' <= 0: no folding at any epsilon")
    return 1.0 / vmax, 2.0 / vmax


@dataclass
class ConeReport:
    epsilon: float
    epsilon_prime: float
    epsilon_star: float
    folding_intervals: list = field(default_factory=list)
    strong_folding_intervals: list = field(default_factory=list)
    classification: str = NONE
    lines_included: list = field(default_factory=list)
    tangency: bool = False
    family_classification: str = NONE

    def to_dict(self) -> dict:
        def fin(v):
            return v if math.isfinite(v) else None
        return {"epsilon": self.epsilon,
                "epsilon_prime": fin(self.epsilon_prime),
                "epsilon_star": fin(self.epsilon_star),
                "folding_intervals": [iv.to_list() for iv in self.folding_intervals],
                "strong_folding_intervals": [iv.to_list() for iv in self.strong_folding_intervals],
                "classification": self.classification,
                "lines_included": list(self.lines_included),
                "tangency": self.tangency,
                "family_classification": self.family_classification}


def classify_sf(m: maps.MapDef, *, tol=DEFAULTS) -> ConeReport:
    """Folding data of ``m`` and its USF / TSF / MULTI(n) label.

    ``classification`` describes the strong folding region at the map's own
    ``epsilon``.  ``family_classification`` is the label the family carries
    once it folds strongly: below ``FAMILY_MARGIN * epsilon_star`` it is
    evaluated at that parameter instead.  When ``max V'' <= 0`` the
    thresholds are reported as infinite.
    """
    try:
        eps_prime, eps_star = thresholds(m, tol.cone_grid)
    except IllConditioned:
        eps_prime = eps_star = math.inf
    fold = folding_intervals(m, tol=tol)
    strong = strong_folding_intervals(m, tol=tol)
    lines = [name for name, x in LINE_X.items() if any(iv.contains(x, 1e-12) for iv in strong)]
    label = _label(strong)
    family = label
    if math.isfinite(eps_star) and m.epsilon < FAMILY_MARGIN * eps_star:
        family = _label(strong_folding_intervals(m.with_epsilon(FAMILY_MARGIN * eps_star), tol=tol))
    return ConeReport(m.epsilon, eps_prime, eps_star, fold, strong, label, lines,
                      tangency=any(iv.tangency for iv in fold + strong),
                      family_classification=family)


def _label(strong: list) -> str:
    n = len(strong)
    if n == 0:
        return NONE
    if n == 1:
        return USF
    if n == 2 and all(sum(iv.contains(x, 1e-12) for iv in strong) == 1 for x in LINE_X.values()):
        return TSF
    return f"MULTI({n})"
