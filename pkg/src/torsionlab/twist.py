"""Twist (torsion) number of periodic orbits.

Three independent routes are provided:

* :func:`classify_twist` reads the answer off the Morse indices of the
  Hessian ``H`` and its companion ``H-``;
* :func:`naive_interval` counts sign changes of a tangent vector's first
  coordinate over one period (elliptic orbits only);
* :func:`winding_estimate` follows a tangent vector for many periods and
  averages its clockwise winding, using the basic lift of every step.

Twist numbers of positive twist maps are ``<= 0``; an exact value lies in
``Z/2`` and otherwise the number sits in an open demi-unit interval.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import maps, orbits, spectral
from .config import DEFAULTS
from .errors import (InconsistentSpectra, NotElliptic, NotPositiveTwist,
                     ValidationError, ZeroCrossingAmbiguous)

REGULAR_HYPERBOLIC = "REGULAR_HYPERBOLIC"
ELLIPTIC = "ELLIPTIC"
INVERSE_HYPERBOLIC = "INVERSE_HYPERBOLIC"
PARABOLIC_POS = "PARABOLIC_POS"
PARABOLIC_NEG = "PARABOLIC_NEG"


@dataclass(frozen=True)
class Twist:
    """Exact value (``lo == hi``) or open interval ``(lo, hi)`` of length 1/2."""

    lo: float
    hi: float

    @classmethod
    def exact(cls, value: float) -> "Twist":
        return cls(float(value), float(value))

    @classmethod
    def interval(cls, lo: float, hi: float) -> "Twist":
        return cls(float(lo), float(hi))

    @property
    def is_exact(self) -> bool:
        return self.lo == self.hi

    @property
    def value(self) -> Optional[float]:
        return self.lo if self.is_exact else None

    def doubled(self) -> "Twist":
        return Twist(2 * self.lo, 2 * self.hi)

    def contains(self, t: float, slack: float = 0.0) -> bool:
        """Closed-interval membership widened by ``slack``."""
        return self.lo - slack <= t <= self.hi + slack

    def to_dict(self) -> dict:
        if self.is_exact:
            return {"kind": "exact", "value": self.lo}
        return {"kind": "interval", "lo": self.lo, "hi": self.hi}

    def __str__(self):
        if self.is_exact:
            return f"Exact({self.lo:g})"
        return f"Interval({self.lo:g}, {self.hi:g})"


@dataclass
class TwistReport:
    dyn_type: str
    trace: float
    morse_I: int
    morse_Iprime: Optional[int]
    twist: Twist
    degenerate_flag: bool = False
    alternatives: list = field(default_factory=list)
    winding_estimate: Optional[float] = None
    naive_interval: Optional[Twist] = None

    def to_dict(self) -> dict:
        return {
            "dyn_type": self.dyn_type,
            "trace": self.trace,
            "residue": (2.0 - self.trace) / 4.0,
            "morse_I": self.morse_I,
            "morse_Iprime": self.morse_Iprime,
            "twist": self.twist.to_dict(),
            "degenerate_flag": self.degenerate_flag,
            "alternatives": [t.to_dict() for t in self.alternatives],
            "winding_estimate": self.winding_estimate,
            "naive_interval": None if self.naive_interval is None else self.naive_interval.to_dict(),
        }


def dynamical_type(trace: float, tol: float = DEFAULTS.parabolic) -> str:
    if abs(trace - 2.0) <= tol:
        return PARABOLIC_POS
    if abs(trace + 2.0) <= tol:
        return PARABOLIC_NEG
    if trace > 2.0:
        return REGULAR_HYPERBOLIC
    if trace < -2.0:
        return INVERSE_HYPERBOLIC
    return ELLIPTIC


# -- single matrices ----------------------------------------------------------

@dataclass(frozen=True)
class LiftRegion:
    label: str          # "H0", "E-1", "H'-1", "P+" or "P-"
    trace: float
    b_minus_c: float

    @property
    def twist(self) -> Twist:
        """Translation number of the basic lift in this region."""
        if self.label in ("H0", "P+"):
            return Twist.exact(0.0)
        if self.label in ("H'-1", "P-"):
            return Twist.exact(-0.5)
        return Twist.interval(-0.5, 0.0)


def basic_lift_region(M, tol: float = DEFAULTS.parabolic) -> LiftRegion:
    """Region of the universal cover of SL(2,R) holding the basic lift of ``M``.

    Raises
    ------
    NotPositiveTwist
        If the ``b`` entry of ``M`` is not positive.
    """
    M = np.asarray(M, dtype=float)
    if abs(np.linalg.det(M) - 1.0) > 1e-9:
        raise ValidationError("matrix is not in SL(2,R)")
    a, b, c, d = M.ravel()
    if b <= 0:
        raise NotPositiveTwist("basic lift requires b > 0")
    tr = a + d
    if abs(tr - 2.0) <= tol:
        label = "P+"
    elif abs(tr + 2.0) <= tol:
        label = "P-"
    elif tr > 2.0:
        label = "H0"
    elif tr < -2.0:
        label = "H'-1"
    else:
        label = "E-1"
    return LiftRegion(label, float(tr), float(b - c))


def basic_lift_increment(A, v, w=None) -> float:
    """Signed angle (radians) by which the basic lift of ``A`` turns direction ``v``.

    The raw angle between ``v`` and ``A v`` is only known modulo ``2 pi``.  The
    basic lift turns the vertical by ``atan2(d, b) - pi/2`` (in ``(-pi, 0)``)
    and its displacement varies by at most ``pi`` over all directions, so the
    branch closest to the vertical's displacement is the right one.
    """
    A = np.asarray(A, dtype=float)
    if w is None:
        w = A @ v
    raw = math.atan2(v[0] * w[1] - v[1] * w[0], v[0] * w[0] + v[1] * w[1])
    ref = math.atan2(A[1, 1], A[0, 1]) - 0.5 * math.pi
    return raw + 2.0 * math.pi * round((ref - raw) / (2.0 * math.pi))


# -- orbits -------------------------------------------------------------------

def winding_estimate(m: maps.MapDef, orbit, n_periods: int = 2000) -> float:
    """Average clockwise winding per period of a tangent vector, in turns.

    Starts from ``(1, 0)`` at the first orbit point; differs from the twist
    number by at most ``1 / (2 n_periods)``.
    """
    if n_periods < 1:
        raise ValidationError("n_periods must be >= 1")
    mats = maps.tangent_matrices(m, orbit.config)
    v = np.array([1.0, 0.0])
    theta = 0.0
    for _ in range(n_periods):
        for A in mats:
            w = A @ v
            theta += basic_lift_increment(A, v, w)
            v = w / math.hypot(w[0], w[1])
    return theta / (2.0 * math.pi * n_periods)


def naive_interval(m: maps.MapDef, orbit, w0=(0.0, 1.0), *, tol=DEFAULTS) -> Twist:
    """Demi-unit interval from sign changes of ``c_i``, the x-coordinates of ``w_i``.

    ``w_{i+1} = Df(z_i) w_i`` for ``i = 0..q-1``; with ``k`` sign changes in
    ``c_0..c_q`` the twist number lies in ``(-(k+1)/2, -k/2)``.  The default
    start is the vertical: a clockwise turn by ``j`` half-turns then crosses
    the vertical exactly ``j`` times.  A vertical ``w_0`` has ``c_0 = 0`` and is
    left out of the count (the first step always tilts it to ``c_1 = b > 0``).
    A horizontal start ``(1, 0)`` is off by a quarter turn and can overcount.
    """
    _, tr, _ = orbits.residue_and_trace(m, orbit)
    if abs(tr) >= 2.0:
        raise NotElliptic(f"naive method needs |trace| < 2, got {tr:.6g}")
    w = np.array(w0, dtype=float)
    w /= math.hypot(w[0], w[1])
    cs = [] if w[0] == 0.0 else [w[0]]
    for A in maps.tangent_matrices(m, orbit.config):
        w = A @ w
        w /= math.hypot(w[0], w[1])
        cs.append(w[0])
    cs = np.array(cs)
    if np.any(np.abs(cs) < tol.naive_zero):
        raise ZeroCrossingAmbiguous("tangent vector is vertical at some step")
    k = int(np.sum(np.sign(cs[1:]) != np.sign(cs[:-1])))
    return Twist.interval(-(k + 1) / 2.0, -k / 2.0)


def _twist_from_indices(I: int, has_zero: bool, Iprime: Optional[int]) -> Twist:
    if I % 2 == 0:
        return Twist.exact(-I / 2.0)
    if has_zero:
        return Twist.exact(-(I + 1) / 2.0)
    if Iprime == I - 1:
        return Twist.interval(-I / 2.0, -(I - 1) / 2.0)
    if Iprime == I:
        return Twist.exact(-I / 2.0)
    if Iprime == I + 1:
        return Twist.interval(-(I + 1) / 2.0, -I / 2.0)
    raise InconsistentSpectra(f"I = {I} but I' = {Iprime}")


def classify_fixed_point(m: maps.MapDef, orbit, *, tol=DEFAULTS) -> TwistReport:
    """Twist of a ``q = 1`` orbit from the basic-lift region of its derivative."""
    M = maps.derivative(m, orbit.points[0])
    region = basic_lift_region(M, tol.parabolic)
    gp = float(m.g_prime(orbit.config[0]))
    I, has_zero = spectral.morse_index([gp])
    dyn = dynamical_type(region.trace, tol.parabolic)
    return TwistReport(dyn, region.trace, I, None, region.twist,
                       degenerate_flag=dyn in (PARABOLIC_POS, PARABOLIC_NEG) or has_zero)


def classify_twist(m: maps.MapDef, orbit, *, oracle_periods: Optional[int] = None,
                   tol=DEFAULTS) -> TwistReport:
    """Twist number of a periodic orbit from the spectra of ``H`` and ``H-``.

    * ``I`` even: exactly ``-I/2``.
    * ``I`` odd with a (numerically) zero eigenvalue: ``-(I+1)/2``, flagged degenerate.
    * ``I`` odd otherwise: ``I' = I-1, I, I+1`` give ``(-I/2, -(I-1)/2)``,
      ``-I/2`` and ``(-(I+1)/2, -I/2)`` respectively.

    ``q = 1`` orbits are delegated to :func:`classify_fixed_point`.
    """
    if orbit.q == 1:
        rep = classify_fixed_point(m, orbit, tol=tol)
    else:
        H = spectral.hessian_config(m, orbit)
        eig_h = spectral.eigenvalues_sym(H)
        zero_tol = spectral.default_zero_tol(eig_h, tol.morse_zero_rel)
        I, has_zero = spectral.morse_index(eig_h, zero_tol)
        Iprime, _ = spectral.morse_index(spectral.eigenvalues_sym(spectral.companion_minus(H)),
                                         zero_tol)
        _, tr, _ = orbits.residue_and_trace(m, orbit)
        dyn = dynamical_type(tr, tol.parabolic)
        twist = _twist_from_indices(I, has_zero, Iprime)
        degenerate = has_zero or dyn in (PARABOLIC_POS, PARABOLIC_NEG)
        alternatives = []
        if has_zero:
            # the near-zero eigenvalue may belong to either side of 0
            for cand in (_twist_from_indices(I, True, Iprime),
                         _twist_from_indices(I + 1, True, Iprime)):
                if cand not in alternatives:
                    alternatives.append(cand)
        rep = TwistReport(dyn, tr, I, Iprime, twist, degenerate, alternatives)
    if oracle_periods:
        rep.winding_estimate = winding_estimate(m, orbit, oracle_periods)
    if rep.dyn_type == ELLIPTIC:
        try:
            rep.naive_interval = naive_interval(m, orbit, tol=tol)
        except ZeroCrossingAmbiguous:
            pass
    return rep
