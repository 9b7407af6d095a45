"""Standard-like area-preserving twist maps.

The family is defined through its force ``g(x) = eps * force(x)``::

    y' = y + g(x)
    x' = x + y'

so that the generating function is ``h(x, x') = (x' - x)**2 / 2 - eps * V(x)``
with ``g = -eps * V'``.  The force is either a sine series
``sum_k gamma_k sin(2 pi k x)`` or the closed-form rational force
``sin(2 pi x) / (2 pi (1 - a cos(2 pi x)))``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import NamedTuple, Optional, Sequence

import numpy as np

from .errors import ValidationError

TWO_PI = 2.0 * math.pi

PRESETS = ("standard", "three-harmonic", "rational-harmonic")
THREE_HARMONIC_GAMMA = (0.18, -0.42, -0.11)


class PhasePoint(NamedTuple):
    x: float
    y: float


def wrap(x):
    """Representative of ``x`` modulo 1 in ``[-0.5, 0.5)``."""
    return x - np.floor(np.asarray(x) + 0.5)


def _phase(x, k=1):
    # reduce mod 1 before scaling by 2*pi*k
    x = np.asarray(x, dtype=float)
    return TWO_PI * k * (x - np.floor(x))


@dataclass(frozen=True)
class MapDef:
    """A member of the standard-like family.

    Parameters
    ----------
    gamma : sequence of float
        Sine amplitudes ``gamma_k`` of the force, ``k = 1..K``.  Ignored when
        ``rational_a`` is set.
    epsilon : float
        Perturbation parameter, ``>= 0``.
    rational_a : float, optional
        Selects the rational force with parameter ``a``, ``|a| < 1``.
    """

    gamma: tuple = (-1.0 / TWO_PI,)
    epsilon: float = 0.0
    name: Optional[str] = None
    rational_a: Optional[float] = None
    preset: Optional[str] = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "gamma", tuple(float(g) for g in self.gamma))
        object.__setattr__(self, "epsilon", float(self.epsilon))
        if not math.isfinite(self.epsilon) or self.epsilon < 0:
            raise ValidationError(f"epsilon must be finite and >= 0, got {self.epsilon}")
        if self.rational_a is not None:
            a = float(self.rational_a)
            if not abs(a) < 1:
                raise ValidationError(f"rational force needs |a| < 1, got {a}")
            object.__setattr__(self, "rational_a", a)
        elif len(self.gamma) == 0:
            raise ValidationError("gamma needs at least one harmonic")
        if not all(math.isfinite(g) for g in self.gamma):
            raise ValidationError("gamma entries must be finite")

    # -- constructors -----------------------------------------------------
    @classmethod
    def standard(cls, epsilon=0.0):
        return cls((-1.0 / TWO_PI,), epsilon, name="standard", preset="standard")

    @classmethod
    def three_harmonic(cls, epsilon=0.0):
        return cls(THREE_HARMONIC_GAMMA, epsilon, name="three-harmonic",
                   preset="three-harmonic")

    @classmethod
    def rational_harmonic(cls, epsilon=0.0, a=-0.3):
        return cls((), epsilon, name="rational-harmonic", rational_a=a,
                   preset="rational-harmonic")

    @classmethod
    def from_dict(cls, d: dict) -> "MapDef":
        """Build from the JSON map definition used by the CLI."""
        if not isinstance(d, dict):
            raise ValidationError("map definition must be a JSON object")
        unknown = set(d) - {"preset", "gamma", "epsilon", "rational_a", "name"}
        if unknown:
            raise ValidationError(f"unknown map fields: {sorted(unknown)}")
        try:
            eps = float(d.get("epsilon", 0.0))
        except (TypeError, ValueError) as exc:
            raise ValidationError(f"bad epsilon: {d.get('epsilon')!r}") from exc
        preset = d.get("preset")
        a = d.get("rational_a")
        if preset == "standard":
            m = cls.standard(eps)
        elif preset == "three-harmonic":
            m = cls.three_harmonic(eps)
        elif preset == "rational-harmonic" or (preset is None and a is not None):
            m = cls.rational_harmonic(eps, -0.3 if a is None else a)
        elif preset is None:
            gamma = d.get("gamma")
            if not gamma:
                raise ValidationError("gamma is required when no preset is given")
            m = cls(tuple(gamma), eps)
        else:
            raise ValidationError(f"unknown preset {preset!r}")
        if d.get("name"):
            m = replace(m, name=d["name"])
        return m

    def to_dict(self) -> dict:
        gamma = [] if self.rational_a is not None else list(self.gamma)
        return {"preset": self.preset if self.preset != "rational-harmonic" else None,
                "gamma": gamma, "epsilon": self.epsilon,
                "rational_a": self.rational_a}

    def with_epsilon(self, epsilon: float) -> "MapDef":
        return replace(self, epsilon=epsilon)

    # -- force and potential (per unit epsilon) ---------------------------
    def force(self, x):
        if self.rational_a is not None:
            t = _phase(x)
            return np.sin(t) / (TWO_PI * (1.0 - self.rational_a * np.cos(t)))
        return sum(gk * np.sin(_phase(x, k)) for k, gk in enumerate(self.gamma, 1))

    def force_prime(self, x):
        if self.rational_a is not None:
            a = self.rational_a
            c = np.cos(_phase(x))
            return (c - a) / (1.0 - a * c) ** 2
        return sum(TWO_PI * k * gk * np.cos(_phase(x, k))
                   for k, gk in enumerate(self.gamma, 1))

    def potential(self, x):
        """``V`` with ``force = -V'``, normalized to zero mean for the sine family."""
        if self.rational_a is not None:
            a = self.rational_a
            c = np.cos(_phase(x))
            if a == 0.0:
                return c / TWO_PI ** 2
            return -np.log1p(-a * c) / (TWO_PI ** 2 * a)
        return sum(gk / (TWO_PI * k) * np.cos(_phase(x, k))
                   for k, gk in enumerate(self.gamma, 1))

    def g(self, x):
        return self.epsilon * self.force(x)

    def g_prime(self, x):
        return self.epsilon * self.force_prime(x)

    def vpp(self, x):
        """Second derivative ``V''`` of the unit potential."""
        return -self.force_prime(x)


def lift_step(m: MapDef, z) -> PhasePoint:
    x, y = z
    y1 = y + float(m.g(x))
    return PhasePoint(x + y1, y1)


def inverse_step(m: MapDef, z) -> PhasePoint:
    x1, y1 = z
    x = x1 - y1
    return PhasePoint(x, y1 - float(m.g(x)))


def derivative(m: MapDef, z) -> np.ndarray:
    gp = float(m.g_prime(z[0]))
    return np.array([[1.0 + gp, 1.0], [gp, 1.0]])


def action_term(m: MapDef, x: float, x_next: float) -> float:
    return 0.5 * (x_next - x) ** 2 - m.epsilon * float(m.potential(x))


def h1(m: MapDef, x, x_next):
    """Partial derivative of the generating function in its first slot."""
    return (x - x_next) + m.g(x)


def h2(m: MapDef, x, x_next):
    return x_next - x


SYMMETRY_LINE_NAMES = ("Gamma0", "Gamma0'", "Gamma1", "Gamma1'")


def symmetry_lines(m: Optional[MapDef] = None) -> list:
    """The four reversor symmetry lines as ``(a, b, c)`` with ``a x + b y + c = 0``.

    Order: ``x = 0``, ``x = 1/2``, ``x = y/2``, ``x = (y + 1)/2``.
    The lines are the same for every member of the family.
    """
    return [(1.0, 0.0, 0.0), (1.0, 0.0, -0.5), (1.0, -0.5, 0.0), (1.0, -0.5, -0.5)]


def point_on_line(line_index: int, y: float) -> PhasePoint:
    a, b, c = symmetry_lines()[line_index]
    return PhasePoint(-(b * y + c) / a, y)


def reversor_r(m: MapDef, z) -> PhasePoint:
    x, y = z
    return PhasePoint(-x, y + float(m.g(x)))


def reversor_i(z) -> PhasePoint:
    x, y = z
    return PhasePoint(-x + y, y)


def iterate(m: MapDef, z0, n: int) -> np.ndarray:
    """Array of shape ``(n + 1, 2)`` holding ``z0 .. F^n(z0)``."""
    out = np.empty((n + 1, 2))
    z = PhasePoint(float(z0[0]), float(z0[1]))
    out[0] = z
    for k in range(1, n + 1):
        z = lift_step(m, z)
        out[k] = z
    return out


def tangent_matrices(m: MapDef, xs: Sequence[float]) -> np.ndarray:
    gp = np.atleast_1d(m.g_prime(np.asarray(xs, dtype=float)))
    mats = np.empty((gp.size, 2, 2))
    mats[:, 0, 0] = 1.0 + gp
    mats[:, 0, 1] = 1.0
    mats[:, 1, 0] = gp
    mats[:, 1, 1] = 1.0
    return mats
