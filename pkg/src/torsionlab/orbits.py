"""Finding and evaluating (p, q)-periodic orbits.

Orbits are critical points of the periodic action
``W_pq(x) = sum_k h(x_k, x_{k+1})`` with ``x_q = x_0 + p``.  The gradient of
``W_pq`` for the standard-like family is::

    dW/dx_i = (x_i - x_{i-1}) - (x_{i+1} - x_i) + g(x_i)

and its Jacobian is the periodic Jacobi Hessian from :mod:`torsionlab.spectral`.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy import optimize

from . import maps, spectral
from .config import DEFAULTS
from .errors import NoConvergence, NotFound, SingularJacobian, ValidationError


@dataclass(frozen=True)
class PeriodicOrbit:
    p: int
    q: int
    config: np.ndarray
    points: np.ndarray
    closure_residual: float

    def __post_init__(self):
        object.__setattr__(self, "config", np.asarray(self.config, dtype=float))
        object.__setattr__(self, "points", np.asarray(self.points, dtype=float))

    def extended_config(self) -> np.ndarray:
        """``x_0 .. x_q`` with ``x_q = x_0 + p``."""
        return np.append(self.config, self.config[0] + self.p)

    def shifted(self, s: int) -> "PeriodicOrbit":
        """Cyclic shift ``x_k -> x_{k+s}`` (respecting ``x_{k+q} = x_k + p``)."""
        s %= self.q
        c = np.concatenate([self.config[s:], self.config[:s] + self.p])
        pts = np.concatenate([self.points[s:], self.points[:s] + [self.p, 0.0]])
        return PeriodicOrbit(self.p, self.q, c, pts, self.closure_residual)

    def translated(self, j: int) -> "PeriodicOrbit":
        return PeriodicOrbit(self.p, self.q, self.config + j,
                             self.points + [j, 0.0], self.closure_residual)

    def doubled(self) -> "PeriodicOrbit":
        """The same orbit read as a ``(2p, 2q)`` orbit."""
        c = np.concatenate([self.config, self.config + self.p])
        pts = np.concatenate([self.points, self.points + [self.p, 0.0]])
        return PeriodicOrbit(2 * self.p, 2 * self.q, c, pts, self.closure_residual)

    def to_dict(self) -> dict:
        return {"p": self.p, "q": self.q, "config": self.config.tolist(),
                "points": self.points.tolist(), "residual": self.closure_residual}

    @classmethod
    def from_dict(cls, d: dict) -> "PeriodicOrbit":
        try:
            p, q = int(d["p"]), int(d["q"])
            config = np.asarray(d["config"], dtype=float)
            points = np.asarray(d.get("points") or np.column_stack([config, np.zeros_like(config)]))
        except (KeyError, TypeError, ValueError) as exc:
            raise ValidationError(f"bad orbit JSON: {exc}") from exc
        if q < 1 or config.shape != (q,):
            raise ValidationError("orbit config must have q entries")
        return cls(p, q, config, points, float(d.get("residual", float("nan"))))


# -- variational machinery ----------------------------------------------------

def _neighbours(x, p):
    x_prev = np.empty_like(x)
    x_next = np.empty_like(x)
    x_prev[1:] = x[:-1]
    x_prev[0] = x[-1] - p
    x_next[:-1] = x[1:]
    x_next[-1] = x[0] + p
    return x_prev, x_next


def action_gradient(m: maps.MapDef, p: int, x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    x_prev, x_next = _neighbours(x, p)
    return (x - x_prev) - (x_next - x) + np.atleast_1d(m.g(x))


def action_hessian(m: maps.MapDef, x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    alpha = 2.0 + np.atleast_1d(m.g_prime(x))
    return spectral.periodic_jacobi(alpha, -np.ones_like(alpha))


def action_value(m: maps.MapDef, p: int, x) -> float:
    x = np.asarray(x, dtype=float)
    _, x_next = _neighbours(x, p)
    return float(np.sum(0.5 * (x_next - x) ** 2 - m.epsilon * np.atleast_1d(m.potential(x))))


def orbit_from_config(m: maps.MapDef, p: int, config) -> PeriodicOrbit:
    """Reconstruct momenta from a configuration and measure the closure defect."""
    x = np.asarray(config, dtype=float)
    q = x.size
    _, x_next = _neighbours(x, p)
    y = x_next - x - np.atleast_1d(m.g(x))
    pts = np.column_stack([x, y])
    residual = 0.0
    for i in range(q):
        target = pts[i + 1] if i + 1 < q else pts[0] + [p, 0.0]
        img = maps.lift_step(m, pts[i])
        residual = max(residual, abs(img.x - target[0]), abs(img.y - target[1]))
    return PeriodicOrbit(int(p), q, x, pts, residual)


def _check_type(p, q, allow_multiple):
    if q < 1:
        raise ValidationError("q must be >= 1")
    if math.gcd(p, q) != 1 and not allow_multiple:
        raise ValidationError(f"gcd({p}, {q}) > 1; pass allow_multiple=True for multiple orbits")


def least_period(orbit: PeriodicOrbit, tol: float = 1e-9) -> int:
    q, p, x = orbit.q, orbit.p, orbit.config
    for d in range(1, q):
        if q % d or (p * d) % q:
            continue
        shift = p * d // q
        ext = np.concatenate([x, x + p])
        if np.all(np.abs(ext[d:d + q] - x - shift) <= tol):
            return d
    return q


def newton_refine(m: maps.MapDef, p: int, q: int, seed_config, *,
                  allow_multiple: bool = False, tol=DEFAULTS) -> PeriodicOrbit:
    """Solve ``grad W_pq = 0`` by damped Newton starting at ``seed_config``.

    Full Newton steps are halved (at most ``tol.newton_halvings`` times) while
    they increase the gradient norm.

    Raises
    ------
    NoConvergence
        Gradient still above ``tol.newton_grad`` after ``tol.newton_maxiter`` steps.
    SingularJacobian
        ``|det H| < tol.singular_det`` at an iterate that is not yet converged.
    """
    _check_type(p, q, allow_multiple)
    x = np.array(seed_config, dtype=float)
    if x.shape != (q,):
        raise ValidationError(f"seed_config must have length q={q}")
    grad = action_gradient(m, p, x)
    for _ in range(tol.newton_maxiter + 1):
        gnorm = float(np.max(np.abs(grad)))
        if gnorm <= tol.newton_grad:
            orbit = orbit_from_config(m, p, x)
            if q > 1 and least_period(orbit) < q:
                warnings.warn(f"orbit has least period {least_period(orbit)} < {q}",
                              RuntimeWarning)
            return orbit
        H = action_hessian(m, x)
        sign, logdet = np.linalg.slogdet(H)
        if sign == 0 or logdet < math.log(tol.singular_det):
            raise SingularJacobian(f"|det H| below {tol.singular_det:g}")
        step = np.linalg.solve(H, -grad)
        t = 1.0
        x_new = x + step
        g_new = action_gradient(m, p, x_new)
        for _ in range(tol.newton_halvings):
            if np.linalg.norm(g_new) <= np.linalg.norm(grad):
                break
            t *= 0.5
            x_new = x + t * step
            g_new = action_gradient(m, p, x_new)
        x, grad = x_new, g_new
    raise NoConvergence(f"Newton did not converge in {tol.newton_maxiter} iterations "
                        f"(|grad| = {np.max(np.abs(grad)):.3e})")


# -- iteration and seeding ----------------------------------------------------

def iterate_orbit(m: maps.MapDef, z0, q: int) -> list:
    if q < 1:
        raise ValidationError("q must be >= 1")
    return [maps.PhasePoint(*row) for row in maps.iterate(m, z0, q)]


def config_from_seed(m: maps.MapDef, z0, q: int) -> np.ndarray:
    return maps.iterate(m, z0, q)[:q, 0].copy()


def refine_from_point(m: maps.MapDef, p: int, q: int, z0, **kw) -> PeriodicOrbit:
    """Newton refinement seeded by iterating a phase point ``q`` times."""
    return newton_refine(m, p, q, config_from_seed(m, z0, q), **kw)


def passes_through(orbit: PeriodicOrbit, z, tol: float = 1e-8) -> bool:
    """True if some orbit point equals ``z`` up to ``tol`` (x compared modulo 1)."""
    dx = maps.wrap(orbit.points[:, 0] - z[0])
    dy = orbit.points[:, 1] - z[1]
    return bool(np.any((np.abs(dx) <= tol) & (np.abs(dy) <= tol)))


def config_distance(a: PeriodicOrbit, b: PeriodicOrbit) -> float:
    """Distance between configurations up to cyclic shift and integer translation."""
    if (a.p, a.q) != (b.p, b.q):
        return float("inf")
    best = float("inf")
    for s in range(b.q):
        c = b.shifted(s).config
        j = round(a.config[0] - c[0])
        best = min(best, float(np.max(np.abs(a.config - c - j))))
    return best


def dedupe(orbits, tol: float = DEFAULTS.dedup) -> list:
    out = []
    for o in orbits:
        if all(config_distance(o, k) >= tol for k in out):
            out.append(o)
    return out


def symmetric_seed_scan(m: maps.MapDef, p: int, q: int, line_index: int,
                        y_range=(0.0, 1.0), n_samples: int = 400, *,
                        tol=DEFAULTS) -> list:
    """Search orbits through a symmetry line.

    Samples the line, brackets sign changes of the horizontal periodicity
    defect ``x_q - x_0 - p``, bisects, and refines each candidate by Newton.
    Candidates that fail to converge or to close are dropped.
    """
    if n_samples < 2:
        raise ValidationError("n_samples must be >= 2")
    if line_index not in range(4):
        raise ValidationError("line_index must be in 0..3")

    def defect(y):
        z0 = maps.point_on_line(line_index, y)
        xq = maps.iterate(m, z0, q)[-1, 0]
        return xq - z0.x - p

    ys = np.linspace(y_range[0], y_range[1], n_samples)
    vals = np.array([defect(y) for y in ys])
    roots = []
    for k in range(n_samples - 1):
        if vals[k] == 0.0:
            roots.append(ys[k])
        elif vals[k] * vals[k + 1] < 0:
            roots.append(optimize.brentq(defect, ys[k], ys[k + 1], xtol=1e-15))
    if vals[-1] == 0.0:
        roots.append(ys[-1])
    found = []
    for y in roots:
        z0 = maps.point_on_line(line_index, y)
        try:
            orbit = newton_refine(m, p, q, config_from_seed(m, z0, q), tol=tol)
        except (NoConvergence, SingularJacobian):
            continue
        if orbit.closure_residual <= tol.closure:
            found.append(orbit)
    return dedupe(found, tol.dedup)


def minimizing_orbit(m: maps.MapDef, p: int, q: int, n_offsets: int = 8, *,
                     tol=DEFAULTS) -> PeriodicOrbit:
    """The ``(p, q)`` orbit of least action.

    Runs quasi-Newton descent on ``W_pq`` from uniform configurations
    ``x_i = x_0 + i p / q`` for ``n_offsets`` values of ``x_0``, polishes with
    Newton and keeps the lowest-action result whose Hessian has Morse index 0.
    """
    _check_type(p, q, False)
    candidates = []
    base = np.arange(q) * p / q
    for x0 in np.arange(n_offsets) / (n_offsets * q):
        res = optimize.minimize(lambda x: action_value(m, p, x), base + x0,
                                jac=lambda x: action_gradient(m, p, x), method="BFGS",
                                options={"gtol": 1e-11, "maxiter": 2000})
        try:
            orbit = newton_refine(m, p, q, res.x, tol=tol)
        except (NoConvergence, SingularJacobian):
            continue
        index, _ = spectral.morse_index(np.linalg.eigvalsh(action_hessian(m, orbit.config)))
        if index == 0 and orbit.closure_residual <= tol.closure:
            candidates.append((action(m, orbit), orbit))
    if not candidates:
        raise NotFound(f"no index-0 ({p},{q}) orbit found")
    candidates.sort(key=lambda t: t[0])
    return candidates[0][1]


def period_doubled_orbit(m: maps.MapDef, orbit: PeriodicOrbit,
                         amplitudes=(0.01, 0.02, 0.05, 0.1, 0.2), *,
                         tol=DEFAULTS) -> PeriodicOrbit:
    """A ``(2p, 2q)`` orbit born from ``orbit`` by period doubling.

    Newton is seeded along the antiperiodic eigenvector of the doubled Hessian
    whose eigenvalue is closest to zero; the first converged result that is not
    the doubled parent is returned.
    """
    parent = orbit.doubled()
    H = action_hessian(m, parent.config)
    w, V = np.linalg.eigh(H)
    q = orbit.q
    anti = [k for k in range(w.size)
            if np.linalg.norm(V[:q, k] + V[q:, k]) < 1e-6 * max(1.0, np.linalg.norm(V[:, k]))]
    if not anti:
        raise NotFound("no antiperiodic mode in the doubled Hessian")
    k = min(anti, key=lambda k: abs(w[k]))
    v = V[:, k]
    for a in amplitudes:
        for s in (a, -a):
            try:
                with warnings.catch_warnings():
                    warnings.simplefilter("ignore", RuntimeWarning)
                    new = newton_refine(m, parent.p, parent.q, parent.config + s * v,
                                        allow_multiple=True, tol=tol)
            except (NoConvergence, SingularJacobian):
                continue
            if config_distance(new, parent) > 1e-6 and new.closure_residual <= tol.closure \
                    and least_period(new) == parent.q:
                return new
    raise NotFound("no period-doubled orbit found near the parent")


# -- evaluation ---------------------------------------------------------------

def action(m: maps.MapDef, orbit: PeriodicOrbit) -> float:
    ext = orbit.extended_config()
    return float(sum(maps.action_term(m, ext[k], ext[k + 1]) for k in range(orbit.q)))


def monodromy(m: maps.MapDef, orbit: PeriodicOrbit) -> np.ndarray:
    M = np.eye(2)
    for D in maps.tangent_matrices(m, orbit.config):
        M = D @ M
    return M


def residue_and_trace(m: maps.MapDef, orbit: PeriodicOrbit):
    """Greene residue ``(2 - tr)/4``, the trace, and the monodromy matrix."""
    M = monodromy(m, orbit)
    tr = float(np.trace(M))
    return (2.0 - tr) / 4.0, tr, M


def rotation_estimate(m: maps.MapDef, z0, n: int) -> float:
    traj = maps.iterate(m, z0, n)
    return (traj[-1, 0] - traj[0, 0]) / n
