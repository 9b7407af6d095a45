"""Periodic Jacobi Hessians of the periodic action and their spectra.

The Hessian ``H`` of ``W_pq`` at a ``(p, q)`` configuration is a symmetric
tridiagonal matrix closed cyclically by corner entries ``beta_{q-1}``.  Its
companion ``H-`` has the corner entries negated.  Both are assembled by
*adding* ``beta_i`` at positions ``(i, i+1 mod q)``, so ``q = 2`` yields the
dense off-diagonal ``beta_0 +/- beta_1`` and ``q = 1`` the scalar second
derivative of the action without special casing.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import maps
from .config import DEFAULTS
from .errors import NonTwistAlongOrbit, ValidationError


@dataclass(frozen=True)
class PeriodicJacobiMatrix:
    alpha: np.ndarray
    beta: np.ndarray
    corner_sign: int = 1

    def __post_init__(self):
        a = np.asarray(self.alpha, dtype=float)
        b = np.asarray(self.beta, dtype=float)
        if a.shape != b.shape or a.ndim != 1 or a.size == 0:
            raise ValidationError("alpha and beta must be 1-d arrays of equal length q >= 1")
        if self.corner_sign not in (1, -1):
            raise ValidationError("corner_sign must be +1 or -1")
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "beta", b)

    @property
    def q(self) -> int:
        return self.alpha.size

    def dense(self) -> np.ndarray:
        return periodic_jacobi(self.alpha, self.beta, self.corner_sign)

    def to_dict(self) -> dict:
        return {"alpha": self.alpha.tolist(), "beta": self.beta.tolist(),
                "corner_sign": self.corner_sign}


def periodic_jacobi(alpha, beta, corner_sign: int = 1) -> np.ndarray:
    alpha = np.asarray(alpha, dtype=float)
    beta = np.asarray(beta, dtype=float)
    q = alpha.size
    H = np.diag(alpha).astype(float)
    for i in range(q):
        j = (i + 1) % q
        b = beta[i] * (corner_sign if i == q - 1 else 1)
        H[i, j] += b
        H[j, i] += b
    return H


def hessian_config(m: maps.MapDef, orbit) -> PeriodicJacobiMatrix:
    """Hessian of the action in configuration coordinates.

    For the standard-like family ``alpha_i = 2 + g'(x_i)`` and ``beta_i = -1``.
    """
    x = np.asarray(orbit.config, dtype=float)
    # h11 = 1 - eps V'' = 1 + g', h22 = 1, h12 = -1
    alpha = 2.0 + np.atleast_1d(m.g_prime(x))
    beta = -np.ones_like(alpha)
    return PeriodicJacobiMatrix(alpha, beta, 1)


def hessian_phase(m: maps.MapDef, orbit) -> PeriodicJacobiMatrix:
    """Hessian assembled from the derivative matrices ``[[a, b], [c, d]]`` along the orbit.

    ``alpha_i = d_{i-1} / b_{i-1} + a_i / b_i`` and ``beta_i = -1 / b_i``.
    """
    pts = np.asarray(orbit.points, dtype=float)
    D = np.array([maps.derivative(m, z) for z in pts])
    a, b, d = D[:, 0, 0], D[:, 0, 1], D[:, 1, 1]
    if np.any(b <= 0):
        raise NonTwistAlongOrbit("derivative entry b <= 0 along the orbit")
    alpha = np.roll(d / b, 1) + a / b
    beta = -1.0 / b
    return PeriodicJacobiMatrix(alpha, beta, 1)


def companion_minus(H: PeriodicJacobiMatrix) -> PeriodicJacobiMatrix:
    if H.corner_sign != 1:
        raise ValidationError("companion_minus expects a Hessian with corner_sign = +1")
    return PeriodicJacobiMatrix(H.alpha.copy(), H.beta.copy(), -1)


def eigenvalues_sym(H) -> np.ndarray:
    """Ascending eigenvalues of a periodic Jacobi matrix (or a dense symmetric array)."""
    A = H.dense() if isinstance(H, PeriodicJacobiMatrix) else np.asarray(H, dtype=float)
    return np.linalg.eigvalsh(A)


def default_zero_tol(eigs, rel: float = DEFAULTS.morse_zero_rel) -> float:
    eigs = np.asarray(eigs, dtype=float)
    return rel * max(1.0, float(np.max(np.abs(eigs)))) if eigs.size else rel


def morse_index(eigs, zero_tol: float | None = None) -> tuple[int, bool]:
    """Number of negative eigenvalues and whether any eigenvalue is numerically zero."""
    eigs = np.asarray(eigs, dtype=float)
    if zero_tol is None:
        zero_tol = default_zero_tol(eigs)
    return int(np.sum(eigs < -zero_tol)), bool(np.any(np.abs(eigs) <= zero_tol))


def transfer_factors(H: PeriodicJacobiMatrix, lam: float) -> np.ndarray:
    """The 2x2 factors of the Floquet monodromy, ordered ``i = 1, ..., q`` (indices mod q)."""
    a, b = H.alpha, H.beta
    q = H.q
    F = np.empty((q, 2, 2))
    for n, i in enumerate(range(1, q + 1)):
        i0, im = i % q, (i - 1) % q
        F[n] = [[0.0, 1.0], [-b[im] / b[i0], (lam - a[i0]) / b[i0]]]
    return F


def hill_discriminant(H: PeriodicJacobiMatrix, lam: float) -> tuple[float, np.ndarray]:
    """Trace and matrix of the monodromy ``M(lam)`` of the discrete Hill equation.

    Factors are multiplied with ``i = 1`` rightmost and ``i = q`` (that is,
    index 0) leftmost.  ``M(0)`` is conjugate to the orbit's linearized
    return map, so ``trace(M(0))`` equals its trace.
    """
    if H.corner_sign != 1:
        raise ValidationError("hill_discriminant expects corner_sign = +1")
    if H.q < 2:
        raise ValidationError("hill_discriminant needs q >= 2")
    M = np.eye(2)
    for Fi in transfer_factors(H, lam):
        M = Fi @ M
    return float(np.trace(M)), M


def char_poly(H: PeriodicJacobiMatrix, lam: float) -> float:
    """``det(H - lam I)``."""
    A = H.dense() - lam * np.eye(H.q)
    sign, logdet = np.linalg.slogdet(A)
    return float(sign * np.exp(logdet))


def hill_formula_rhs(H: PeriodicJacobiMatrix, lam: float) -> float:
    """``(-1)^q prod(beta) (trace M(lam) - 2)``, which equals ``det(H - lam I)``."""
    tr, _ = hill_discriminant(H, lam)
    return (-1) ** H.q * float(np.prod(H.beta)) * (tr - 2.0)


def interlaced_sequence(eig_h, eig_hm) -> np.ndarray:
    """Merge the two spectra in the order ``l0, l0', l1', l1, l2, l2', l3', l3, ...``."""
    eig_h = np.sort(np.asarray(eig_h, dtype=float))
    eig_hm = np.sort(np.asarray(eig_hm, dtype=float))
    q = eig_h.size
    seq = []
    for k in range(0, q, 2):
        seq.append(eig_h[k])
        seq.extend(eig_hm[k:k + 2])
        if k + 1 < q:
            seq.append(eig_h[k + 1])
    return np.array(seq)


def check_interlacing(eig_h, eig_hm, tol: float = 1e-9) -> bool:
    seq = interlaced_sequence(eig_h, eig_hm)
    return bool(np.all(np.diff(seq) >= -tol))


def dynamical_type_at(H: PeriodicJacobiMatrix, lam: float) -> str:
    """Type of ``M(lam)`` from its trace: ``regular``, ``elliptic`` or ``inverse``."""
    tr, _ = hill_discriminant(H, lam)
    if tr > 2:
        return "regular"
    if tr < -2:
        return "inverse"
    return "elliptic"
