"""Dense matrix primitives: SVD, Hermitian eigensolver, Schatten norms.

All routines take and return plain numpy arrays and never mutate their
inputs. Tolerances are absolute-relative hybrids scaled by
``max(1, ||M||_2)`` because the matrices handled here are small and well
conditioned.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ValidationError

RECONSTRUCTION_TOL = 1e-10
HERMITIAN_TOL = 1e-10
RANK_RTOL = 1e-8


@dataclass(frozen=True)
class SpectralSummary:
    """Full SVD ``M = U diag(s) V^T``.

    ``left_vectors`` is ``rows x rows`` and ``right_vectors`` is
    ``cols x cols``; only the first ``len(singular_values)`` columns of each
    are paired with a singular value.
    """

    singular_values: np.ndarray
    left_vectors: np.ndarray
    right_vectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        k = self.singular_values.size
        return (self.left_vectors[:, :k] * self.singular_values) @ self.right_vectors[:, :k].T

    def rank(self, rtol: float = RANK_RTOL) -> int:
        s = self.singular_values
        if s.size == 0 or s[0] == 0.0:
            return 0
        return int(np.count_nonzero(s > rtol * s[0]))


def as_real_matrix(M, name: str = "matrix") -> np.ndarray:
    """Return ``M`` as a 2-D float array, rejecting non-finite entries."""
    try:
        a = np.array(M, dtype=float)
    except (TypeError, ValueError) as exc:
        raise ValidationError(f"{name} is not a real numeric array: {exc}") from None
    if a.ndim != 2:
        raise ValidationError(f"{name} must be 2-D, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValidationError(f"{name} has non-finite entries")
    return a


def as_complex_matrix(M, name: str = "matrix") -> np.ndarray:
    try:
        a = np.array(M, dtype=complex)
    except (TypeError, ValueError) as exc:
        raise ValidationError(f"{name} is not a numeric array: {exc}") from None
    if a.ndim != 2:
        raise ValidationError(f"{name} must be 2-D, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValidationError(f"{name} has non-finite entries")
    return a


def spectral_norm(M) -> float:
    a = np.asarray(M)
    if a.size == 0:
        return 0.0
    return float(np.linalg.norm(a, 2))


def _fix_signs(U: np.ndarray, Vt: np.ndarray, k: int) -> None:
    # First coordinate above this magnitude counts as "nonzero".
    tiny = 1e-12
    for j in range(U.shape[1]):
        col = U[:, j]
        idx = np.flatnonzero(np.abs(col) > tiny)
        if idx.size and col[idx[0]] < 0:
            U[:, j] = -col
            if j < k:
                Vt[j, :] = -Vt[j, :]


def svd(M) -> SpectralSummary:
    """Full SVD with a deterministic sign convention.

    Each left singular vector is flipped so that its first nonzero
    coordinate is positive; the paired right vector is flipped with it.
    """
    a = as_real_matrix(M)
    U, s, Vt = np.linalg.svd(a, full_matrices=True)
    U = U.copy()
    Vt = Vt.copy()
    _fix_signs(U, Vt, s.size)
    return SpectralSummary(singular_values=s, left_vectors=U, right_vectors=Vt.T)


def singular_values(M) -> np.ndarray:
    a = as_real_matrix(M)
    if a.size == 0:
        return np.zeros(0)
    return np.linalg.svd(a, compute_uv=False)


def schatten_norm(M, p: float = 1.0) -> float:
    """Schatten p-norm ``(sum_i s_i**p)**(1/p)``; ``p=inf`` is the operator norm."""
    p = float(p)
    if math.isnan(p) or p < 1.0:
        raise DomainError(f"Schatten index p must satisfy p >= 1, got {p}")
    s = singular_values(M)
    if s.size == 0:
        return 0.0
    if math.isinf(p):
        return float(s[0])
    if p == 1.0:
        return float(s.sum())
    # Scale by the largest value so high powers do not overflow.
    top = s[0]
    if top == 0.0:
        return 0.0
    return float(top * np.sum((s / top) ** p) ** (1.0 / p))


def trace_norm(M) -> float:
    return schatten_norm(M, 1.0)


def operator_norm(M) -> float:
    return schatten_norm(M, math.inf)


def matrix_rank(M, rtol: float = RANK_RTOL) -> int:
    s = singular_values(M)
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.count_nonzero(s > rtol * s[0]))


def is_hermitian(M, tol: float = HERMITIAN_TOL) -> bool:
    a = np.asarray(M)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        return False
    scale = max(1.0, spectral_norm(a))
    return bool(np.max(np.abs(a - a.conj().T), initial=0.0) <= tol * scale)


def hermitian_eig(M) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues in non-increasing order and the matching orthonormal eigenvectors."""
    a = as_complex_matrix(M)
    if a.shape[0] != a.shape[1]:
        raise ValidationError(f"matrix must be square, got shape {a.shape}")
    if not is_hermitian(a):
        raise ValidationError("matrix is not Hermitian within tolerance")
    a = 0.5 * (a + a.conj().T)
    w, Q = np.linalg.eigh(a)
    return w[::-1].copy(), Q[:, ::-1].copy()


def inner_product(P, G) -> float:
    """Hilbert-Schmidt product ``tr(P G^T)``, the sum of elementwise products."""
    a = as_real_matrix(P, "first matrix")
    b = as_real_matrix(G, "second matrix")
    if a.shape != b.shape:
        raise ValidationError(f"shape mismatch: {a.shape} vs {b.shape}")
    return float(np.sum(a * b))
