"""Shared dense linear-algebra helpers: numerical rank, truncated pseudo-inverses.

All rank decisions in the package go through :func:`numerical_rank` so that
subspace comparisons, excitation tests and predictor construction agree on a
single truncation rule: a singular value counts iff

    sigma_i > tol_rank * max(rows, cols) * sigma_max.
"""
from __future__ import annotations

import numpy as np

#: Default relative tolerance of the singular-value truncation rule.
TOL_RANK = 1e-10


def _as_2d(M) -> np.ndarray:
    M = np.asarray(M, dtype=float)
    if M.ndim != 2:
        raise ValueError(f"expected a 2-D array, got ndim={M.ndim}")
    return M


def rank_cutoff(sigma: np.ndarray, shape: tuple[int, int], tol_rank: float = TOL_RANK) -> float:
    """Absolute cutoff below which singular values are treated as zero."""
    if sigma.size == 0:
        return 0.0
    return tol_rank * max(shape) * float(sigma[0])


def numerical_rank(M, tol_rank: float = TOL_RANK) -> int:
    """Rank of ``M`` under the package-wide singular-value truncation rule."""
    M = _as_2d(M)
    if M.size == 0:
        return 0
    sigma = np.linalg.svd(M, compute_uv=False)
    return int(np.count_nonzero(sigma > rank_cutoff(sigma, M.shape, tol_rank)))


def orthonormal_basis(M, tol_rank: float = TOL_RANK) -> np.ndarray:
    """Orthonormal basis of the column span of ``M`` (columns of the result)."""
    M = _as_2d(M)
    if M.size == 0:
        return np.zeros((M.shape[0], 0))
    U, sigma, _ = np.linalg.svd(M, full_matrices=False)
    r = int(np.count_nonzero(sigma > rank_cutoff(sigma, M.shape, tol_rank)))
    return U[:, :r]


def nullspace_basis(M, tol_rank: float = TOL_RANK) -> np.ndarray:
    """Orthonormal basis of the (right) null space of ``M``."""
    M = _as_2d(M)
    n = M.shape[1]
    if M.size == 0:
        return np.eye(n)
    _, sigma, Vt = np.linalg.svd(M)
    cutoff = rank_cutoff(sigma, M.shape, tol_rank)
    r = int(np.count_nonzero(sigma > cutoff))
    return Vt[r:].T


def truncated_pinv(M, tol_rank: float = TOL_RANK, cutoff: float | None = None) -> np.ndarray:
    """SVD pseudo-inverse of ``M``.

    With the default arguments the relative truncation rule is applied.  An
    explicit absolute ``cutoff`` overrides it: singular values strictly below
    ``cutoff`` are treated as zero (used by the regularized subspace
    predictor).
    """
    M = _as_2d(M)
    if M.size == 0:
        return M.T.copy()
    U, sigma, Vt = np.linalg.svd(M, full_matrices=False)
    if cutoff is None:
        cutoff = rank_cutoff(sigma, M.shape, tol_rank)
        keep = sigma > cutoff
    else:
        keep = sigma >= cutoff
    inv = np.zeros_like(sigma)
    inv[keep] = 1.0 / sigma[keep]
    return (Vt.T * inv) @ U.T
