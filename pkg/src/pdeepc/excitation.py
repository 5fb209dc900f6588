"""Block-Hankel matrices, (periodic) persistent excitation, and the span test.

A signal is persistently exciting of order ``K`` when its depth-``K``
block-Hankel matrix has full row rank.  The periodic variant keeps every
``T``-th column of that matrix, which is the right notion when windows must
stay phase-aligned with a period-``T`` system.  ``fundamental_check``
compares the span of the periodic Hankel matrix of recorded data against the
model behavior: with a controllable system and sufficiently exciting input
the two subspaces coincide.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DataLengthError, DimensionError
from .linalg import TOL_RANK, numerical_rank
from .behavior import behavior_basis, subspace_equal
from .ltp import LtpSystem, Trajectory


@dataclass(frozen=True)
class HankelSpec:
    """Window parameters of a (periodic) block-Hankel matrix."""

    depth: int
    period: int = 1
    signal_dim: int = 1

    def __post_init__(self):
        if self.depth < 1 or self.period < 1 or self.signal_dim < 1:
            raise ValueError("depth, period and signal_dim must be positive")

    def check_signal(self, z: np.ndarray) -> None:
        if z.shape[0] < self.depth:
            raise DataLengthError(
                f"signal has {z.shape[0]} samples, need at least depth {self.depth}"
            )
        if z.shape[1] != self.signal_dim:
            raise DimensionError(
                f"signal dimension {z.shape[1]} does not match spec {self.signal_dim}"
            )

    def column_count(self, length: int) -> int:
        return (length - self.depth) // self.period + 1


def _signal(z) -> np.ndarray:
    z = np.asarray(z, dtype=float)
    if z.ndim == 1:
        z = z[:, None]
    if z.ndim != 2:
        raise DimensionError("signal must be a 1-D or 2-D (steps, dim) array")
    return z


def hankel(z, K: int) -> np.ndarray:
    """Depth-``K`` block-Hankel matrix of ``z`` (shape ``(steps, q)``).

    Column ``j`` stacks the window ``z[j], ..., z[j + K - 1]``.
    """
    return periodic_hankel(z, K, T=1)


def periodic_hankel(z, K: int, T: int) -> np.ndarray:
    """Every ``T``-th column of the depth-``K`` block-Hankel matrix of ``z``.

    Column ``j`` stacks ``z[j*T], ..., z[j*T + K - 1]`` for
    ``j = 0, ..., (steps - K) // T``.
    """
    z = _signal(z)
    spec = HankelSpec(depth=K, period=T, signal_dim=z.shape[1])
    spec.check_signal(z)
    steps, q = z.shape
    cols = spec.column_count(steps)
    H = np.empty((q * K, cols))
    for j in range(cols):
        H[:, j] = z[j * T: j * T + K].ravel()
    return H


def is_ppe(z, K: int, T: int = 1, tol_rank: float = TOL_RANK) -> bool:
    """Whether ``z`` is ``T``-periodically persistently exciting of order ``K``."""
    z = _signal(z)
    H = periodic_hankel(z, K, T)
    return numerical_rank(H, tol_rank) == z.shape[1] * K


@dataclass(frozen=True)
class FundamentalCheck:
    """Outcome of comparing a data span against the model behavior."""

    holds: bool
    span_rank: int
    behavior_dim: int


def data_span(w_data: Trajectory, K: int, T: int) -> np.ndarray:
    """Stacked periodic Hankel matrix ``[H^T_K(u); H^T_K(y)]`` of a trajectory."""
    return np.vstack([periodic_hankel(w_data.u, K, T), periodic_hankel(w_data.y, K, T)])


def fundamental_check(sys: LtpSystem, w_data: Trajectory, K: int,
                      tol_rank: float = TOL_RANK) -> FundamentalCheck:
    """Test whether recorded data spans the whole behavior on ``K`` steps.

    The columns of the stacked periodic Hankel matrix are always trajectories
    of the generating system, so their span is contained in the behavior on
    ``[start, start + K)``; ``holds`` reports whether the containment is an
    equality.
    """
    if len(w_data) < K:
        raise DataLengthError(f"trajectory has {len(w_data)} steps, need at least {K}")
    H = data_span(w_data, K, sys.period)
    basis = behavior_basis(sys, w_data.start, w_data.start + K - 1)
    return FundamentalCheck(
        holds=subspace_equal(H, basis.basis, tol_rank),
        span_rank=numerical_rank(H, tol_rank),
        behavior_dim=basis.rank(tol_rank),
    )
