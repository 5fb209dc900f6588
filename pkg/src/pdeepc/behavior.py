"""Restricted behaviors of LTP systems and their integer invariants.

The restricted behavior of a system on an interval is the subspace of all
input-output trajectories it can produce there.  For a state-space system on
``[t1, t2]`` it is spanned by the columns of::

    [ 0      I       ]
    [ obsv   impulse ]

(state-seeded columns first, then input-seeded ones), with the row layout
``[all inputs; all outputs]``.  Everything else in this module - interval
restriction, model comparison, order and lag, behavioral controllability and
the data-driven output predictor - is phrased in terms of this subspace.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, IntervalError
from .linalg import TOL_RANK, numerical_rank, truncated_pinv
from .ltp import LtpSystem, lift, system_matrices


@dataclass(frozen=True)
class BehaviorBasis:
    """Matrix whose column span is the restricted behavior on ``[t1, t2]``.

    Rows are laid out as ``[u_{t1..t2}; y_{t1..t2}]`` (time-major within each
    block), so the row count is ``(m + p) * (t2 - t1 + 1)``.
    """

    t1: int
    t2: int
    m: int
    p: int
    basis: np.ndarray

    def __post_init__(self):
        steps = self.t2 - self.t1 + 1
        if steps < 1:
            raise IntervalError(f"empty interval [{self.t1}, {self.t2}]")
        expected = (self.m + self.p) * steps
        if self.basis.shape[0] != expected:
            raise DimensionError(
                f"basis has {self.basis.shape[0]} rows, expected {expected}"
            )

    @property
    def steps(self) -> int:
        return self.t2 - self.t1 + 1

    def rank(self, tol_rank: float = TOL_RANK) -> int:
        """Dimension of the spanned behavior."""
        return numerical_rank(self.basis, tol_rank)

    def input_rows(self) -> np.ndarray:
        return self.basis[: self.m * self.steps]

    def output_rows(self) -> np.ndarray:
        return self.basis[self.m * self.steps:]

    def to_csv(self, path) -> None:
        """One column per basis vector, for offline inspection."""
        np.savetxt(path, self.basis, delimiter=",")


@dataclass(frozen=True)
class BehaviorSplit:
    """Past/future block decomposition ``[U_p; U_f; Y_p; Y_f]`` of a behavior.

    Columns span the behavior on a total horizon of ``L + N`` steps; the four
    blocks collect the past inputs, future inputs, past outputs and future
    outputs of every column.  This is a fixed row permutation of the
    :class:`BehaviorBasis` layout (inputs-then-outputs).
    """

    U_p: np.ndarray
    U_f: np.ndarray
    Y_p: np.ndarray
    Y_f: np.ndarray
    L: int
    N: int

    def __post_init__(self):
        h = self.U_p.shape[1]
        for name in ("U_f", "Y_p", "Y_f"):
            if getattr(self, name).shape[1] != h:
                raise DimensionError("all four blocks must share the column count")

    @property
    def h(self) -> int:
        return self.U_p.shape[1]

    @property
    def m(self) -> int:
        return self.U_p.shape[0] // self.L

    @property
    def p(self) -> int:
        return self.Y_p.shape[0] // self.L

    def stacked(self) -> np.ndarray:
        return np.vstack([self.U_p, self.U_f, self.Y_p, self.Y_f])


def split_behavior(b: BehaviorBasis, L: int) -> BehaviorSplit:
    """Permute a behavior basis on ``L + N`` steps into past/future blocks."""
    if not 1 <= L < b.steps:
        raise IntervalError(f"past horizon L={L} must lie in [1, {b.steps - 1}]")
    N = b.steps - L
    u = b.input_rows()
    y = b.output_rows()
    return BehaviorSplit(
        U_p=u[: b.m * L], U_f=u[b.m * L:],
        Y_p=y[: b.p * L], Y_f=y[b.p * L:],
        L=L, N=N,
    )


def behavior_basis(sys: LtpSystem, t1: int, t2: int) -> BehaviorBasis:
    """Canonical basis of the restricted behavior of ``sys`` on ``[t1, t2]``."""
    if t2 < t1:
        raise IntervalError(f"behavior interval requires t2 >= t1, got [{t1}, {t2}]")
    mats = system_matrices(sys, t1, t2)
    steps = t2 - t1 + 1
    mi = sys.m * steps
    top = np.hstack([np.zeros((mi, sys.n)), np.eye(mi)])
    bottom = np.hstack([mats.obsv, mats.impulse])
    return BehaviorBasis(t1=t1, t2=t2, m=sys.m, p=sys.p, basis=np.vstack([top, bottom]))


def restrict(b: BehaviorBasis, new_t2: int) -> BehaviorBasis:
    """Truncate a behavior basis to the shorter interval ``[t1, new_t2]``.

    Dropping the trailing input and output rows of every column yields a
    spanning set of the behavior on the shorter interval.
    """
    if not b.t1 <= new_t2 <= b.t2:
        raise IntervalError(f"new_t2={new_t2} outside [{b.t1}, {b.t2}]")
    keep = new_t2 - b.t1 + 1
    u = b.input_rows()[: b.m * keep]
    y = b.output_rows()[: b.p * keep]
    return BehaviorBasis(t1=b.t1, t2=new_t2, m=b.m, p=b.p, basis=np.vstack([u, y]))


def subspace_equal(M1, M2, tol: float = TOL_RANK) -> bool:
    """True iff the column spans of ``M1`` and ``M2`` coincide.

    Decided by the rank test ``rank(M1) == rank(M2) == rank([M1, M2])`` under
    the package-wide numerical-rank rule with relative tolerance ``tol``.
    """
    M1 = np.atleast_2d(np.asarray(M1, dtype=float))
    M2 = np.atleast_2d(np.asarray(M2, dtype=float))
    if M1.shape[0] != M2.shape[0]:
        raise DimensionError(f"row counts differ: {M1.shape[0]} vs {M2.shape[0]}")
    r1 = numerical_rank(M1, tol)
    r2 = numerical_rank(M2, tol)
    return r1 == r2 == numerical_rank(np.hstack([M1, M2]), tol)


def subspace_contains(M_outer, M_inner, tol: float = TOL_RANK) -> bool:
    """True iff ``ColSpan(M_inner)`` is a subspace of ``ColSpan(M_outer)``."""
    M_outer = np.atleast_2d(np.asarray(M_outer, dtype=float))
    M_inner = np.atleast_2d(np.asarray(M_inner, dtype=float))
    if M_outer.shape[0] != M_inner.shape[0]:
        raise DimensionError(f"row counts differ: {M_outer.shape[0]} vs {M_inner.shape[0]}")
    r = numerical_rank(M_outer, tol)
    return numerical_rank(np.hstack([M_outer, M_inner]), tol) == r


def behaviors_equal_models(sysA: LtpSystem, sysB: LtpSystem, t1: int, t2: int,
                           tol: float = TOL_RANK) -> bool:
    """Whether two state-space models share the restricted behavior on ``[t1, t2]``.

    Uses the model-level characterization: the extended observability
    matrices must have equal column spans, and the difference of the impulse
    matrices must map into that span.
    """
    if (sysA.m, sysA.p) != (sysB.m, sysB.p):
        raise DimensionError("systems must share input and output dimensions")
    matsA = system_matrices(sysA, t1, t2)
    matsB = system_matrices(sysB, t1, t2)
    if not subspace_equal(matsA.obsv, matsB.obsv, tol):
        return False
    return subspace_contains(matsA.obsv, matsA.impulse - matsB.impulse, tol)


@dataclass(frozen=True)
class OrderLag:
    order: int
    lag: int


def order_and_lag(sys: LtpSystem, t: int, tol_rank: float = TOL_RANK) -> OrderLag:
    """Order and lag of ``sys`` at time ``t``.

    The order is the limiting rank of the extended observability matrix
    started at ``t``; the limit is attained within ``n * T`` steps, so the
    scan is capped there.  The lag is the shortest window length at which
    that rank is reached.
    """
    cap = max(1, sys.n * sys.period)
    obsv = system_matrices(sys, t, t + cap - 1).obsv
    order = numerical_rank(obsv, tol_rank)
    for s in range(1, cap + 1):
        if numerical_rank(obsv[: s * sys.p], tol_rank) == order:
            return OrderLag(order=order, lag=s)
    return OrderLag(order=order, lag=cap)


def is_controllable(sys: LtpSystem, tol_rank: float = TOL_RANK) -> bool:
    """Behavioral controllability via the lifted descriptions.

    Checks the n-step Kalman rank condition on the lifted pair at every base
    time within one period.  For non-minimal realizations state
    controllability is stronger than trajectory controllability, so callers
    working with such models should interpret ``False`` conservatively.
    """
    n = sys.n
    for t0 in range(sys.period):
        lifted = lift(sys, t0)
        blocks = []
        power = lifted.B
        for _ in range(n):
            blocks.append(power)
            power = lifted.A @ power
        if numerical_rank(np.hstack(blocks), tol_rank) != n:
            return False
    return True


def predict_output(split: BehaviorSplit, w_past, u_future,
                   tol_rank: float = TOL_RANK) -> np.ndarray:
    """Unique future output consistent with a past window and future input.

    Evaluates ``Y_f @ pinv([U_p; U_f; Y_p]) @ [u_past; u_future; y_past]``.
    The result is span-determined: it does not depend on which spanning
    matrices represent the behavior, provided the past horizon is at least
    the lag at its start and ``w_past`` lies in the past behavior.
    """
    w_past = np.asarray(w_past, dtype=float).reshape(-1)
    u_future = np.asarray(u_future, dtype=float).reshape(-1)
    mL = split.U_p.shape[0]
    pL = split.Y_p.shape[0]
    if w_past.shape[0] != mL + pL:
        raise DimensionError(f"w_past has length {w_past.shape[0]}, expected {mL + pL}")
    if u_future.shape[0] != split.U_f.shape[0]:
        raise DimensionError(
            f"u_future has length {u_future.shape[0]}, expected {split.U_f.shape[0]}"
        )
    lhs = np.vstack([split.U_p, split.U_f, split.Y_p])
    rhs = np.concatenate([w_past[:mL], u_future, w_past[mL:]])
    return split.Y_f @ (truncated_pinv(lhs, tol_rank) @ rhs)
