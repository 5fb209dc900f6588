"""Discrete-time linear time-periodic (LTP) state-space systems.

A system with period ``T`` is described by matrix families ``A_t, B_t, C_t,
D_t`` that repeat every ``T`` steps:

    x[t+1] = A_t x[t] + B_t u[t]
    y[t]   = C_t x[t] + D_t u[t]

``T = 1`` is the ordinary LTI case.  Matrix access at any integer ``t``
resolves through the nonnegative residue of ``t mod T``, so the families are
defined on all of the integers.

This module also provides the classical matrices attached to a time interval
(state transition, extended controllability/observability, block impulse
response), exact simulation, and the standard lifting of an LTP system into
an LTI system whose single step covers one full period.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, IntervalError


def _freeze(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(np.asarray(a, dtype=float))
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class LtpSystem:
    """Periodic state-space matrices, stored stacked along the time axis.

    ``A`` has shape ``(T, n, n)``, ``B`` ``(T, n, m)``, ``C`` ``(T, p, n)``
    and ``D`` ``(T, p, m)``.  Instances are immutable; the arrays are marked
    read-only on construction.
    """

    A: np.ndarray
    B: np.ndarray
    C: np.ndarray
    D: np.ndarray

    def __post_init__(self):
        A = _freeze(np.atleast_3d(self.A))
        B = _freeze(np.atleast_3d(self.B))
        C = _freeze(np.atleast_3d(self.C))
        D = _freeze(np.atleast_3d(self.D))
        T, n, n2 = A.shape
        if n != n2:
            raise DimensionError(f"A matrices must be square, got {n}x{n2}")
        if B.shape[0] != T or C.shape[0] != T or D.shape[0] != T:
            raise DimensionError("A, B, C, D must contain the same number of matrices")
        m = B.shape[2]
        p = C.shape[1]
        if B.shape[1] != n or C.shape[2] != n or D.shape[1:] != (p, m):
            raise DimensionError(
                f"inconsistent dimensions: A {A.shape}, B {B.shape}, C {C.shape}, D {D.shape}"
            )
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "B", B)
        object.__setattr__(self, "C", C)
        object.__setattr__(self, "D", D)

    @classmethod
    def from_matrices(cls, A, B, C, D) -> "LtpSystem":
        """Build from sequences of per-step matrices (length = period)."""
        return cls(np.stack([np.atleast_2d(Ai) for Ai in A]),
                   np.stack([np.atleast_2d(Bi) for Bi in B]),
                   np.stack([np.atleast_2d(Ci) for Ci in C]),
                   np.stack([np.atleast_2d(Di) for Di in D]))

    @classmethod
    def constant(cls, A, B, C, D) -> "LtpSystem":
        """An LTI system expressed as an LTP system with period 1."""
        return cls.from_matrices([A], [B], [C], [D])

    @property
    def period(self) -> int:
        return self.A.shape[0]

    @property
    def n(self) -> int:
        return self.A.shape[1]

    @property
    def m(self) -> int:
        return self.B.shape[2]

    @property
    def p(self) -> int:
        return self.C.shape[1]

    def _idx(self, t: int) -> int:
        return int(t) % self.period

    def a(self, t: int) -> np.ndarray:
        return self.A[self._idx(t)]

    def b(self, t: int) -> np.ndarray:
        return self.B[self._idx(t)]

    def c(self, t: int) -> np.ndarray:
        return self.C[self._idx(t)]

    def d(self, t: int) -> np.ndarray:
        return self.D[self._idx(t)]

    def to_json(self) -> str:
        """Serialize to the documented JSON schema (row-major matrix arrays)."""
        doc = {
            "T": self.period, "n": self.n, "m": self.m, "p": self.p,
            "A": self.A.tolist(), "B": self.B.tolist(),
            "C": self.C.tolist(), "D": self.D.tolist(),
        }
        return json.dumps(doc)

    @classmethod
    def from_json(cls, text: str) -> "LtpSystem":
        doc = json.loads(text)
        sys = cls(np.array(doc["A"], dtype=float), np.array(doc["B"], dtype=float),
                  np.array(doc["C"], dtype=float), np.array(doc["D"], dtype=float))
        declared = (doc["T"], doc["n"], doc["m"], doc["p"])
        actual = (sys.period, sys.n, sys.m, sys.p)
        if tuple(declared) != actual:
            raise DimensionError(f"declared dimensions {declared} do not match arrays {actual}")
        return sys


@dataclass(frozen=True)
class Trajectory:
    """A time-anchored input-output record.

    ``u`` has shape ``(steps, m)`` and ``y`` ``(steps, p)``; row ``k`` holds
    the signals at time ``start + k``.
    """

    start: int
    u: np.ndarray
    y: np.ndarray

    def __post_init__(self):
        u = _freeze(np.atleast_2d(self.u))
        y = _freeze(np.atleast_2d(self.y))
        if u.shape[0] != y.shape[0]:
            raise DimensionError(f"u has {u.shape[0]} steps but y has {y.shape[0]}")
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "y", y)

    def __len__(self) -> int:
        return self.u.shape[0]

    @property
    def m(self) -> int:
        return self.u.shape[1]

    @property
    def p(self) -> int:
        return self.y.shape[1]

    @property
    def stop(self) -> int:
        """One past the last recorded time step."""
        return self.start + len(self)

    def _offsets(self, t1: int, t2: int) -> tuple[int, int]:
        if t2 < t1:
            raise IntervalError(f"empty interval [{t1}, {t2}]")
        if t1 < self.start or t2 >= self.stop:
            raise IntervalError(
                f"interval [{t1}, {t2}] outside recorded range [{self.start}, {self.stop - 1}]"
            )
        return t1 - self.start, t2 - self.start + 1

    def segment(self, t1: int, t2: int) -> "Trajectory":
        """Restriction to the inclusive time interval ``[t1, t2]``."""
        i, j = self._offsets(t1, t2)
        return Trajectory(t1, self.u[i:j], self.y[i:j])

    def w(self, t1: int | None = None, t2: int | None = None) -> np.ndarray:
        """Concatenated vector ``[u_{t1..t2}; y_{t1..t2}]`` (time-major)."""
        if t1 is None:
            t1 = self.start
        if t2 is None:
            t2 = self.stop - 1
        i, j = self._offsets(t1, t2)
        return np.concatenate([self.u[i:j].ravel(), self.y[i:j].ravel()])


@dataclass(frozen=True)
class SystemMatrices:
    """Interval matrices for ``[t1, t2]``: state transition ``phi``,
    extended controllability ``ctrb``, extended observability ``obsv`` and
    the lower block-triangular impulse-response matrix ``impulse``."""

    phi: np.ndarray
    ctrb: np.ndarray
    obsv: np.ndarray
    impulse: np.ndarray


@dataclass(frozen=True)
class SimulationResult:
    traj: Trajectory
    states: np.ndarray  # (steps + 1, n); the final row is the post-horizon state

    @property
    def final_state(self) -> np.ndarray:
        return self.states[-1]


@dataclass(frozen=True)
class LiftedSystem:
    """One-period LTI packing of an LTP system, anchored at ``base_time``.

    The lifted input stacks ``T`` consecutive inputs (length ``m*T``) and the
    lifted output stacks ``T`` consecutive outputs (length ``p*T``); the state
    is sampled at the start of each period.
    """

    base_time: int
    A: np.ndarray
    B: np.ndarray
    C: np.ndarray
    D: np.ndarray

    def as_ltp(self) -> LtpSystem:
        """View the lifted system as a period-1 :class:`LtpSystem`."""
        return LtpSystem.constant(self.A, self.B, self.C, self.D)


def state_transition(sys: LtpSystem, t1: int, t2: int) -> np.ndarray:
    """Product ``A_{t2-1} ... A_{t1}`` (identity when ``t2 == t1``)."""
    if t2 < t1:
        raise IntervalError(f"state transition requires t2 >= t1, got [{t1}, {t2}]")
    phi = np.eye(sys.n)
    for t in range(t1, t2):
        phi = sys.a(t) @ phi
    return phi


def system_matrices(sys: LtpSystem, t1: int, t2: int) -> SystemMatrices:
    """Classical interval matrices on ``[t1, t2]`` (inclusive).

    ``impulse`` block ``(i, j)`` for ``i >= j`` is the impulse response from
    the input at ``t1 + j`` to the output at ``t1 + i``: ``D`` on the
    diagonal, ``C Phi B`` below it.  Built in one forward pass per block
    column, caching the running state-transition products.
    """
    if t2 < t1:
        raise IntervalError(f"system_matrices requires t2 >= t1, got [{t1}, {t2}]")
    n, m, p = sys.n, sys.m, sys.p
    steps = t2 - t1 + 1

    obsv = np.zeros((steps * p, n))
    running = np.eye(n)
    for k in range(steps):
        obsv[k * p:(k + 1) * p] = sys.c(t1 + k) @ running
        running = sys.a(t1 + k) @ running
    phi = state_transition(sys, t1, t2)

    ctrb = np.zeros((n, steps * m))
    trailing = np.eye(n)  # holds Phi from t1+k+1 up to t2+1
    for k in range(steps - 1, -1, -1):
        ctrb[:, k * m:(k + 1) * m] = trailing @ sys.b(t1 + k)
        trailing = trailing @ sys.a(t1 + k)

    impulse = np.zeros((steps * p, steps * m))
    for j in range(steps):
        impulse[j * p:(j + 1) * p, j * m:(j + 1) * m] = sys.d(t1 + j)
        v = sys.b(t1 + j)
        for i in range(j + 1, steps):
            impulse[i * p:(i + 1) * p, j * m:(j + 1) * m] = sys.c(t1 + i) @ v
            v = sys.a(t1 + i) @ v

    return SystemMatrices(phi=phi, ctrb=ctrb, obsv=obsv, impulse=impulse)


def simulate(sys: LtpSystem, t1: int, x_init, u) -> SimulationResult:
    """Run the state recursion from ``x_init`` at time ``t1`` under inputs ``u``.

    ``u`` is an ``(N, m)`` array (or a sequence of length-``m`` vectors); the
    result records ``N`` outputs and ``N + 1`` states.
    """
    u = np.atleast_2d(np.asarray(u, dtype=float))
    x = np.asarray(x_init, dtype=float).reshape(-1)
    if x.shape[0] != sys.n:
        raise DimensionError(f"x_init has dimension {x.shape[0]}, expected {sys.n}")
    if u.shape[1] != sys.m:
        raise DimensionError(f"inputs have dimension {u.shape[1]}, expected {sys.m}")
    steps = u.shape[0]
    states = np.zeros((steps + 1, sys.n))
    outputs = np.zeros((steps, sys.p))
    states[0] = x
    for k in range(steps):
        t = t1 + k
        outputs[k] = sys.c(t) @ states[k] + sys.d(t) @ u[k]
        states[k + 1] = sys.a(t) @ states[k] + sys.b(t) @ u[k]
    return SimulationResult(traj=Trajectory(t1, u, outputs), states=states)


def lift(sys: LtpSystem, t0: int) -> LiftedSystem:
    """Lift one period starting at ``t0`` into a single LTI step."""
    T = sys.period
    mats = system_matrices(sys, t0, t0 + T - 1)
    return LiftedSystem(
        base_time=int(t0),
        A=state_transition(sys, t0, t0 + T),
        B=mats.ctrb,
        C=mats.obsv,
        D=mats.impulse,
    )
