"""Stateful plant simulator used for data collection and closed-loop runs.

Wraps an :class:`~pdeepc.ltp.LtpSystem` with an internal clock, a state
vector, optional additive Gaussian process/measurement noise, and a full
input-output recording.  This is the mutable counterpart of the pure
:func:`~pdeepc.ltp.simulate`; one instance drives one experiment arm.
"""
from __future__ import annotations

import numpy as np

from .errors import DataLengthError, DimensionError
from .ltp import LtpSystem, Trajectory


class Plant:
    def __init__(self, system: LtpSystem, t0: int = 0, x0=None,
                 process_var: float = 0.0, measurement_var: float = 0.0,
                 rng: np.random.Generator | None = None):
        self.system = system
        self._t = int(t0)
        self._start = int(t0)
        if x0 is None:
            x0 = np.zeros(system.n)
        self._x = np.asarray(x0, dtype=float).reshape(-1).copy()
        if self._x.shape[0] != system.n:
            raise DimensionError(f"x0 has dimension {self._x.shape[0]}, expected {system.n}")
        if process_var < 0 or measurement_var < 0:
            raise ValueError("noise variances must be nonnegative")
        self.process_std = float(np.sqrt(process_var))
        self.measurement_std = float(np.sqrt(measurement_var))
        self._rng = rng if rng is not None else np.random.default_rng()
        self._us: list[np.ndarray] = []
        self._ys: list[np.ndarray] = []

    @property
    def t(self) -> int:
        """Current time step (the next input will be applied here)."""
        return self._t

    @property
    def state(self) -> np.ndarray:
        return self._x.copy()

    @property
    def steps_recorded(self) -> int:
        return len(self._us)

    def step(self, u) -> np.ndarray:
        """Apply input ``u`` at the current step; returns the measured output."""
        sys = self.system
        u = np.asarray(u, dtype=float).reshape(-1)
        if u.shape[0] != sys.m:
            raise DimensionError(f"input has dimension {u.shape[0]}, expected {sys.m}")
        t = self._t
        y = sys.c(t) @ self._x + sys.d(t) @ u
        if self.measurement_std > 0:
            y = y + self.measurement_std * self._rng.standard_normal(sys.p)
        x_next = sys.a(t) @ self._x + sys.b(t) @ u
        if self.process_std > 0:
            x_next = x_next + self.process_std * self._rng.standard_normal(sys.n)
        self._us.append(u.copy())
        self._ys.append(y.copy())
        self._x = x_next
        self._t = t + 1
        return y.copy()

    def history(self) -> Trajectory:
        """Everything recorded so far, anchored at the construction time."""
        m, p = self.system.m, self.system.p
        if not self._us:
            return Trajectory(self._start, np.zeros((0, m)), np.zeros((0, p)))
        return Trajectory(self._start, np.vstack(self._us), np.vstack(self._ys))

    def recent_window(self, L: int) -> np.ndarray:
        """Concatenated trajectory vector of the last ``L`` recorded steps."""
        if len(self._us) < L:
            raise DataLengthError(f"only {len(self._us)} steps recorded, need {L}")
        u = np.vstack(self._us[-L:]).ravel()
        y = np.vstack(self._ys[-L:]).ravel()
        return np.concatenate([u, y])
