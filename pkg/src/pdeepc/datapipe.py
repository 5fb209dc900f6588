"""Offline data collection and phase-indexed data matrices.

One recorded trajectory of a period-``T`` system yields ``T`` phase-aligned
sets of past/future data matrices ``(U_p, U_f, Y_p, Y_f)``, extracted as
block-row windows of the periodic Hankel matrices of depth
``K = L + N + T - 1``.  The proper index selects which of the ``T`` sets
represents the behavior on the total horizon anchored at the current time.
"""
from __future__ import annotations

import csv
import json
from dataclasses import dataclass

import numpy as np

from .errors import DataLengthError, DimensionError
from .excitation import periodic_hankel
from .ltp import Trajectory
from .plant import Plant


@dataclass(frozen=True)
class DataMatrices:
    """The ``T`` indexed quadruples of offline data matrices.

    The phase index ``theta`` is 1-based throughout the public API, matching
    the block-row extraction rule; internal tuples are 0-based, so set
    ``theta`` lives at position ``theta - 1``.
    """

    L: int
    N: int
    U_p: tuple[np.ndarray, ...]
    U_f: tuple[np.ndarray, ...]
    Y_p: tuple[np.ndarray, ...]
    Y_f: tuple[np.ndarray, ...]
    t_d1: int | None = None

    def __post_init__(self):
        T = len(self.U_p)
        if not (len(self.U_f) == len(self.Y_p) == len(self.Y_f) == T):
            raise DimensionError("the four matrix families must have equal length")
        h = self.U_p[0].shape[1]
        for family in (self.U_p, self.U_f, self.Y_p, self.Y_f):
            for M in family:
                if M.shape[1] != h:
                    raise DimensionError("all data matrices must share the column count")

    @property
    def T(self) -> int:
        return len(self.U_p)

    @property
    def h(self) -> int:
        return self.U_p[0].shape[1]

    @property
    def m(self) -> int:
        return self.U_p[0].shape[0] // self.L

    @property
    def p(self) -> int:
        return self.Y_p[0].shape[0] // self.L

    def matrices(self, theta: int) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """The quadruple ``(U_p, U_f, Y_p, Y_f)`` for 1-based phase ``theta``."""
        if not 1 <= theta <= self.T:
            raise ValueError(f"theta={theta} outside 1..{self.T}")
        i = theta - 1
        return self.U_p[i], self.U_f[i], self.Y_p[i], self.Y_f[i]

    def stacked(self, theta: int) -> np.ndarray:
        """Column-span representative ``[U_p; U_f; Y_p; Y_f]`` for ``theta``."""
        return np.vstack(self.matrices(theta))

    def past_stack(self, theta: int) -> np.ndarray:
        """``[U_p; Y_p]`` for ``theta``; the input of the index test."""
        Up, _, Yp, _ = self.matrices(theta)
        return np.vstack([Up, Yp])

    def to_json(self) -> str:
        doc = {
            "T": self.T, "L": self.L, "N": self.N, "h": self.h,
            "t_d1": self.t_d1,
            "sets": [
                {
                    "theta": i + 1,
                    "U_p": self.U_p[i].tolist(), "U_f": self.U_f[i].tolist(),
                    "Y_p": self.Y_p[i].tolist(), "Y_f": self.Y_f[i].tolist(),
                }
                for i in range(self.T)
            ],
        }
        return json.dumps(doc)

    @classmethod
    def from_json(cls, text: str) -> "DataMatrices":
        doc = json.loads(text)
        sets = sorted(doc["sets"], key=lambda s: s["theta"])
        built = cls(
            L=doc["L"], N=doc["N"],
            U_p=tuple(np.array(s["U_p"], dtype=float) for s in sets),
            U_f=tuple(np.array(s["U_f"], dtype=float) for s in sets),
            Y_p=tuple(np.array(s["Y_p"], dtype=float) for s in sets),
            Y_f=tuple(np.array(s["Y_f"], dtype=float) for s in sets),
            t_d1=doc["t_d1"],
        )
        if built.T != doc["T"] or built.h != doc["h"]:
            raise DimensionError("declared T/h do not match the stored matrices")
        return built


def build_data_matrices(w_d: Trajectory, L: int, N: int, T: int,
                        known_start: bool = True) -> DataMatrices:
    """Slice offline data into the ``T`` phase-indexed matrix sets.

    The uncropped matrices are the periodic Hankel matrices of depth
    ``K = L + N + T - 1``; set ``theta`` keeps block rows ``theta`` through
    ``theta + L - 1`` for the past and the following ``N`` block rows for the
    future (block rows are 1-based).
    """
    if L < 1 or N < 1 or T < 1:
        raise ValueError("L, N and T must be positive")
    K = L + N + T - 1
    if len(w_d) < K:
        raise DataLengthError(f"offline data has {len(w_d)} steps, need at least {K}")
    m, p = w_d.m, w_d.p
    U_d = periodic_hankel(w_d.u, K, T)
    Y_d = periodic_hankel(w_d.y, K, T)

    def block_rows(M, size, first, count):
        return M[(first - 1) * size:(first - 1 + count) * size]

    U_p, U_f, Y_p, Y_f = [], [], [], []
    for theta in range(1, T + 1):
        U_p.append(block_rows(U_d, m, theta, L))
        U_f.append(block_rows(U_d, m, theta + L, N))
        Y_p.append(block_rows(Y_d, p, theta, L))
        Y_f.append(block_rows(Y_d, p, theta + L, N))
    return DataMatrices(
        L=L, N=N,
        U_p=tuple(U_p), U_f=tuple(U_f), Y_p=tuple(Y_p), Y_f=tuple(Y_f),
        t_d1=w_d.start if known_start else None,
    )


def proper_index(t: int, t_d1: int, L: int, T: int) -> int:
    """The phase index whose data matrices represent the horizon at time ``t``."""
    return 1 + (t - t_d1 - L) % T


def advance_index(theta: int, steps: int, T: int) -> int:
    """Cyclically advance a 1-based phase index by ``steps`` time steps."""
    return 1 + (theta - 1 + steps) % T


def required_ppe_order(L: int, N: int, T: int, n_bound: int) -> int:
    """Excitation order the offline input must reach for exact data spans."""
    if min(L, N, T, n_bound) < 1:
        raise ValueError("all arguments must be positive")
    K = L + N + T - 1
    return (-(-K // T) + n_bound) * T


def recommended_data_length(L: int, N: int, T: int, n_bound: int, m: int) -> int:
    """Record length that makes the required excitation order achievable.

    Chosen so the periodic Hankel matrix of the required depth has enough
    columns for full row rank under generic input, with a cushion of ``2n``
    extra columns.
    """
    K = L + N + T - 1
    order = required_ppe_order(L, N, T, n_bound)
    return T * (m * order + 2 * n_bound) + K


def gaussian_input_law(m: int, scale: float = 1.0):
    """I.i.d. input law ``u_t ~ N(0, scale^2 I_m)``."""

    def law(t: int, rng: np.random.Generator) -> np.ndarray:
        return scale * rng.standard_normal(m)

    return law


def zero_input_law(m: int):
    def law(t: int, rng: np.random.Generator) -> np.ndarray:
        return np.zeros(m)

    return law


def collect_offline(plant: Plant, t_d1: int, length: int, input_law, seed: int) -> Trajectory:
    """Drive the plant from ``t_d1`` for ``length`` steps and record the data.

    The input law draws from a generator seeded with ``seed``, so collection
    is deterministic for a deterministic plant.
    """
    if length < 1:
        raise ValueError("length must be positive")
    if plant.t != t_d1:
        raise ValueError(f"plant clock is at {plant.t}, expected t_d1={t_d1}")
    before = plant.steps_recorded
    rng = np.random.default_rng(seed)
    for k in range(length):
        plant.step(input_law(t_d1 + k, rng))
    traj = plant.history()
    return traj.segment(t_d1, t_d1 + length - 1) if before else traj


def trajectory_to_csv(traj: Trajectory, path) -> None:
    """Persist a trajectory as ``t, u_1..u_m, y_1..y_p`` rows."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(
            ["t"]
            + [f"u_{i + 1}" for i in range(traj.m)]
            + [f"y_{i + 1}" for i in range(traj.p)]
        )
        for k in range(len(traj)):
            writer.writerow([traj.start + k, *traj.u[k], *traj.y[k]])


def trajectory_from_csv(path) -> Trajectory:
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        m = sum(1 for name in header if name.startswith("u_"))
        p = sum(1 for name in header if name.startswith("y_"))
        rows = [[float(v) for v in row] for row in reader]
    if not rows:
        raise DataLengthError(f"no samples in {path}")
    data = np.array(rows)
    return Trajectory(start=int(data[0, 0]), u=data[:, 1:1 + m], y=data[:, 1 + m:1 + m + p])
