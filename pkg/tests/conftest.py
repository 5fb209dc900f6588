import numpy as np
import pytest

from pdeepc import LtpSystem


def scaled(rng, rows, cols, norm=0.95):
    """Random matrix rescaled to the given spectral norm (if nonzero)."""
    M = rng.standard_normal((rows, cols))
    s = np.linalg.norm(M, 2)
    return M * (norm / s) if s > 0 else M


def random_ltp_system(rng, n=2, m=1, p=1, T=2, stable=True):
    """A generic random LTP system; A factors are contracted for stability."""
    A = [scaled(rng, n, n) if stable else rng.standard_normal((n, n)) for _ in range(T)]
    B = [rng.standard_normal((n, m)) for _ in range(T)]
    C = [rng.standard_normal((p, n)) for _ in range(T)]
    D = [rng.standard_normal((p, m)) for _ in range(T)]
    return LtpSystem.from_matrices(A, B, C, D)


def random_controllable_ltp(rng, n=2, m=1, p=1, T=2, max_tries=50):
    """Random LTP system that passes the behavioral controllability test."""
    from pdeepc.behavior import is_controllable

    for _ in range(max_tries):
        sys = random_ltp_system(rng, n=n, m=m, p=p, T=T)
        if is_controllable(sys):
            return sys
    raise RuntimeError("failed to draw a controllable system")


@pytest.fixture
def alternating_gain_system():
    """Single-state SISO system of period 2 with input gain (-1)^t.

    Its lifted descriptions at even and odd base times have different
    one-step behaviors, which makes it the canonical phase-sensitivity
    fixture throughout the suite.
    """
    return LtpSystem.from_matrices(
        A=[[[1.0]], [[1.0]]],
        B=[[[1.0]], [[-1.0]]],
        C=[[[1.0]], [[1.0]]],
        D=[[[0.0]], [[0.0]]],
    )


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
