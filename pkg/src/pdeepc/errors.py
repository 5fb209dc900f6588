"""Exception types shared across the package."""


class PdeepcError(Exception):
    """Base class for all package-specific errors."""


class IntervalError(PdeepcError, ValueError):
    """A time interval is empty or reversed (t2 < t1)."""


class DimensionError(PdeepcError, ValueError):
    """Vector or matrix dimensions do not match the declared system sizes."""


class DataLengthError(PdeepcError, ValueError):
    """A recorded signal is too short for the requested operation."""


class InfeasibleProblemError(PdeepcError, RuntimeError):
    """A constrained optimization problem has an empty feasible set."""

    def __init__(self, message: str, residuals=None):
        super().__init__(message)
        self.residuals = residuals


class SolverError(PdeepcError, RuntimeError):
    """A numerical solver failed to reach the requested accuracy."""

    def __init__(self, message: str, residuals=None):
        super().__init__(message)
        self.residuals = residuals
