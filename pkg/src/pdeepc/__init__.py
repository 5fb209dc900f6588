"""Data-driven predictive control for linear time-periodic systems.

The package covers the full pipeline: LTP state-space modelling and lifting,
behavioral subspace computations, (periodic) persistent-excitation tests,
offline data organization, the warm-up index test, the P-DeePC / P-SPC /
MPC controllers, and the mass-spring-damper benchmark.
"""
from .errors import (
    DataLengthError,
    DimensionError,
    InfeasibleProblemError,
    IntervalError,
    PdeepcError,
    SolverError,
)
from .ltp import (
    LiftedSystem,
    LtpSystem,
    SimulationResult,
    SystemMatrices,
    Trajectory,
    lift,
    simulate,
    state_transition,
    system_matrices,
)

__all__ = [
    "DataLengthError",
    "DimensionError",
    "InfeasibleProblemError",
    "IntervalError",
    "PdeepcError",
    "SolverError",
    "LiftedSystem",
    "LtpSystem",
    "SimulationResult",
    "SystemMatrices",
    "Trajectory",
    "lift",
    "simulate",
    "state_transition",
    "system_matrices",
]
