"""Utility functions for the Burgers laboratory."""

from .errors import (
    ConfigError,
    ContinuationError,
    EstimateViolationError,
    GridMismatchError,
    LinearSolveError,
    NonConvergenceError,
    OracleInstabilityError,
)
from .helpers import derive_seed, make_rng, midpoint_nodes, time_nodes

__all__ = [
    "ConfigError",
    "ContinuationError",
    "EstimateViolationError",
    "GridMismatchError",
    "LinearSolveError",
    "NonConvergenceError",
    "OracleInstabilityError",
    "derive_seed",
    "make_rng",
    "midpoint_nodes",
    "time_nodes",
]
