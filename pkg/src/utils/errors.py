"""
Error Types
===========

Exceptions raised by the Burgers laboratory. Each one maps onto a CLI exit
code (see ``src.cli.commands.EXIT_CODES``).
"""

from typing import List, Optional


class GridMismatchError(ValueError):
    """Operands live on different grids or in different space bases."""


class ConfigError(ValueError):
    """
    Invalid run configuration.

    Parameters
    ----------
    path : str
        Dotted path of the offending field, e.g. ``'grid.Nt'``.
    message : str
        What is wrong with it.
    """

    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}")


class NonConvergenceError(RuntimeError):
    """An iteration hit its cap before reaching tolerance."""

    def __init__(self, message: str, history: Optional[List[float]] = None):
        self.history = list(history or [])
        super().__init__(message)


class ContinuationError(NonConvergenceError):
    """A lambda sweep stopped early; ``branch`` holds what converged."""

    def __init__(self, message: str, branch, history: Optional[List[float]] = None):
        self.branch = branch
        super().__init__(message, history)


class LinearSolveError(RuntimeError):
    """Breakdown of the inner Krylov solve."""


class OracleInstabilityError(RuntimeError):
    """Explicit time stepping is unstable at the requested step size."""

    def __init__(self, message: str, cfl: float = float('nan')):
        self.cfl = cfl
        super().__init__(message)


class EstimateViolationError(RuntimeError):
    """A converged solution broke the a priori gradient bound."""

    def __init__(self, message: str, report=None):
        self.report = report
        super().__init__(message)
