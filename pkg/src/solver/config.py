"""
Solver Configuration
====================
"""

from dataclasses import dataclass, field, replace
from typing import Optional, Tuple

import numpy as np

PREDICTORS = ('previous', 'secant')


def uniform_lambdas(n_points: int = 21) -> Tuple[float, ...]:
    """``n_points`` uniform homotopy parameters from 0 to 1."""
    return tuple(float(x) for x in np.linspace(0.0, 1.0, n_points))


@dataclass(frozen=True)
class SolveConfig:
    """
    Controls of the Newton / continuation solver.

    Parameters
    ----------
    newton_tol : float
        Tolerance on the dual norm of the residual.
    max_newton : int
        Newton iteration cap per lambda.
    lambda_grid : Tuple[float, ...]
        Increasing homotopy parameters from 0 to 1.
    krylov_tol : float
        Relative tolerance of the inner GMRES solve.
    krylov_max : int
        GMRES restart length (inner iterations per cycle).
    krylov_restarts : int
        GMRES restart cycles.
    continuation : str
        Predictor, ``'previous'`` (natural continuation) or ``'secant'``.
    c_emp : float, optional
        Empirical interpolation constant used by the step-5 check.
    bisect : bool
        Whether a failed lambda step is retried once with a halved step.
    """

    newton_tol: float = 1e-10
    max_newton: int = 50
    lambda_grid: Tuple[float, ...] = field(default_factory=uniform_lambdas)
    krylov_tol: float = 1e-12
    krylov_max: int = 200
    krylov_restarts: int = 5
    continuation: str = 'previous'
    c_emp: Optional[float] = None
    bisect: bool = True

    def __post_init__(self):
        object.__setattr__(self, 'lambda_grid', tuple(float(x) for x in self.lambda_grid))
        if not self.newton_tol > 0 or not self.krylov_tol > 0:
            raise ValueError("tolerances must be > 0")
        if self.max_newton < 1 or self.krylov_max < 1 or self.krylov_restarts < 1:
            raise ValueError("iteration caps must be >= 1")
        if self.continuation not in PREDICTORS:
            raise ValueError(f"Unknown predictor: {self.continuation}. Use one of {PREDICTORS}.")
        grid = np.asarray(self.lambda_grid)
        if grid.size < 1 or grid[0] != 0.0 or grid[-1] != 1.0:
            raise ValueError("lambda_grid must start at 0 and end at 1")
        if np.any(np.diff(grid) <= 0):
            raise ValueError("lambda_grid must be strictly increasing")

    def with_c_emp(self, c_emp: float) -> 'SolveConfig':
        return replace(self, c_emp=float(c_emp))

    def to_dict(self) -> dict:
        return {
            'newton_tol': self.newton_tol,
            'max_newton': self.max_newton,
            'lambda_grid': list(self.lambda_grid),
            'krylov_tol': self.krylov_tol,
            'krylov_max': self.krylov_max,
            'krylov_restarts': self.krylov_restarts,
            'continuation': self.continuation,
            'c_emp': self.c_emp,
            'bisect': self.bisect,
        }
