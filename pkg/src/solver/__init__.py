"""Newton-Krylov solver, lambda-continuation and the time-stepping oracle."""

from .config import SolveConfig, uniform_lambdas
from .newton import continuation_solve, convergence_ratios, newton_solve, solve_linear
from .oracle import OracleResult, imex_oracle
from .reports import Branch, BranchEntry, EstimateReport, energy_identity_holds, make_report

__all__ = [
    "Branch",
    "BranchEntry",
    "EstimateReport",
    "OracleResult",
    "SolveConfig",
    "continuation_solve",
    "convergence_ratios",
    "energy_identity_holds",
    "imex_oracle",
    "make_report",
    "newton_solve",
    "solve_linear",
    "uniform_lambdas",
]
