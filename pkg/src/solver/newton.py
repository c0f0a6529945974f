"""
Newton-Krylov Solver and Continuation
=====================================

Solves ``L u + lambda S(u) = f`` by Newton's method with a matrix-free GMRES
inner solve preconditioned by the exact inverse of the diagonal part L, and
follows the solution branch from lambda = 0 to lambda = 1.
"""

import logging
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy.sparse.linalg import LinearOperator, gmres
from tqdm import tqdm

from ..burgers.operator import OperatorParams, apply_L_inverse, jacobian_apply, linear_symbol, residual
from ..spectral.fields import DualField, Field
from ..utils.errors import ContinuationError, EstimateViolationError, LinearSolveError, NonConvergenceError
from .config import SolveConfig
from .reports import Branch, BranchEntry, EstimateReport, make_report

logger = logging.getLogger(__name__)


def solve_linear(f: DualField, p: OperatorParams) -> Field:
    """
    Exact solution of ``L u = f`` (lambda = 0).

    Examples
    --------
    For ``f_{0,1} = 1`` and ``mu = 1`` the solution has ``u_{0,1} = 1 / pi^2``.
    """
    return apply_L_inverse(f, p.mu)


def _newton_step(u: Field, r: DualField, p: OperatorParams, cfg: SolveConfig) -> Field:
    """Correction ``delta`` with ``J(u) delta = -r``."""
    if p.lam == 0.0:
        return apply_L_inverse(-r, p.mu)

    grid = u.grid
    n = u.coeffs.size
    symbol = linear_symbol(grid, p.mu).ravel()

    def matvec(x: np.ndarray) -> np.ndarray:
        w = Field.from_vector(grid, np.asarray(x).ravel())
        return jacobian_apply(u, w, p).ravel()

    jacobian = LinearOperator((n, n), matvec=matvec, dtype=complex)
    preconditioner = LinearOperator((n, n), matvec=lambda x: np.asarray(x).ravel() / symbol, dtype=complex)

    b = -r.ravel()
    restart = min(cfg.krylov_max, n)
    x, info = gmres(
        jacobian, b,
        rtol=cfg.krylov_tol, atol=0.0,
        restart=restart, maxiter=cfg.krylov_restarts,
        M=preconditioner,
    )
    if info < 0:
        raise LinearSolveError(f"GMRES breakdown (info={info}) at lambda={p.lam}")
    if info > 0:
        logger.warning("GMRES stopped after %d iterations above rtol=%.1e at lambda=%.4f",
                       info, cfg.krylov_tol, p.lam)
    return Field.from_vector(grid, x)


def convergence_ratios(history: Sequence[float], floor: float = 0.0) -> List[float]:
    """
    Quadratic-convergence ratios ``r_{n+1} / r_n^2`` of a residual history.

    Steps that land at or below ``floor`` (round-off level) are skipped.
    """
    return [curr / prev ** 2 for prev, curr in zip(history[:-1], history[1:])
            if prev > 0 and curr > floor]


def _log_convergence(history: List[float]) -> None:
    if not logger.isEnabledFor(logging.DEBUG):
        return
    for ratio in convergence_ratios(history):
        logger.debug("quadratic ratio r_n+1/r_n^2 = %.3e", ratio)


def newton_solve(
    f: DualField,
    p: OperatorParams,
    u0: Optional[Field] = None,
    cfg: Optional[SolveConfig] = None
) -> Tuple[Field, EstimateReport]:
    """
    Newton iteration for ``L u + lambda S(u) = f``.

    Parameters
    ----------
    f : DualField
        Forcing.
    p : OperatorParams
        Viscosity and homotopy parameter.
    u0 : Field, optional
        Initial guess (zero by default).
    cfg : SolveConfig, optional
        Tolerances and iteration caps.

    Returns
    -------
    Tuple[Field, EstimateReport]
        Solution with Hermitian coefficients and its estimate report, which
        carries the residual history.

    Raises
    ------
    NonConvergenceError
        If the dual residual is not below ``newton_tol`` within ``max_newton``
        iterations; carries the residual history.
    LinearSolveError
        If the inner GMRES solve breaks down.
    """
    cfg = cfg or SolveConfig()
    u = Field.zeros(f.grid) if u0 is None else u0.symmetrized()

    history: List[float] = []
    for it in range(cfg.max_newton + 1):
        r, r_norm = residual(u, f, p)
        history.append(r_norm)
        if not np.isfinite(r_norm):
            raise NonConvergenceError(f"residual became non-finite at lambda={p.lam}", history)
        if r_norm <= cfg.newton_tol:
            break
        if it == cfg.max_newton:
            raise NonConvergenceError(
                f"Newton did not reach {cfg.newton_tol:.1e} in {cfg.max_newton} iterations "
                f"at lambda={p.lam} (last residual {r_norm:.3e})",
                history,
            )
        u = (u + _newton_step(u, r, p, cfg)).symmetrized()

    _log_convergence(history)
    logger.debug("lambda=%.4f converged in %d iterations, residual %.3e",
                 p.lam, len(history) - 1, history[-1])
    report = make_report(u, f, p, newton_iters=len(history) - 1,
                         final_residual=history[-1], c_emp=cfg.c_emp,
                         residual_history=history)
    return u, report


def _predict(branch: Branch, lam: float, cfg: SolveConfig) -> Optional[Field]:
    """Initial guess at ``lam`` from the branch so far."""
    if not branch.entries:
        return None
    last = branch.entries[-1]
    if cfg.continuation == 'secant' and len(branch.entries) >= 2:
        prev = branch.entries[-2]
        slope = (lam - last.lam) / (last.lam - prev.lam)
        return last.u + slope * (last.u - prev.u)
    return last.u


def _solve_point(f: DualField, mu: float, lam: float, branch: Branch, cfg: SolveConfig) -> BranchEntry:
    u, report = newton_solve(f, OperatorParams(mu, lam), _predict(branch, lam, cfg), cfg)
    if not report.bound_ux_ok:
        raise EstimateViolationError(
            f"energy bound violated at lambda={lam}: ||u_x||={report.norm_ux:.6e} > "
            f"||f||_*/mu={report.f_dual / mu:.6e}",
            report,
        )
    return BranchEntry(lam, u, report)


def continuation_solve(
    f: DualField,
    mu: float,
    cfg: Optional[SolveConfig] = None,
    show_progress: bool = False
) -> Branch:
    """
    Follow the solution branch of the lambda-family over ``cfg.lambda_grid``.

    A failed step is retried once through the midpoint of the lambda step
    (when ``cfg.bisect``); a second failure aborts.

    Parameters
    ----------
    f : DualField
        Forcing.
    mu : float
        Viscosity.
    cfg : SolveConfig, optional
        Solver settings and lambda grid.
    show_progress : bool
        Whether to show a progress bar.

    Returns
    -------
    Branch
        Solutions and reports in increasing lambda; the last entry is lambda = 1.

    Raises
    ------
    ContinuationError
        On a Newton failure that bisection cannot rescue; carries the partial branch.
    EstimateViolationError
        If a computed solution violates the energy bound.
    """
    cfg = cfg or SolveConfig()
    branch = Branch()
    lambdas = cfg.lambda_grid
    iterator = tqdm(lambdas, desc="continuation") if show_progress else lambdas

    for lam in iterator:
        try:
            branch.append(_solve_point(f, mu, lam, branch, cfg))
        except NonConvergenceError as err:
            if not cfg.bisect or not branch.entries:
                raise ContinuationError(f"continuation failed at lambda={lam}: {err}",
                                        branch, err.history) from err
            mid = 0.5 * (branch.last.lam + lam)
            logger.warning("Newton failed at lambda=%.4f; retrying through lambda=%.4f", lam, mid)
            try:
                branch.append(_solve_point(f, mu, mid, branch, cfg))
                branch.append(_solve_point(f, mu, lam, branch, cfg))
            except NonConvergenceError as retry_err:
                raise ContinuationError(f"continuation failed at lambda={lam} after bisection: {retry_err}",
                                        branch, retry_err.history) from retry_err

        entry = branch.last
        logger.info("lambda=%.3f: ||u||_H=%.6f, ||u_x||=%.6f, newton=%d, residual=%.2e",
                    entry.lam, entry.report.norm_h, entry.report.norm_ux,
                    entry.report.newton_iters, entry.report.final_residual)

    logger.info("Branch complete: %d points, sup ||u||_H = %.6f", len(branch), branch.sup_h_norm)
    return branch
