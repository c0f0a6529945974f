"""
Estimate Reports
================

Per-solution record of the a-priori estimate chain

    ||u_x||^2 = <f, u> / mu                              (energy identity)
    ||u_x|| <= ||f||_* / mu                             (energy bound)
    ||D^{1/2}u||^2 <= 1/2 |(u^2, H u_x)| + ||f||_* ||u_x||   (Hilbert test)
    |(u^2, H u_x)| <= ||u^2|| ||u_x|| <= C ||u||_H ||u_x||^2 (interpolation)
    ||D^{1/2}u||^2 <= (||f||_*^2 / mu) (C ||u||_H / (2 mu) + 1)

evaluated numerically, plus the branch container built by continuation.
"""

from dataclasses import asdict, dataclass, field
from typing import List, Optional, Sequence

import numpy as np
import pandas as pd

from ..burgers.operator import OperatorParams
from ..sobolev.norms import dual_forcing_norm, gradient_norm, h_norm, half_derivative_norm, square_norm
from ..sobolev.probes import interpolation_ratio
from ..spectral.fields import DualField, Field
from ..spectral.operators import dual_pairing, hilbert_transform, l2_inner, l2_norm, space_derivative, square_dealiased

# Relative slack for floating-point comparisons of the inequalities
BOUND_RTOL = 1e-9


@dataclass
class EstimateReport:
    """Numerical a-priori estimate record of one solution."""

    lam: float
    mu: float
    norm_ux: float
    norm_dthalf: float
    norm_h: float
    norm_l2: float
    f_dual: float
    energy_residual: float
    cubic_residual: float
    convection_pairing: float
    usq_norm: float
    hilbert_rhs: float
    convection_rhs: float
    dt_half_rhs: float
    c_used: float
    bound_ux_ok: bool
    bound_hilbert_ok: bool
    bound_convection_ok: bool
    bound_dt_ok: bool
    newton_iters: int = 0
    final_residual: float = 0.0
    residual_history: List[float] = field(default_factory=list)

    @property
    def all_bounds_ok(self) -> bool:
        return self.bound_ux_ok and self.bound_hilbert_ok and self.bound_convection_ok and self.bound_dt_ok

    def to_dict(self) -> dict:
        out = asdict(self)
        out['lambda'] = out.pop('lam')
        return out


def _leq(lhs: float, rhs: float, slack: float = 0.0) -> bool:
    return lhs <= rhs * (1.0 + BOUND_RTOL) + slack + 1e-300


def make_report(
    u: Field,
    f: DualField,
    p: OperatorParams,
    newton_iters: int = 0,
    final_residual: float = 0.0,
    c_emp: Optional[float] = None,
    residual_history: Optional[Sequence[float]] = None
) -> EstimateReport:
    """
    Evaluate the estimate chain at a computed solution.

    Parameters
    ----------
    u : Field
        Solution of ``L u + lambda S(u) = f`` (sine family).
    f : DualField
        Forcing.
    p : OperatorParams
        Viscosity and homotopy parameter.
    newton_iters, final_residual
        Solver statistics carried into the report.
    c_emp : float, optional
        Interpolation constant for the convection and time-derivative bounds.
        Defaults to the field's own interpolation ratio, which makes the
        convection bound tight.
    residual_history : Sequence[float], optional
        Dual residual norm before each Newton iteration; kept out of the
        scalar table.

    Returns
    -------
    EstimateReport
        Norms, the terms of every step and the pass/fail flags.

    Notes
    -----
    The Hilbert-test identity only holds up to the residual ``r``; its
    contribution ``|<r, H u>| <= ||r||_* ||u_x||`` is added as slack.
    """
    ux = gradient_norm(u)
    dt_half = half_derivative_norm(u)
    h = h_norm(u)
    fd = dual_forcing_norm(f)
    pairing = dual_pairing(f, u)

    usq = square_dealiased(u)
    u_x = space_derivative(u)
    cubic = abs(l2_inner(usq, u_x))
    convection = abs(l2_inner(usq, hilbert_transform(u_x)))
    usq_norm = square_norm(u)

    if c_emp is None:
        c_emp = interpolation_ratio(u) or 0.0

    hilbert_rhs = 0.5 * p.lam * convection + fd * ux
    convection_rhs = c_emp * h * ux ** 2
    dt_half_rhs = (fd ** 2 / p.mu) * (c_emp * h / (2 * p.mu) + 1.0)
    slack = final_residual * max(ux, 1.0)

    return EstimateReport(
        lam=p.lam,
        mu=p.mu,
        norm_ux=ux,
        norm_dthalf=dt_half,
        norm_h=h,
        norm_l2=l2_norm(u),
        f_dual=fd,
        energy_residual=abs(ux ** 2 - pairing / p.mu),
        cubic_residual=cubic,
        convection_pairing=convection,
        usq_norm=usq_norm,
        hilbert_rhs=hilbert_rhs,
        convection_rhs=convection_rhs,
        dt_half_rhs=dt_half_rhs,
        c_used=float(c_emp),
        bound_ux_ok=_leq(ux, fd / p.mu, slack / p.mu),
        bound_hilbert_ok=_leq(dt_half ** 2, hilbert_rhs, slack),
        bound_convection_ok=_leq(convection, usq_norm * ux),
        bound_dt_ok=_leq(dt_half ** 2, dt_half_rhs, slack),
        newton_iters=newton_iters,
        final_residual=final_residual,
        residual_history=[float(r) for r in (residual_history or ())],
    )


@dataclass
class BranchEntry:
    """One point of the continuation branch."""

    lam: float
    u: Field
    report: EstimateReport


@dataclass
class Branch:
    """Solutions along the lambda-path, in increasing lambda."""

    entries: List[BranchEntry] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.entries)

    def append(self, entry: BranchEntry) -> None:
        self.entries.append(entry)

    @property
    def lambdas(self) -> List[float]:
        return [e.lam for e in self.entries]

    @property
    def last(self) -> Optional[BranchEntry]:
        return self.entries[-1] if self.entries else None

    @property
    def sup_h_norm(self) -> float:
        """Largest H-norm along the branch (0 for an empty branch)."""
        return max((e.report.norm_h for e in self.entries), default=0.0)

    def to_frame(self) -> pd.DataFrame:
        """One row per lambda with the scalar report columns."""
        rows = [e.report.to_dict() for e in self.entries]
        return pd.DataFrame(rows, columns=list(_REPORT_COLUMNS))

    def to_dict(self) -> dict:
        return {
            'lambdas': self.lambdas,
            'sup_h_norm': self.sup_h_norm,
            'entries': [e.report.to_dict() for e in self.entries],
        }


_REPORT_COLUMNS = (
    'lambda', 'mu', 'norm_ux', 'norm_dthalf', 'norm_h', 'norm_l2', 'f_dual',
    'energy_residual', 'cubic_residual', 'convection_pairing', 'usq_norm',
    'hilbert_rhs', 'convection_rhs', 'dt_half_rhs', 'c_used',
    'bound_ux_ok', 'bound_hilbert_ok', 'bound_convection_ok', 'bound_dt_ok',
    'newton_iters', 'final_residual',
)


def energy_identity_holds(report: EstimateReport, tol: float) -> bool:
    """Whether ``| ||u_x||^2 - <f,u>/mu |`` is within ``tol`` relative to ``||u_x||^2``."""
    scale = max(report.norm_ux ** 2, np.finfo(float).tiny)
    return report.energy_residual <= tol * scale or report.energy_residual <= tol
