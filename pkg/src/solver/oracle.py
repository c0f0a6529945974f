"""
Time-Stepping Oracle
====================

Independent check of the spectral solver: integrate the forced viscous
Burgers equation

    u_t + u u_x = mu u_xx + f,   u(t, 0) = u(t, 1) = 0

forward in time until the solution settles on a time-periodic attractor, and
return its last period as a spectral field. The solution is split as
``u = L^{-1} f + w``: the periodic response to the forcing is exact on the
grid, so only the convection term is stepped explicitly (diffusion by the
integrating factor). Rough forcings then cost no accuracy in time.
"""

import logging
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from ..burgers.operator import apply_L_inverse
from ..spectral.fields import Basis, DualField, Field
from ..spectral.stepping import IntegratingFactorStepper, cfl_number, default_steps_per_period
from ..spectral.transforms import field_from_profiles, profile_at, space_forward, space_inverse
from ..utils.errors import OracleInstabilityError

logger = logging.getLogger(__name__)

# Samples above this magnitude are treated as blow-up
BLOWUP_LEVEL = 1e8


@dataclass
class OracleResult:
    """
    Periodic attractor found by time stepping.

    Attributes
    ----------
    field : Field
        Last simulated period sampled at the grid's time nodes.
    drift : float
        L^2(I) distance between the states one period apart at the end.
    periods : int
        Number of periods integrated.
    cfl : float
        Largest CFL number ``dt * max|u| * M pi`` seen.
    drift_history : List[float]
        Period-to-period drift of every period.
    """

    field: Field
    drift: float
    periods: int
    cfl: float
    drift_history: List[float] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            'drift': self.drift,
            'periods': self.periods,
            'cfl': self.cfl,
            'drift_history': list(self.drift_history),
        }


def imex_oracle(
    f: DualField,
    mu: float,
    u0: Optional[Field] = None,
    n_periods: int = 40,
    steps_per_period: Optional[int] = None,
    scheme: str = 'rk4',
    drift_tol: Optional[float] = None,
    cfl_limit: float = 2.5
) -> OracleResult:
    """
    Integrate to the periodic attractor.

    Parameters
    ----------
    f : DualField
        Forcing; any functional on the grid, including rough ones.
    mu : float
        Viscosity.
    u0 : Field, optional
        Initial data; its profile at ``t = 0`` is used. Zero by default.
    n_periods : int
        Maximum number of periods.
    steps_per_period : int, optional
        Time steps per period; a multiple of ``Nt``. Defaults to
        :func:`default_steps_per_period`, which resolves both the space
        modes and the time frequencies of the grid.
    scheme : str
        ``'euler'`` or ``'rk4'`` integrating-factor scheme.
    drift_tol : float, optional
        Stop early once the period-to-period drift falls below this.
    cfl_limit : float
        Largest admissible CFL number.

    Returns
    -------
    OracleResult
        Field of the last period and the stepping diagnostics.

    Raises
    ------
    ValueError
        If ``steps_per_period`` is not a multiple of ``Nt``.
    OracleInstabilityError
        If the CFL number exceeds ``cfl_limit`` or the solution blows up.
    """
    grid = f.grid
    n_time = grid.n_time
    if steps_per_period is None:
        steps = default_steps_per_period(n_time, grid.M, grid.K)
    else:
        steps = int(steps_per_period)
    if steps < n_time or steps % n_time != 0:
        raise ValueError(f"steps_per_period={steps} must be a positive multiple of Nt={n_time}")
    if n_periods < 1:
        raise ValueError(f"n_periods must be >= 1, got {n_periods}")

    dt = 1.0 / steps
    stride = steps // n_time
    xi = grid.wavenumbers(Basis.SINE)
    n_x = grid.padded_shape()[1]
    # periodic response of the linear part; p_t - mu p_xx = f holds exactly
    response = np.asarray(apply_L_inverse(f, mu).coeffs)

    def rhs(w: np.ndarray, t: float) -> np.ndarray:
        # -u u_x = -(u^2/2)_x; the cosine coefficients of u^2 map to +(m pi)/2 on sines
        values = space_inverse(w + profile_at(response, t), Basis.SINE, n_x)
        square = space_forward(values ** 2, Basis.COSINE, grid.M + 1)
        return 0.5 * xi * square[1:]

    stepper = IntegratingFactorStepper(mu * xi ** 2, rhs, dt, scheme)
    b = np.zeros(grid.M) if u0 is None else profile_at(np.asarray(u0.coeffs), 0.0)
    w = b - profile_at(response, 0.0)

    cfl_max, history = 0.0, []
    samples = np.zeros((n_time, grid.M))
    for period in range(n_periods):
        start = w.copy()
        for j in range(steps):
            b = w + profile_at(response, j * dt)
            if j % stride == 0:
                samples[j // stride] = b
            u_max = float(np.max(np.abs(space_inverse(b, Basis.SINE, n_x))))
            cfl = cfl_number(dt, u_max, grid.M)
            cfl_max = max(cfl_max, cfl)
            if not np.isfinite(u_max) or u_max > BLOWUP_LEVEL:
                raise OracleInstabilityError(f"solution blew up in period {period}", cfl_max)
            if cfl > cfl_limit:
                raise OracleInstabilityError(
                    f"CFL number {cfl:.3f} exceeds {cfl_limit} in period {period}; "
                    f"increase steps_per_period", cfl
                )
            w = stepper.step(w, j * dt)

        drift = float(np.linalg.norm(w - start))
        history.append(drift)
        logger.debug("period %d: drift %.3e, CFL %.3f", period, drift, cfl_max)
        if drift_tol is not None and drift < drift_tol:
            break

    logger.info("oracle: %d periods, final drift %.3e, max CFL %.3f", len(history), history[-1], cfl_max)
    u = field_from_profiles(samples, grid, Basis.SINE).symmetrized()
    return OracleResult(field=u, drift=history[-1], periods=len(history), cfl=cfl_max,
                        drift_history=history)
