"""
Ground-State Eigenvalue Problem
===============================

Periodic positive solutions of

    phi_t - mu phi_xx + v phi_x + K phi = 0,   phi_x = 0 at x = 0, 1

for a given drift ``v``. Writing ``phi = exp(-K t) psi`` turns the problem
into the Perron eigenvalue of the period map ``P: psi(0) -> psi(1)`` of
``psi_t = mu psi_xx - v psi_x``; ``rho = exp(K)`` is found by power iteration.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np

from ..spectral.fields import Basis, Field
from ..spectral.operators import l2_norm, pointwise_product, space_derivative
from ..spectral.stepping import IntegratingFactorStepper, cfl_number, default_steps_per_period
from ..spectral.transforms import evaluate, field_from_profiles, profile_at, space_forward, space_inverse
from ..utils.errors import GridMismatchError, NonConvergenceError, OracleInstabilityError

logger = logging.getLogger(__name__)

# Certificate thresholds
K_TOL = 1e-6
PHI_TOL = 1e-5
GAP_TOL = 1e-3


def _propagate(
    v: Field,
    psi0: np.ndarray,
    mu: float,
    steps: int,
    n_samples: int = 0,
    scheme: str = 'rk4',
    cfl_limit: float = 2.5
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Advance a cosine profile over one period.

    Returns the final profile and, when ``n_samples > 0``, the profiles at
    ``t = i / n_samples`` (``steps`` must then be a multiple of ``n_samples``).
    """
    if v.basis is not Basis.SINE:
        raise GridMismatchError("the drift must be a Dirichlet (sine) field")
    grid = v.grid
    psi = np.asarray(psi0, dtype=float)
    if psi.shape != (grid.M + 1,):
        raise ValueError(f"profile must have {grid.M + 1} cosine modes, got shape {psi.shape}")

    dt = 1.0 / steps
    xi = grid.wavenumbers(Basis.COSINE)
    n_x = grid.padded_shape()[1]
    drift = np.asarray(v.coeffs)

    v_max = float(np.max(np.abs(evaluate(v, grid.padded_shape()).real), initial=0.0))
    cfl = cfl_number(dt, v_max, grid.M)
    if cfl > cfl_limit:
        raise OracleInstabilityError(
            f"period map CFL number {cfl:.3f} exceeds {cfl_limit}; increase steps", cfl
        )

    def rhs(p: np.ndarray, t: float) -> np.ndarray:
        # -v psi_x; psi_x = -(m pi) psi_m on the sine family
        v_values = space_inverse(profile_at(drift, t), Basis.SINE, n_x)
        psi_x = space_inverse(-xi[1:] * p[1:], Basis.SINE, n_x)
        return -space_forward(v_values * psi_x, Basis.COSINE, grid.M + 1)

    stepper = IntegratingFactorStepper(mu * xi ** 2, rhs, dt, scheme)

    stride = steps // n_samples if n_samples else 0
    if n_samples and steps % n_samples != 0:
        raise ValueError(f"steps={steps} must be a multiple of n_samples={n_samples}")
    samples = np.zeros((n_samples, grid.M + 1))
    for j in range(steps):
        if stride and j % stride == 0:
            samples[j // stride] = psi
        psi = stepper.step(psi, j * dt)
    return psi, samples


def period_map(
    v: Field,
    psi0: np.ndarray,
    mu: float,
    steps: Optional[int] = None,
    scheme: str = 'rk4'
) -> np.ndarray:
    """
    One-period propagator of ``psi_t = mu psi_xx - v psi_x`` with Neumann walls.

    Parameters
    ----------
    v : Field
        Time-periodic drift (sine family).
    psi0 : np.ndarray
        Cosine coefficients ``m = 0..M`` of the initial profile.
    mu : float
        Viscosity.
    steps : int, optional
        Time steps per period (default from the grid).
    scheme : str
        Integrating-factor scheme.

    Returns
    -------
    np.ndarray
        Cosine coefficients of ``psi(1, .)``.

    Examples
    --------
    With ``v = 0`` the constant profile is fixed and ``cos(pi x)`` decays by
    ``exp(-mu pi^2)``.
    """
    steps = default_steps_per_period(v.grid.n_time, v.grid.M, v.grid.K) if steps is None else steps
    final, _ = _propagate(v, psi0, mu, steps, scheme=scheme)
    return final


@dataclass
class Certificate:
    """Verdict of the ground-state check with the residuals behind it."""

    K_near_zero: bool
    phi_near_constant: bool
    phi_positive: bool
    eigenvalue_simple: bool
    residuals: Dict[str, float] = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return self.K_near_zero and self.phi_near_constant and self.phi_positive

    def to_dict(self) -> dict:
        return {
            'holds': self.holds,
            'K_near_zero': self.K_near_zero,
            'phi_near_constant': self.phi_near_constant,
            'phi_positive': self.phi_positive,
            'eigenvalue_simple': self.eigenvalue_simple,
            'residuals': dict(self.residuals),
        }


@dataclass
class GroundState:
    """
    Perron pair of the ground-state problem.

    Attributes
    ----------
    K : float
        Eigenvalue, ``log(rho)``.
    rho : float
        Perron eigenvalue of the period map.
    phi : Field
        Positive periodic eigenfunction (cosine family), mean 1 at ``t = 0``.
    iterations : int
        Power iterations used.
    rho2 : float
        Modulus of the subdominant eigenvalue (deflated power iteration).
    certificate : Certificate
        Thresholded checks.
    history : List[float]
        Rayleigh quotient per iteration.
    """

    K: float
    rho: float
    phi: Field
    iterations: int
    rho2: float
    certificate: Certificate
    history: List[float] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            'K': self.K,
            'rho': self.rho,
            'rho2': self.rho2,
            'iterations': self.iterations,
            'certificate': self.certificate.to_dict(),
        }


def _rayleigh(w: np.ndarray, psi: np.ndarray) -> float:
    return float(np.dot(w, psi) / np.dot(psi, psi))


def second_eigenvalue(
    v: Field,
    phi0: np.ndarray,
    mu: float,
    steps: int,
    n_iter: int = 30,
    burn_in: int = 10,
    scheme: str = 'rk4'
) -> float:
    """
    Modulus of the subdominant eigenvalue of the period map.

    Iterates ``Q P`` with ``Q psi = psi - (psi_0 / phi_0) phi`` the projection
    along the Perron vector ``phi`` onto mean-zero profiles, and returns the
    geometric-mean growth rate after a burn-in (robust to complex pairs).
    """
    def deflate(p: np.ndarray) -> np.ndarray:
        return p - (p[0] / phi0[0]) * phi0

    w = deflate(np.ones(v.grid.M + 1))
    w /= np.linalg.norm(w)
    log_growth = []
    for it in range(burn_in + n_iter):
        w, _ = _propagate(v, w, mu, steps, scheme=scheme)
        w = deflate(w)
        norm = np.linalg.norm(w)
        if norm == 0.0:
            return 0.0
        if it >= burn_in:
            log_growth.append(np.log(norm))
        w /= norm
    return float(np.exp(np.mean(log_growth)))


def ground_state(
    v: Field,
    mu: float,
    tol: float = 1e-12,
    steps: Optional[int] = None,
    max_iter: int = 200,
    psi0: Optional[np.ndarray] = None,
    scheme: str = 'rk4'
) -> GroundState:
    """
    Solve the ground-state problem by power iteration on the period map.

    Parameters
    ----------
    v : Field
        Drift (sine family), typically a computed Burgers solution.
    mu : float
        Viscosity.
    tol : float
        Stop when the Rayleigh quotient changes by less than ``tol * rho``.
    steps : int, optional
        Time steps per period; a multiple of ``Nt``.
    max_iter : int
        Power-iteration cap.
    psi0 : np.ndarray, optional
        Positive starting profile (cosine coefficients); the constant 1 by default.
    scheme : str
        Integrating-factor scheme.

    Returns
    -------
    GroundState
        ``(K, phi)`` with the certificate.

    Raises
    ------
    NonConvergenceError
        If the Rayleigh quotient does not settle within ``max_iter`` iterations.
    """
    grid = v.grid
    steps = default_steps_per_period(grid.n_time, grid.M, grid.K) if steps is None else int(steps)
    if steps % grid.n_time != 0:
        raise ValueError(f"steps={steps} must be a multiple of Nt={grid.n_time}")
    if max_iter < 2:
        raise ValueError(f"max_iter must be >= 2, got {max_iter}")

    if psi0 is None:
        psi = np.zeros(grid.M + 1)
        psi[0] = 1.0
    else:
        psi = np.array(psi0, dtype=float)
        if psi[0] <= 0:
            raise ValueError("psi0 must have positive mean")
        psi /= psi[0]

    history: List[float] = []
    for it in range(1, max_iter + 1):
        w, _ = _propagate(v, psi, mu, steps, scheme=scheme)
        rho = _rayleigh(w, psi)
        history.append(rho)
        psi = w / w[0]
        if it > 1 and abs(rho - history[-2]) < tol * max(1.0, abs(rho)):
            break
        logger.debug("power iteration %d: rho=%.15f", it, rho)
    else:
        raise NonConvergenceError(
            f"power iteration did not settle within {max_iter} iterations "
            f"(last drift {abs(history[-1] - history[-2]):.3e})", history
        )

    K = float(np.log(rho))
    _, samples = _propagate(v, psi, mu, steps, n_samples=grid.n_time, scheme=scheme)
    times = grid.time_points()
    phi = field_from_profiles(np.exp(-K * times)[:, None] * samples, grid, Basis.COSINE).symmetrized()

    rho2 = second_eigenvalue(v, psi, mu, steps, scheme=scheme)
    certificate = _certify(phi, v, mu, K, rho, rho2)
    logger.info("ground state: K=%.3e, rho=%.15f, |rho2|=%.6f after %d iterations",
                K, rho, rho2, len(history))
    return GroundState(K=K, rho=rho, phi=phi, iterations=len(history), rho2=rho2,
                       certificate=certificate, history=history)


def pde_residual(phi: Field, v: Field, mu: float, K: float) -> float:
    """L^2 norm of ``phi_t - mu phi_xx + v phi_x + K phi``, evaluated spectrally."""
    grid = phi.grid
    k = grid.frequencies[:, None]
    xi = grid.wavenumbers(Basis.COSINE)[None, :]
    linear = (2j * np.pi * k + mu * xi ** 2 + K) * phi.coeffs
    drift = pointwise_product(v, space_derivative(phi))
    return l2_norm(phi.with_coeffs(linear + drift.coeffs))


def neumann_residual(phi: Field) -> float:
    """Largest ``|phi_x|`` at the walls over the time nodes."""
    grid = phi.grid
    xi = grid.wavenumbers(Basis.COSINE)
    profiles = np.array([profile_at(np.asarray(phi.coeffs), t) for t in grid.time_points()])
    walls = np.array([0.0, 1.0])
    # d/dx sqrt(2) cos(m pi x) = -sqrt(2) m pi sin(m pi x)
    slopes = -np.sqrt(2.0) * (profiles * xi) @ np.sin(np.outer(xi, walls))
    return float(np.max(np.abs(slopes), initial=0.0))


def _certify(phi: Field, v: Field, mu: float, K: float, rho: float, rho2: float) -> Certificate:
    grid = phi.grid
    phi_min = float(np.min(evaluate(phi, grid.padded_shape()).real))
    deviation = phi.coeffs.copy()
    deviation[grid.K, 0] -= 1.0
    phi_dev = float(np.linalg.norm(deviation))
    gap = rho - rho2

    residuals = {
        'K': abs(K),
        'phi': phi_dev,
        'phi_min': phi_min,
        'pde': pde_residual(phi, v, mu, K),
        'neumann': neumann_residual(phi),
        'gap': gap,
    }
    return Certificate(
        K_near_zero=abs(K) < K_TOL,
        phi_near_constant=phi_dev < PHI_TOL,
        phi_positive=phi_min > 0,
        eigenvalue_simple=gap >= GAP_TOL,
        residuals=residuals,
    )
