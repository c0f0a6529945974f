"""
Integrating-Factor Time Stepping
================================

Time stepper for semilinear spectral systems ``y' = -d * y + N(y, t)`` with a
diagonal, nonnegative decay ``d`` (diffusion) treated exactly and the
nonlinear or drift term ``N`` treated explicitly.
"""

from typing import Callable

import numpy as np

SCHEMES = ('euler', 'rk4')


def default_steps_per_period(n_time: int, M: int, K: int = 0) -> int:
    """
    Smallest multiple of ``n_time`` that is at least ``max(16 M, 32 K)``.

    The ``32 K`` floor keeps ``2 pi K dt`` at or below about 0.2, so the
    highest retained time frequency is resolved as well as the space modes.
    """
    target = max(16 * M, 32 * K)
    return n_time * max(1, int(np.ceil(target / n_time)))



def cfl_number(dt: float, u_max: float, M: int) -> float:
    """Advective CFL number ``dt * max|u| * M pi`` of the highest retained mode."""
    return dt * u_max * M * np.pi


class IntegratingFactorStepper:
    """
    Integrating-factor Euler / Runge-Kutta stepper.

    Parameters
    ----------
    decay : np.ndarray
        Diagonal decay rates ``d >= 0`` (e.g. ``mu (m pi)^2``).
    rhs : Callable[[np.ndarray, float], np.ndarray]
        Explicit term ``N(y, t)``.
    dt : float
        Step size.
    scheme : str
        ``'euler'`` (first order) or ``'rk4'`` (fourth order).
    """

    def __init__(
        self,
        decay: np.ndarray,
        rhs: Callable[[np.ndarray, float], np.ndarray],
        dt: float,
        scheme: str = 'rk4'
    ):
        if scheme not in SCHEMES:
            raise ValueError(f"Unknown scheme: {scheme}. Use one of {SCHEMES}.")
        if dt <= 0:
            raise ValueError(f"dt must be > 0, got {dt}")
        self.rhs = rhs
        self.dt = dt
        self.scheme = scheme
        self._full = np.exp(-np.asarray(decay) * dt)
        self._half = np.exp(-np.asarray(decay) * dt / 2)

    def step(self, y: np.ndarray, t: float) -> np.ndarray:
        """Advance ``y`` from ``t`` to ``t + dt``."""
        dt, E, E2 = self.dt, self._full, self._half
        if self.scheme == 'euler':
            return E * (y + dt * self.rhs(y, t))

        k1 = self.rhs(y, t)
        k2 = self.rhs(E2 * (y + 0.5 * dt * k1), t + 0.5 * dt)
        k3 = self.rhs(E2 * y + 0.5 * dt * k2, t + 0.5 * dt)
        k4 = self.rhs(E * y + dt * E2 * k3, t + dt)
        return E * y + dt / 6.0 * (E * k1 + 2.0 * E2 * (k2 + k3) + k4)

    def __repr__(self) -> str:
        return f"IntegratingFactorStepper(scheme='{self.scheme}', dt={self.dt:.3e})"
