"""
Spectral Transforms
===================

Forward and inverse transforms between coefficient arrays and samples on the
(possibly zero-padded) quadrature grid.

Time uses the FFT on uniform nodes. Space uses the orthonormal DST-II / DCT-II
on midpoint nodes: for ``n`` points, the orthonormal transform of the samples
of ``sum_m c_m s_m(x)`` is ``c_m * sqrt(n)`` in slot ``m - first_mode``.
"""

import logging
from typing import Tuple

import numpy as np
import scipy.fft

from .fields import Basis, Field
from .grid import GridSpec

logger = logging.getLogger(__name__)


def _real_transform(func, x: np.ndarray, **kwargs) -> np.ndarray:
    """Apply a real-to-real transform to real and imaginary parts."""
    if np.iscomplexobj(x):
        return func(x.real, **kwargs) + 1j * func(x.imag, **kwargs)
    return func(x, **kwargs)


def space_inverse(modes: np.ndarray, basis: Basis, n: int, axis: int = -1) -> np.ndarray:
    """
    Samples at ``n`` midpoints of a space expansion.

    Parameters
    ----------
    modes : np.ndarray
        Coefficients along ``axis`` for ``m = first_mode, first_mode+1, ...``.
    basis : Basis
        Sine or cosine family.
    n : int
        Number of midpoint samples; must exceed the largest mode index.
    axis : int
        Space axis.

    Returns
    -------
    np.ndarray
        Samples, same dtype kind as ``modes``.
    """
    modes = np.moveaxis(np.asarray(modes), axis, -1)
    n_modes = modes.shape[-1]
    if n_modes + basis.first_mode > n:
        raise ValueError(f"{n_modes} {basis.value} modes do not fit on {n} points")
    padded = np.zeros(modes.shape[:-1] + (n,), dtype=modes.dtype)
    padded[..., :n_modes] = modes * np.sqrt(n)
    func = scipy.fft.idst if basis is Basis.SINE else scipy.fft.idct
    values = _real_transform(func, padded, type=2, norm='ortho', axis=-1)
    return np.moveaxis(values, -1, axis)


def space_forward(values: np.ndarray, basis: Basis, n_modes: int, axis: int = -1) -> np.ndarray:
    """
    Space coefficients of midpoint samples, truncated to ``n_modes`` modes.

    Inverse of :func:`space_inverse` on band-limited data.
    """
    values = np.moveaxis(np.asarray(values), axis, -1)
    n = values.shape[-1]
    func = scipy.fft.dst if basis is Basis.SINE else scipy.fft.dct
    modes = _real_transform(func, values, type=2, norm='ortho', axis=-1) / np.sqrt(n)
    return np.moveaxis(modes[..., :n_modes], -1, axis)


def time_inverse(coeffs: np.ndarray, n: int) -> np.ndarray:
    """Samples at ``n`` uniform times of rows ``k = -K..K`` (axis 0)."""
    K = (coeffs.shape[0] - 1) // 2
    if n < 2 * K + 1:
        raise ValueError(f"{2 * K + 1} time frequencies do not fit on {n} points")
    spectrum = np.zeros((n,) + coeffs.shape[1:], dtype=complex)
    spectrum[:K + 1] = coeffs[K:]
    if K > 0:
        spectrum[n - K:] = coeffs[:K]
    return np.fft.ifft(spectrum, axis=0) * n


def time_forward(values: np.ndarray, K: int) -> np.ndarray:
    """Rows ``k = -K..K`` of the time Fourier coefficients of ``n`` uniform samples."""
    n = values.shape[0]
    spectrum = np.fft.fft(values, axis=0) / n
    if K == 0:
        return spectrum[:1]
    return np.concatenate([spectrum[n - K:], spectrum[:K + 1]], axis=0)


def to_physical(coeffs: np.ndarray, basis: Basis, shape: Tuple[int, int]) -> np.ndarray:
    """Complex samples of a coefficient array on a grid of ``shape``."""
    n_t, n_x = shape
    return space_inverse(time_inverse(coeffs, n_t), basis, n_x, axis=1)


def from_physical(values: np.ndarray, basis: Basis, grid: GridSpec) -> np.ndarray:
    """Coefficient array on ``grid`` of samples on any (padded) grid."""
    modes = space_forward(values, basis, grid.n_space(basis), axis=1)
    return time_forward(modes, grid.K)


def analyze(samples: np.ndarray, grid: GridSpec, basis: Basis = Basis.SINE) -> Field:
    """
    Forward transform of samples on the quadrature grid.

    Parameters
    ----------
    samples : np.ndarray
        Real values of shape ``(Nt, Nx)`` at ``(t_i, x_j)``.
    grid : GridSpec
        Discretization.
    basis : Basis
        Space family to expand in.

    Returns
    -------
    Field
        Coefficients truncated to ``|k| <= K`` and the grid's space modes.
    """
    samples = np.asarray(samples)
    if samples.shape != grid.shape:
        raise ValueError(f"sample shape {samples.shape} does not match grid shape {grid.shape}")
    return Field(grid, from_physical(samples, basis, grid), basis)


def synthesize(u: Field) -> np.ndarray:
    """Real samples of ``u`` on its quadrature grid, shape ``(Nt, Nx)``."""
    return to_physical(u.coeffs, u.basis, u.grid.shape).real


def evaluate(u: Field, shape: Tuple[int, int] = None) -> np.ndarray:
    """Complex samples of ``u`` on a grid of ``shape`` (quadrature grid by default)."""
    return to_physical(u.coeffs, u.basis, u.grid.shape if shape is None else shape)


def profile_at(coeffs: np.ndarray, t: float) -> np.ndarray:
    """Space coefficients at time ``t`` of a coefficient array (rows ``k = -K..K``)."""
    K = (coeffs.shape[0] - 1) // 2
    phases = np.exp(2j * np.pi * np.arange(-K, K + 1) * t)
    return (phases @ coeffs).real


def field_from_profiles(profiles: np.ndarray, grid: GridSpec, basis: Basis) -> Field:
    """
    Field from space coefficients sampled at ``n`` uniform times.

    Parameters
    ----------
    profiles : np.ndarray
        Shape ``(n, n_modes)``; row ``i`` holds the profile at ``t = i / n``.
    """
    return Field(grid, time_forward(np.asarray(profiles, dtype=complex), grid.K), basis)


def quadrature_mean(values: np.ndarray) -> complex:
    """
    Integral over T x I of samples on a uniform-time / midpoint-space grid.

    Complex samples keep their imaginary part; callers that need a real
    pairing take it themselves.
    """
    return np.mean(values)
