"""
Spectral Operators
==================

Fourier multipliers in time (fractional derivatives, their adjoints, the
Hilbert transform), space derivatives, dealiased products and L^2 pairings.

All operators are pure and act diagonally on the coefficient arrays, except
the products, which go through the zero-padded physical grid.
"""

from typing import Optional, Tuple

import numpy as np

from ..utils.errors import GridMismatchError
from .fields import Basis, DualField, Field
from .grid import GridSpec
from .transforms import evaluate, from_physical, quadrature_mean


# ============================================================================
# Time multipliers
# ============================================================================

def fractional_symbol(grid: GridSpec, s: float, adjoint: bool = False) -> np.ndarray:
    """
    Multiplier of the fractional time derivative of order ``s``.

    ``|2 pi k|^s * exp(+/- i sgn(k) s pi / 2)`` on rows ``k = -K..K``; the
    ``+`` sign is the derivative, ``-`` its adjoint. Order 0 is the identity;
    for ``s > 0`` the ``k = 0`` entry is 0.
    """
    if s < 0:
        raise ValueError(f"fractional order must be >= 0, got {s}")
    k = grid.frequencies
    if s == 0:
        return np.ones(k.size, dtype=complex)
    phase = np.sign(k) * s * np.pi / 2
    if adjoint:
        phase = -phase
    return np.abs(2 * np.pi * k) ** s * np.exp(1j * phase)


def hilbert_symbol(grid: GridSpec) -> np.ndarray:
    """Multiplier ``-i sgn(k)`` of the Hilbert transform."""
    return -1j * np.sign(grid.frequencies)


def _apply_time_symbol(u: Field, symbol: np.ndarray) -> Field:
    return u.with_coeffs(u.coeffs * symbol[:, None])


def fractional_derivative(u: Field, s: float) -> Field:
    """
    Fractional time derivative ``D^s u``.

    Parameters
    ----------
    u : Field
        Input field.
    s : float
        Order, ``s >= 0``. ``s = 1`` is the ordinary time derivative.

    Returns
    -------
    Field
        Field with coefficients scaled by ``|2 pi k|^s exp(i sgn(k) s pi/2)``.

    Examples
    --------
    >>> u = Field.from_modes(GridSpec(K=2, M=2), {(1, 1): 0.5})   # cos(2 pi t) sqrt(2) sin(pi x)
    >>> bool(np.isclose(fractional_derivative(u, 1).mode(1, 1), np.pi * 1j))   # 2 pi i * 0.5
    True
    """
    return _apply_time_symbol(u, fractional_symbol(u.grid, s))


def fractional_derivative_adjoint(u: Field, s: float) -> Field:
    """Adjoint ``D^s_*``: same modulus as :func:`fractional_derivative`, conjugated phase."""
    return _apply_time_symbol(u, fractional_symbol(u.grid, s, adjoint=True))


def hilbert_transform(u: Field) -> Field:
    """Hilbert transform in time; annihilates the time mean."""
    return _apply_time_symbol(u, hilbert_symbol(u.grid))


# ============================================================================
# Space operators
# ============================================================================

def space_derivative(u: Field) -> Field:
    """
    Derivative in x, switching between the sine and cosine families.

    ``sqrt(2) sin(m pi x) -> m pi sqrt(2) cos(m pi x)`` and
    ``sqrt(2) cos(m pi x) -> -m pi sqrt(2) sin(m pi x)``; the constant cosine
    mode is dropped.
    """
    grid = u.grid
    if u.basis is Basis.SINE:
        out = np.zeros((grid.n_time, grid.M + 1), dtype=complex)
        out[:, 1:] = u.coeffs * grid.wavenumbers(Basis.SINE)
    else:
        out = -u.coeffs[:, 1:] * grid.wavenumbers(Basis.SINE)
    return Field(grid, out, u.basis.other)


def space_laplacian(u: Field) -> Field:
    """Second derivative in x (stays in the same family)."""
    return u.with_coeffs(-u.coeffs * grid_wavenumbers_sq(u.grid, u.basis))


def grid_wavenumbers_sq(grid: GridSpec, basis: Basis) -> np.ndarray:
    """``(m pi)^2`` for the stored modes of ``basis``."""
    return grid.wavenumbers(basis) ** 2


# ============================================================================
# Products
# ============================================================================

def product_basis(a: Basis, b: Basis) -> Basis:
    """Family of a pointwise product: equal parities give cosines."""
    return Basis.COSINE if a is b else Basis.SINE


def pointwise_product(u: Field, v: Field, shape: Optional[Tuple[int, int]] = None) -> Field:
    """
    Dealiased pointwise product ``u * v`` truncated to the grid.

    The product is formed on the zero-padded grid (``dealias`` factor by
    default), so the retained modes carry no aliasing error.
    """
    if u.grid != v.grid:
        raise GridMismatchError(f"grid mismatch: {u.grid} vs {v.grid}")
    shape = u.grid.padded_shape() if shape is None else shape
    values = evaluate(u, shape) * evaluate(v, shape)
    basis = product_basis(u.basis, v.basis)
    return Field(u.grid, from_physical(values, basis, u.grid), basis)


def square_dealiased(u: Field) -> Field:
    """``u^2`` in the cosine family, alias-free on the retained modes."""
    return pointwise_product(u, u)


# ============================================================================
# Pairings
# ============================================================================

def l2_inner(u: Field, v: Field) -> float:
    """
    L^2(T x I) inner product by Parseval.

    Raises
    ------
    GridMismatchError
        If the fields live on different grids or in different families.
    """
    if u.grid != v.grid:
        raise GridMismatchError(f"grid mismatch: {u.grid} vs {v.grid}")
    if u.basis is not v.basis:
        raise GridMismatchError(
            f"basis mismatch: {u.basis.value} vs {v.basis.value}; use quadrature_inner"
        )
    return float(np.real(np.vdot(v.coeffs, u.coeffs)))


def l2_norm(u: Field) -> float:
    """L^2(T x I) norm."""
    return float(np.linalg.norm(u.coeffs))


def dual_pairing(f: DualField, v: Field) -> float:
    """Value ``<f, v>`` of a forcing functional on a Dirichlet field."""
    if f.grid != v.grid:
        raise GridMismatchError(f"grid mismatch: {f.grid} vs {v.grid}")
    if v.basis is not Basis.SINE:
        raise GridMismatchError("forcing functionals act on the sine family")
    return float(np.real(np.vdot(v.coeffs, f.coeffs)))


def quadrature_inner(u: Field, v: Field, shape: Optional[Tuple[int, int]] = None) -> float:
    """
    ``int int u * conj(v)`` by quadrature on the padded grid.

    Exact when both fields are in the same family (the integrand is then a
    cosine series); mixed families are integrated approximately.
    """
    if u.grid != v.grid:
        raise GridMismatchError(f"grid mismatch: {u.grid} vs {v.grid}")
    shape = u.grid.padded_shape() if shape is None else shape
    return float(np.real(quadrature_mean(evaluate(u, shape) * np.conj(evaluate(v, shape)))))
