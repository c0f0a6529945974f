"""
Weak Burgers Operator
=====================

Matrix-free weak form of T = L + S on the Fourier x sine basis:

    <L u, v> = (D^{1/2} u, D^{1/2}_* v) + mu (u_x, v_x)
    <S(u), v> = -1/2 (u^2, v_x)

and of the lambda-family ``L u + lambda S(u) = f``. Results are dual fields
(Riesz representatives in the sine family).
"""

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from ..sobolev.norms import dual_forcing_norm
from ..spectral.fields import Basis, DualField, Field
from ..spectral.grid import GridSpec
from ..spectral.operators import pointwise_product, square_dealiased
from ..utils.errors import GridMismatchError


@dataclass(frozen=True)
class OperatorParams:
    """
    Parameters of the lambda-family.

    Parameters
    ----------
    mu : float
        Viscosity, ``mu > 0``.
    lam : float
        Homotopy parameter, ``0 <= lam <= 1``.
    """

    mu: float
    lam: float = 1.0

    def __post_init__(self):
        if not self.mu > 0:
            raise ValueError(f"mu must be > 0, got {self.mu}")
        if not 0.0 <= self.lam <= 1.0:
            raise ValueError(f"lambda must lie in [0, 1], got {self.lam}")

    def with_lambda(self, lam: float) -> 'OperatorParams':
        return OperatorParams(self.mu, lam)


def linear_symbol(grid: GridSpec, mu: float) -> np.ndarray:
    """
    Diagonal symbol ``2 pi i k + mu (m pi)^2`` of L, shape ``(2K+1, M)``.

    Never zero on the sine family (``m >= 1``).
    """
    k = grid.frequencies[:, None]
    xi = grid.wavenumbers(Basis.SINE)[None, :]
    return 2j * np.pi * k + mu * xi ** 2


def _require_sine(u: Field) -> None:
    if u.basis is not Basis.SINE:
        raise GridMismatchError("the Burgers operator acts on the Dirichlet (sine) family")


def apply_L(u: Field, p: OperatorParams) -> DualField:
    """
    Linear part: ``(L u)_{k,m} = (2 pi i k + mu (m pi)^2) u_{k,m}``.

    The half-derivative pairing ``(D^{1/2}u, D^{1/2}_* v)`` telescopes to the
    full time derivative, so L is diagonal.
    """
    _require_sine(u)
    return DualField(u.grid, linear_symbol(u.grid, p.mu) * u.coeffs)


def _convection(product: Field) -> np.ndarray:
    """``-(m pi) * w_{k,m}`` for a cosine-family product ``w``, m = 1..M."""
    xi = product.grid.wavenumbers(Basis.SINE)[None, :]
    return -xi * product.coeffs[:, 1:]


def apply_S(u: Field) -> DualField:
    """
    Convection: ``S(u)_{k,m} = -1/2 (m pi) (u^2)_{k,m}`` from the cosine
    coefficients of the dealiased square.
    """
    _require_sine(u)
    return DualField(u.grid, 0.5 * _convection(square_dealiased(u)))


def residual(u: Field, f: DualField, p: OperatorParams) -> Tuple[DualField, float]:
    """
    Residual of ``L u + lambda S(u) = f`` and its dual norm.

    Returns
    -------
    Tuple[DualField, float]
        ``r = L u + lambda S(u) - f`` and ``||r||_*``.
    """
    if u.grid != f.grid:
        raise GridMismatchError(f"grid mismatch: {u.grid} vs {f.grid}")
    r = apply_L(u, p) - f
    if p.lam != 0.0:
        r = r + p.lam * apply_S(u)
    return r, dual_forcing_norm(r)


def jacobian_apply(u: Field, w: Field, p: OperatorParams) -> DualField:
    """
    Frechet derivative of ``L + lambda S`` at ``u`` applied to ``w``.

    ``<DS(u) w, v> = -(u w, v_x)``, so the convection entries are
    ``-(m pi) (u w)_{k,m}``. ``w`` may have non-Hermitian coefficients; the
    action is complex-linear in ``w``.
    """
    if u.grid != w.grid:
        raise GridMismatchError(f"grid mismatch: {u.grid} vs {w.grid}")
    out = apply_L(w, p)
    if p.lam != 0.0:
        out = out + p.lam * DualField(u.grid, _convection(pointwise_product(u, w)))
    return out


def apply_L_inverse(f: DualField, mu: float) -> Field:
    """Exact inverse of the diagonal linear part."""
    return Field(f.grid, f.coeffs / linear_symbol(f.grid, mu), Basis.SINE)
