"""
Sobolev Norms
=============

Fractional, anisotropic and dual norms of spectral fields.

The working space is H = H^{1/2,1}(T x I) with Dirichlet conditions in x,
normed by ``sqrt(||u||^2 + ||D^{1/2} u||^2 + ||u_x||^2)``.
"""

from dataclasses import dataclass, field
from typing import Dict, Optional, Sequence

import numpy as np

from ..spectral.fields import Basis, DualField, Field
from ..spectral.operators import fractional_derivative
from ..spectral.transforms import evaluate


def _power(u: Field) -> np.ndarray:
    return np.abs(u.coeffs) ** 2


def _time_weights(u: Field) -> np.ndarray:
    return u.grid.frequencies.astype(float)[:, None]


def _space_weights(u: Field) -> np.ndarray:
    return u.grid.wavenumbers(u.basis)[None, :]


def sobolev_time_norm(u: Field, s: float) -> float:
    """
    Norm of H^s(T, L^2(I)): ``sqrt(sum (1 + k^2)^s |u_{k,m}|^2)``.

    Examples
    --------
    ``s = 0`` is the L^2 norm; a field with only ``k = +-1`` content has
    ``sobolev_time_norm(u, 1) == sqrt(2) * l2``.
    """
    k = _time_weights(u)
    return float(np.sqrt(np.sum((1.0 + k ** 2) ** s * _power(u))))


def half_derivative_norm(u: Field) -> float:
    """``||D^{1/2} u||_{L^2} = sqrt(sum |2 pi k| |u_{k,m}|^2)``."""
    k = _time_weights(u)
    return float(np.sqrt(np.sum(np.abs(2 * np.pi * k) * _power(u))))


def gradient_norm(u: Field) -> float:
    """``||u_x||_{L^2} = sqrt(sum (m pi)^2 |u_{k,m}|^2)``."""
    return float(np.sqrt(np.sum(_space_weights(u) ** 2 * _power(u))))


def h_norm(u: Field) -> float:
    """
    Norm of the working space H = H^{1/2,1} (Hilbert-sum form).

    Raises
    ------
    ValueError
        If ``u`` is not in the Dirichlet (sine) family.
    """
    if u.basis is not Basis.SINE:
        raise ValueError("h_norm is defined on the Dirichlet (sine) family")
    l2_sq = float(np.sum(_power(u)))
    return float(np.sqrt(l2_sq + half_derivative_norm(u) ** 2 + gradient_norm(u) ** 2))


def anisotropic_norm(u: Field, alpha: float, beta: float) -> float:
    """
    Norm of H^alpha(T, H^beta(I)) with weights ``(1+k^2)^alpha (1+(m pi)^2)^beta``.
    """
    k = _time_weights(u)
    xi = _space_weights(u)
    weights = (1.0 + k ** 2) ** alpha * (1.0 + xi ** 2) ** beta
    return float(np.sqrt(np.sum(weights * _power(u))))


def dual_forcing_norm(f: DualField) -> float:
    """
    Dual norm of a forcing against the gradient seminorm.

    ``||f||_* = sup <f, v> / ||v_x|| = sqrt(sum |f_{k,m}|^2 / (m pi)^2)``;
    the supremum is attained at :func:`dual_supremizer`. Every sine mode has
    a nonzero gradient, so the norm is always finite.
    """
    xi = f.grid.wavenumbers(Basis.SINE)[None, :]
    return float(np.sqrt(np.sum(np.abs(f.coeffs) ** 2 / xi ** 2)))


def dual_supremizer(f: DualField) -> Field:
    """Field ``v*`` with ``<f, v*> = ||f||_* ||v*_x||`` (coefficients ``f / (m pi)^2``)."""
    xi = f.grid.wavenumbers(Basis.SINE)[None, :]
    return Field(f.grid, f.coeffs / xi ** 2, Basis.SINE)


def l4_norm(u: Field) -> float:
    """
    ``||u||_{L^4}`` by quadrature on the quartic padded grid (exact for band-limited u).
    """
    values = evaluate(u, u.grid.quartic_shape()).real
    return float(np.mean(values ** 4) ** 0.25)


def square_norm(u: Field) -> float:
    """``||u^2||_{L^2}`` of the full (untruncated) square; equals ``l4_norm(u)^2``."""
    return l4_norm(u) ** 2


@dataclass
class NormReport:
    """
    Norms of one field (and optionally of its forcing).

    Attributes
    ----------
    l2 : float
        ``||u||_{L^2}``.
    hs_time : Dict[float, float]
        ``||D^s u||_{L^2}`` for each requested order ``s``.
    hx : float
        ``||u_x||_{L^2}``.
    h_space_time : float
        ``||u||_H``.
    l4 : float
        ``||u||_{L^4}``.
    dual_fnorm : float, optional
        ``||f||_*`` when a forcing is supplied.
    """

    l2: float
    hs_time: Dict[float, float] = field(default_factory=dict)
    hx: float = 0.0
    h_space_time: float = 0.0
    l4: float = 0.0
    dual_fnorm: Optional[float] = None

    def to_dict(self) -> dict:
        out = {
            'l2': self.l2,
            'hs_time': {f"{s:g}": value for s, value in sorted(self.hs_time.items())},
            'hx': self.hx,
            'h_space_time': self.h_space_time,
            'l4': self.l4,
        }
        if self.dual_fnorm is not None:
            out['dual_fnorm'] = self.dual_fnorm
        return out


def norm_report(
    u: Field,
    f: Optional[DualField] = None,
    orders: Sequence[float] = (0.25, 0.5, 1.0)
) -> NormReport:
    """Collect the norms of ``u`` (and ``||f||_*``) into a :class:`NormReport`."""
    hs_time = {float(s): float(np.linalg.norm(fractional_derivative(u, s).coeffs)) for s in orders}
    return NormReport(
        l2=float(np.linalg.norm(u.coeffs)),
        hs_time=hs_time,
        hx=gradient_norm(u),
        h_space_time=h_norm(u),
        l4=l4_norm(u),
        dual_fnorm=None if f is None else dual_forcing_norm(f),
    )
