"""
Cole-Hopf Transformation
========================

``u = c * phi_x / phi`` and its inverse ``phi = exp(U / c)`` with
``U = int_0^x u``. The scale ``c = -2 mu`` linearizes
``u_t - mu u_xx + u u_x = 0`` into the heat equation; ``c = 1`` is the bare
logarithmic derivative.
"""

import logging
from typing import Optional

import numpy as np

from ..spectral.fields import Basis, Field, restrict
from ..spectral.grid import GridSpec
from ..spectral.operators import space_derivative
from ..spectral.transforms import evaluate, from_physical

logger = logging.getLogger(__name__)


def default_scale(mu: float) -> float:
    return -2.0 * mu


def antiderivative_x(u: Field) -> Field:
    """
    Antiderivative in x vanishing at ``x = 0``, in the cosine family.

    ``int_0^x sqrt(2) sin(m pi s) ds = sqrt(2) / (m pi) - sqrt(2) cos(m pi x) / (m pi)``,
    so mode ``m`` feeds the constant mode and cosine mode ``m``.

    Examples
    --------
    >>> u = Field.from_modes(GridSpec(K=1, M=2), {(0, 1): 1 / np.sqrt(2)})   # sin(pi x)
    >>> U = antiderivative_x(u)                                              # (1 - cos(pi x)) / pi
    >>> bool(np.isclose(U.mode(0, 0), 1 / np.pi))
    True
    """
    if u.basis is not Basis.SINE:
        raise ValueError("antiderivative_x expects a field in the sine family")
    xi = u.grid.wavenumbers(Basis.SINE)
    modes = u.coeffs / xi
    out = np.zeros((u.grid.n_time, u.grid.M + 1), dtype=complex)
    out[:, 0] = np.sqrt(2.0) * modes.sum(axis=1)
    out[:, 1:] = -modes
    return Field(u.grid, out, Basis.COSINE)


def potential_factor(U: Field, c: float, tol: float = 1e-15, max_factor: int = 32) -> int:
    """
    Grid refinement factor that resolves ``exp(U / c)`` to about ``tol``.

    Products of ``j`` modes of ``U`` reach ``j`` times its bandwidth and
    weigh at most ``b^j / j!``, where ``b`` bounds ``sup |U / c|`` by the sum
    of the coefficient moduli. The factor is the first ``F`` whose tail
    ``sum_{j > F} b^j / j!`` is below ``tol``.
    """
    b = np.sqrt(2.0) * float(np.sum(np.abs(U.coeffs))) / abs(c)
    factor, term = 1, b ** 2 / 2.0
    while term * np.exp(b) > tol and factor < max_factor:
        factor += 1
        term *= b / (factor + 1)
    if term * np.exp(b) > tol:
        logger.warning("exp(U/c) with sup bound %.2f is only resolved to %.1e at factor %d",
                       b, term * np.exp(b), factor)
    return factor


def hopf_transform(u: Field, mu: float, c: Optional[float] = None) -> Field:
    """
    Positive potential ``phi = exp(U / c)`` of a Dirichlet field.

    ``phi`` is not band-limited, so it is expanded on
    ``u.grid.refined(potential_factor(...))``, where its truncation error is
    at round-off level. The exponential is taken on that grid's padded
    samples and re-analyzed in the cosine (Neumann) family.

    Parameters
    ----------
    u : Field
        Field in the sine family.
    mu : float
        Viscosity; sets the default scale ``c = -2 mu``.
    c : float, optional
        Transformation scale (nonzero).

    Returns
    -------
    Field
        ``phi`` in the cosine family, on ``u.grid`` itself when ``u = 0``.
    """
    c = default_scale(mu) if c is None else c
    if c == 0:
        raise ValueError("Cole-Hopf scale c must be nonzero")
    U = antiderivative_x(u)
    factor = potential_factor(U, c)
    grid = u.grid if factor == 1 else u.grid.refined(factor)
    shape = grid.padded_shape()
    phi_values = np.exp(evaluate(U, shape).real / c)
    return Field(grid, from_physical(phi_values, Basis.COSINE, grid), Basis.COSINE).symmetrized()


def inverse_transform(
    phi: Field,
    c: float,
    basis: Basis = Basis.SINE,
    grid: Optional[GridSpec] = None
) -> Field:
    """
    ``u = c * phi_x / phi`` of a positive cosine-family potential.

    Computed as ``c * (log phi)_x``: ``log phi`` is sampled on the padded
    grid, re-analyzed in the cosine family and differentiated, which lands in
    the sine family since the ratio vanishes at the walls.
    ``basis=Basis.COSINE`` returns its cosine expansion instead.

    Parameters
    ----------
    phi : Field
        Positive potential in the cosine family.
    c : float
        Transformation scale.
    basis : Basis
        Family of the result.
    grid : GridSpec, optional
        Grid of the result; ``phi``'s modes beyond it are dropped.
        Defaults to ``phi.grid``.

    Raises
    ------
    ValueError
        If ``phi`` is not strictly positive on the padded grid.
    """
    if phi.basis is not Basis.COSINE:
        raise ValueError("inverse_transform expects a potential in the cosine family")
    shape = phi.grid.padded_shape()
    phi_values = evaluate(phi, shape).real
    if np.min(phi_values) <= 0:
        raise ValueError(f"phi must be strictly positive, min on grid is {np.min(phi_values):.3e}")
    log_phi = Field(phi.grid, from_physical(np.log(phi_values), Basis.COSINE, phi.grid), Basis.COSINE)
    u = c * space_derivative(log_phi)
    if basis is Basis.COSINE:
        u = Field(phi.grid, from_physical(evaluate(u, shape).real, Basis.COSINE, phi.grid), Basis.COSINE)
    return restrict(u, grid or phi.grid).symmetrized()
