"""
Forcing Construction
====================

Assembles a :class:`DualField` from a :class:`ForcingSpec`.
"""

import logging
from typing import Tuple

import numpy as np

from ..sobolev.norms import dual_forcing_norm
from ..spectral.fields import Basis, DualField, Field
from ..spectral.grid import GridSpec
from ..spectral.operators import l2_norm
from ..utils.helpers import derive_seed, make_rng
from .config import ForcingSpec, ModalTerm, RoughTerm

logger = logging.getLogger(__name__)


def modal_coefficients(term: ModalTerm, grid: GridSpec) -> np.ndarray:
    """
    Coefficients of ``a cos(2 pi k t + phase) sin(m pi x)``.

    With the orthonormal mode ``sqrt(2) sin(m pi x)`` a steady term has
    coefficient ``a cos(phase) / sqrt(2)``; an oscillating one splits into
    ``a exp(+-i phase) / (2 sqrt(2))`` at ``+-|k|``.
    """
    coeffs = np.zeros((grid.n_time, grid.M), dtype=complex)
    col = term.m - 1
    if term.k == 0:
        coeffs[grid.K, col] = term.a * np.cos(term.phase) / np.sqrt(2.0)
        return coeffs
    k = abs(term.k)
    phase = term.phase if term.k > 0 else -term.phase
    value = term.a * np.exp(1j * phase) / (2.0 * np.sqrt(2.0))
    coeffs[grid.K + k, col] += value
    coeffs[grid.K - k, col] += np.conj(value)
    return coeffs


def modewise_draw(grid: GridSpec, seed: int, decay: float, window: Tuple[int, int]) -> Field:
    """
    Random real cosine-family field drawn one mode at a time.

    Mode ``(k, m)`` takes its complex Gaussian from the stream
    ``make_rng(seed, k, m)`` and is scaled by ``(1 + k^2 + m^2)^(-decay/2)``,
    so two grids agree on every mode they share.
    """
    k_max, m_max = window
    coeffs = np.zeros((grid.n_time, grid.M + 1), dtype=complex)
    for k in range(k_max + 1):
        for m in range(m_max + 1):
            re, im = make_rng(seed, k, m).standard_normal(2)
            value = (re + 1j * im) * (1.0 + k ** 2 + m ** 2) ** (-decay / 2.0)
            if k == 0:
                coeffs[grid.K, m] = value.real
            else:
                coeffs[grid.K + k, m] = value
                coeffs[grid.K - k, m] = np.conj(value)
    return Field(grid, coeffs, Basis.COSINE)


def rough_coefficients(term: RoughTerm, grid: GridSpec, seed: int) -> np.ndarray:
    """
    Coefficients of ``f = g_x`` for a random cosine-family ``g`` with ``||g|| = a``.

    ``d/dx sqrt(2) cos(m pi x) = -(m pi) sqrt(2) sin(m pi x)``, so
    ``f_{k,m} = -(m pi) g_{k,m}``; the constant mode of ``g`` drops out.
    Without a cutoff every grid mode is drawn, so ``f`` leaves L^2 under
    refinement while ``||f||_*`` stays at most ``a``.
    """
    if term.cutoff is None:
        window = (grid.K, grid.M)
    else:
        window = (min(term.cutoff, grid.K), min(term.cutoff, grid.M))
    g = modewise_draw(grid, seed, term.p, window)
    norm = l2_norm(g)
    if norm > 0:
        g = g * (term.a / norm)
    return -grid.wavenumbers(Basis.SINE) * g.coeffs[:, 1:]


def build_forcing(spec: ForcingSpec, grid: GridSpec, seed: int = 0) -> DualField:
    """
    Forcing functional of a list of terms.

    Parameters
    ----------
    spec : ForcingSpec
        Terms to sum.
    grid : GridSpec
        Target grid.
    seed : int
        Run seed; rough terms without their own seed derive one from it.

    Returns
    -------
    DualField
        Hermitian forcing.
    """
    coeffs = np.zeros((grid.n_time, grid.M), dtype=complex)
    for i, term in enumerate(spec.terms):
        if isinstance(term, ModalTerm):
            coeffs += modal_coefficients(term, grid)
        elif isinstance(term, RoughTerm):
            term_seed = term.seed if term.seed is not None else derive_seed(seed, f"forcing.rough[{i}]")
            coeffs += rough_coefficients(term, grid, term_seed)
        else:
            raise TypeError(f"Unknown forcing term: {term!r}")
    f = DualField(grid, coeffs).symmetrized()
    logger.info("Forcing: %d terms, ||f||_* = %.6f", len(spec.terms), dual_forcing_norm(f))
    return f


def forcing_diagnostics(f: DualField) -> dict:
    """
    Size of the assembled forcing.

    ``l2_mass`` grows without bound under refinement for forcings outside
    L^2 while ``dual_norm`` stays bounded.
    """
    return {
        'l2_mass': float(np.linalg.norm(f.coeffs)),
        'dual_norm': dual_forcing_norm(f),
        'hermitian_defect': f.hermitian_defect(),
    }
