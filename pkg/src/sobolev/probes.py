"""
Interpolation and Embedding Probes
==================================

Numerical probes of the interpolation inequality

    ||u^2|| <= C * sqrt(||u||^2 + ||D^{1/2} u||^2) * ||u_x||

and of the embedding chain H = H^{1/2,1} -> H^{1/3,1/3} -> L^4. Constants
are reported as empirical lower bounds over random ensembles, never assumed.
"""

import logging
from dataclasses import dataclass, field
from typing import List, NamedTuple, Optional, Sequence, Tuple

import numpy as np
from tqdm import tqdm

from ..spectral.fields import Field, random_field
from ..spectral.grid import GridSpec
from ..utils.helpers import make_rng
from .norms import anisotropic_norm, gradient_norm, h_norm, half_derivative_norm, l4_norm, square_norm

logger = logging.getLogger(__name__)

# Spectral decay exponents sampled by the probes
DECAY_RANGE = (1.0, 3.0)


def interpolation_ratio(u: Field) -> Optional[float]:
    """
    ``||u^2|| / (sqrt(||u||^2 + ||D^{1/2}u||^2) * ||u_x||)``, or None if ``u_x = 0``.
    """
    ux = gradient_norm(u)
    if ux == 0.0:
        return None
    l2_sq = float(np.sum(np.abs(u.coeffs) ** 2))
    time_part = np.sqrt(l2_sq + half_derivative_norm(u) ** 2)
    return square_norm(u) / (time_part * ux)


@dataclass
class ProbeResult:
    """
    Outcome of an interpolation probe.

    Attributes
    ----------
    c_emp : float
        Largest observed ratio (a lower bound for the constant C).
    worst_field : Field or None
        Field attaining ``c_emp``.
    ratios : List[float]
        Ratio of every non-degenerate sample, in sample order.
    n_skipped : int
        Samples dropped because ``u_x = 0``.
    """

    c_emp: float
    worst_field: Optional[Field]
    ratios: List[float] = field(default_factory=list)
    n_skipped: int = 0

    def to_dict(self) -> dict:
        return {
            'c_emp': self.c_emp,
            'n_used': len(self.ratios),
            'n_skipped': self.n_skipped,
        }


def probe_samples(
    n_samples: int,
    grid: GridSpec,
    seed: int,
    window: Optional[Tuple[int, int]] = None
):
    """
    Random fields of the probe ensembles.

    Sample ``i`` is drawn from its own stream ``(seed, i)`` with a decay
    exponent in :data:`DECAY_RANGE`, so samples are reproducible one by one.
    """
    for i in range(n_samples):
        rng = make_rng(seed, i)
        decay = rng.uniform(*DECAY_RANGE)
        yield random_field(grid, rng, decay=decay, window=window)


def interpolation_probe(
    n_samples: int,
    grid: GridSpec,
    seed: int,
    window: Optional[Tuple[int, int]] = None,
    extra_fields: Sequence[Field] = (),
    show_progress: bool = False
) -> ProbeResult:
    """
    Empirical constant of the interpolation inequality.

    Parameters
    ----------
    n_samples : int
        Number of random fields (>= 1).
    grid : GridSpec
        Grid the fields live on.
    seed : int
        Root seed.
    window : Tuple[int, int], optional
        Spectral window of the random draws; fixing it makes the ensemble
        identical across grid refinements.
    extra_fields : Sequence[Field]
        Additional fields to include (e.g. known extremal candidates).
    show_progress : bool
        Whether to show a progress bar.

    Returns
    -------
    ProbeResult
        Maximum ratio and the field attaining it.
    """
    if n_samples < 1:
        raise ValueError(f"n_samples must be >= 1, got {n_samples}")

    samples = list(extra_fields) + list(probe_samples(n_samples, grid, seed, window))
    iterator = tqdm(samples, desc="interpolation probe") if show_progress else samples

    ratios, skipped = [], 0
    c_emp, worst = 0.0, None
    for u in iterator:
        ratio = interpolation_ratio(u)
        if ratio is None:
            skipped += 1
            continue
        ratios.append(ratio)
        if ratio > c_emp:
            c_emp, worst = ratio, u

    logger.info("interpolation probe: C_emp=%.6f over %d fields (%d skipped)",
                c_emp, len(ratios), skipped)
    return ProbeResult(c_emp=c_emp, worst_field=worst, ratios=ratios, n_skipped=skipped)


class EmbeddingChain(NamedTuple):
    """Norms along H -> H^{1/3,1/3} -> L^4 for one field."""

    h_third: float
    l4: float
    h: float

    @property
    def ratios(self) -> Tuple[float, float]:
        """``(||u||_{L^4} / ||u||_{1/3,1/3}, ||u||_{1/3,1/3} / ||u||_H)`` (0 for u = 0)."""
        first = self.l4 / self.h_third if self.h_third > 0 else 0.0
        second = self.h_third / self.h if self.h > 0 else 0.0
        return first, second


def embedding_chain_check(u: Field) -> EmbeddingChain:
    """
    Norms of ``u`` in H^{1/3}(T, H^{1/3}(I)), L^4 and H.

    The middle norm uses weights ``(1+k^2)^{1/3} (1+(m pi)^2)^{1/3}``.
    """
    return EmbeddingChain(
        h_third=anisotropic_norm(u, 1.0 / 3.0, 1.0 / 3.0),
        l4=l4_norm(u),
        h=h_norm(u),
    )


def holder_interpolation_check(
    u: Field,
    theta: float = 1.0 / 3.0,
    alpha: float = 0.5,
    beta: float = 1.0
) -> Tuple[float, float]:
    """
    Both sides of the discrete Hölder interpolation inequality.

    ``sum |2 pi k|^{2(1-theta)alpha} (m pi)^{2 theta beta} |u|^2
    <= (sum |2 pi k|^{2 alpha} |u|^2)^{1-theta} (sum (m pi)^{2 beta} |u|^2)^theta``

    Returns
    -------
    Tuple[float, float]
        ``(lhs, rhs)``; the inequality holds mode by mode, hence for every field.
    """
    power = np.abs(u.coeffs) ** 2
    tau = np.abs(2 * np.pi * u.grid.frequencies)[:, None]
    xi = u.grid.wavenumbers(u.basis)[None, :]

    lhs = float(np.sum(tau ** (2 * (1 - theta) * alpha) * xi ** (2 * theta * beta) * power))
    time_part = float(np.sum(tau ** (2 * alpha) * power))
    space_part = float(np.sum(xi ** (2 * beta) * power))
    rhs = time_part ** (1 - theta) * space_part ** theta
    return lhs, rhs


def embedding_ensemble(n_samples: int, grid: GridSpec, seed: int) -> Tuple[float, float]:
    """Largest embedding-chain ratios over a random ensemble."""
    worst_l4, worst_h = 0.0, 0.0
    for u in probe_samples(n_samples, grid, seed):
        first, second = embedding_chain_check(u).ratios
        worst_l4, worst_h = max(worst_l4, first), max(worst_h, second)
    return worst_l4, worst_h
