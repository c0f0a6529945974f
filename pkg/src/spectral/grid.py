"""
Discretization Grid
===================

Discretization of the space-time cylinder T x I, with T = R/Z the unit time
torus and I = (0, 1).

Coefficients are indexed by time frequency ``k in {-K..K}`` and space mode
``m``; physical samples live on uniform time nodes and midpoint space nodes.
"""

import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from ..utils.helpers import midpoint_nodes, time_nodes


@dataclass(frozen=True)
class GridSpec:
    """
    Discretization parameters of T x I.

    Parameters
    ----------
    K : int
        Largest time frequency (``k = -K..K``).
    M : int
        Number of space sine modes (``m = 1..M``; the cosine family uses
        ``m = 0..M``).
    Nt : int, optional
        Time quadrature points. Defaults to ``2K + 1``.
    Nx : int, optional
        Space quadrature points. Defaults to ``M + 1``.
    dealias : float
        Zero-padding factor for pointwise products (3/2 removes aliasing from
        quadratic products).

    Examples
    --------
    >>> grid = GridSpec(K=8, M=32)
    >>> grid.shape, grid.padded_shape()
    ((17, 33), (26, 50))
    """

    K: int
    M: int
    Nt: Optional[int] = None
    Nx: Optional[int] = None
    dealias: float = 1.5

    def __post_init__(self):
        if int(self.K) != self.K or self.K < 1:
            raise ValueError(f"K must be an integer >= 1, got {self.K}")
        if int(self.M) != self.M or self.M < 1:
            raise ValueError(f"M must be an integer >= 1, got {self.M}")
        if self.Nt is None:
            object.__setattr__(self, 'Nt', 2 * self.K + 1)
        if self.Nx is None:
            object.__setattr__(self, 'Nx', self.M + 1)
        if self.Nt < 2 * self.K + 1:
            raise ValueError(f"Nt must be >= 2K+1 = {2 * self.K + 1}, got {self.Nt}")
        if self.Nx < self.M + 1:
            raise ValueError(f"Nx must be >= M+1 = {self.M + 1}, got {self.Nx}")
        if self.dealias < 1.5:
            raise ValueError(f"dealias padding must be >= 3/2, got {self.dealias}")

    @property
    def shape(self) -> Tuple[int, int]:
        """Physical sample shape ``(Nt, Nx)``."""
        return (self.Nt, self.Nx)

    @property
    def n_time(self) -> int:
        """Number of stored time frequencies, ``2K + 1``."""
        return 2 * self.K + 1

    def n_space(self, basis) -> int:
        """Number of stored space modes for ``basis`` (M sine, M+1 cosine)."""
        return self.M if basis.value == 'sine' else self.M + 1

    def padded_shape(self, factor: Optional[float] = None) -> Tuple[int, int]:
        """
        Physical shape of the zero-padded product grid.

        Parameters
        ----------
        factor : float, optional
            Padding factor; defaults to ``dealias``. Quartic integrands use
            ``2 * dealias``.
        """
        factor = self.dealias if factor is None else factor
        return (math.ceil(factor * self.Nt), math.ceil(factor * self.Nx))

    def quartic_shape(self) -> Tuple[int, int]:
        """Padded shape on which products of four fields integrate exactly."""
        return self.padded_shape(2 * self.dealias)

    @property
    def frequencies(self) -> np.ndarray:
        """Time frequencies ``-K..K`` (row index order of coefficient arrays)."""
        return np.arange(-self.K, self.K + 1)

    def wavenumbers(self, basis) -> np.ndarray:
        """Space wavenumbers ``m * pi`` for the stored modes of ``basis``."""
        start = 1 if basis.value == 'sine' else 0
        return np.pi * np.arange(start, self.M + 1)

    def time_points(self, n: Optional[int] = None) -> np.ndarray:
        """Time quadrature nodes (``Nt`` of them unless ``n`` given)."""
        return time_nodes(self.Nt if n is None else n)

    def space_points(self, n: Optional[int] = None) -> np.ndarray:
        """Space quadrature nodes (``Nx`` midpoints unless ``n`` given)."""
        return midpoint_nodes(self.Nx if n is None else n)

    def refined(self, factor: int = 2) -> 'GridSpec':
        """Grid with ``factor`` times as many modes in each direction."""
        return GridSpec(K=self.K * factor, M=self.M * factor, dealias=self.dealias)

    def to_dict(self) -> dict:
        return {'K': self.K, 'M': self.M, 'Nt': self.Nt, 'Nx': self.Nx, 'dealias': self.dealias}
