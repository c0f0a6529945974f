"""
Spectral Fields
===============

Value types for real functions on T x I and for forcing functionals.

A ``Field`` stores coefficients against the orthonormal basis

    e_{k,m}(t, x) = exp(2 pi i k t) * s_m(x)

with ``s_m = sqrt(2) sin(m pi x)`` (``m = 1..M``, Dirichlet family) or
``s_0 = 1``, ``s_m = sqrt(2) cos(m pi x)`` (``m = 0..M``, Neumann family).
Rows run over ``k = -K..K``. Real fields have Hermitian coefficients,
``coeffs[-k, m] == conj(coeffs[k, m])``.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Dict, Optional, Tuple

import numpy as np

from ..utils.errors import GridMismatchError
from .grid import GridSpec


class Basis(Enum):
    """Space basis of a field."""

    SINE = 'sine'
    COSINE = 'cosine'

    @property
    def other(self) -> 'Basis':
        return Basis.COSINE if self is Basis.SINE else Basis.SINE

    @property
    def first_mode(self) -> int:
        return 1 if self is Basis.SINE else 0


def hermitian_flip(coeffs: np.ndarray) -> np.ndarray:
    """Coefficients of the complex conjugate field (``k -> -k`` and conjugate)."""
    return np.conj(coeffs[::-1])


class _Coefficients:
    """Algebra shared by fields and dual fields."""

    grid: GridSpec
    coeffs: np.ndarray
    basis: Basis

    def _init_coeffs(self, expected: Tuple[int, int]) -> None:
        coeffs = np.array(self.coeffs, dtype=complex)
        if coeffs.shape != expected:
            raise ValueError(
                f"coefficient shape {coeffs.shape} does not match grid/basis shape {expected}"
            )
        coeffs.setflags(write=False)
        object.__setattr__(self, 'coeffs', coeffs)

    def _check_compatible(self, other) -> None:
        if not isinstance(other, type(self)):
            raise TypeError(f"cannot combine {type(self).__name__} with {type(other).__name__}")
        if other.grid != self.grid:
            raise GridMismatchError(f"grid mismatch: {self.grid} vs {other.grid}")
        if other.basis is not self.basis:
            raise GridMismatchError(
                f"basis mismatch: {self.basis.value} vs {other.basis.value}"
            )

    def with_coeffs(self, coeffs: np.ndarray):
        """Same grid and basis, new coefficients."""
        raise NotImplementedError

    def __add__(self, other):
        self._check_compatible(other)
        return self.with_coeffs(self.coeffs + other.coeffs)

    def __sub__(self, other):
        self._check_compatible(other)
        return self.with_coeffs(self.coeffs - other.coeffs)

    def __neg__(self):
        return self.with_coeffs(-self.coeffs)

    def __mul__(self, scalar):
        if not np.isscalar(scalar):
            return NotImplemented
        return self.with_coeffs(scalar * self.coeffs)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        if not np.isscalar(scalar):
            return NotImplemented
        return self.with_coeffs(self.coeffs / scalar)

    def hermitian_defect(self) -> float:
        """Largest violation of Hermitian symmetry (0 for real fields)."""
        return float(np.max(np.abs(self.coeffs - hermitian_flip(self.coeffs)), initial=0.0))

    @property
    def is_real(self) -> bool:
        scale = max(1.0, float(np.max(np.abs(self.coeffs), initial=0.0)))
        return self.hermitian_defect() <= 1e-13 * scale

    def symmetrized(self):
        """Projection onto Hermitian coefficients (the real part of the field)."""
        return self.with_coeffs(0.5 * (self.coeffs + hermitian_flip(self.coeffs)))

    def ravel(self) -> np.ndarray:
        """Coefficients as a flat vector (for Krylov solvers)."""
        return self.coeffs.ravel()

    def mode(self, k: int, m: int) -> complex:
        """Coefficient of time frequency ``k`` and space mode ``m``."""
        return complex(self.coeffs[k + self.grid.K, m - self.basis.first_mode])


@dataclass(frozen=True, eq=False)
class Field(_Coefficients):
    """
    Real function on T x I in spectral form.

    Parameters
    ----------
    grid : GridSpec
        Discretization.
    coeffs : np.ndarray
        Complex array of shape ``(2K+1, M)`` (sine) or ``(2K+1, M+1)``
        (cosine). Copied and made read-only.
    basis : Basis
        Space basis tag.
    """

    grid: GridSpec
    coeffs: np.ndarray
    basis: Basis = Basis.SINE

    def __post_init__(self):
        self._init_coeffs((self.grid.n_time, self.grid.n_space(self.basis)))

    def with_coeffs(self, coeffs: np.ndarray) -> 'Field':
        return Field(self.grid, coeffs, self.basis)

    @classmethod
    def zeros(cls, grid: GridSpec, basis: Basis = Basis.SINE) -> 'Field':
        return cls(grid, np.zeros((grid.n_time, grid.n_space(basis))), basis)

    @classmethod
    def from_vector(cls, grid: GridSpec, vector: np.ndarray, basis: Basis = Basis.SINE) -> 'Field':
        return cls(grid, np.reshape(vector, (grid.n_time, grid.n_space(basis))), basis)

    @classmethod
    def from_modes(
        cls,
        grid: GridSpec,
        modes: Dict[Tuple[int, int], complex],
        basis: Basis = Basis.SINE
    ) -> 'Field':
        """
        Field with the given ``{(k, m): coefficient}`` entries.

        The conjugate entry at ``-k`` is filled in so the field is real.
        """
        coeffs = np.zeros((grid.n_time, grid.n_space(basis)), dtype=complex)
        for (k, m), value in modes.items():
            row, col = k + grid.K, m - basis.first_mode
            coeffs[row, col] = value
            if k != 0:
                coeffs[-k + grid.K, col] = np.conj(value)
            else:
                coeffs[row, col] = np.real(value)
        return cls(grid, coeffs, basis)

    def __repr__(self) -> str:
        return (
            f"Field(K={self.grid.K}, M={self.grid.M}, basis='{self.basis.value}', "
            f"max|c|={np.max(np.abs(self.coeffs), initial=0.0):.3e})"
        )


@dataclass(frozen=True, eq=False)
class DualField(_Coefficients):
    """
    Forcing functional f in H^{0,-1}, tested against Dirichlet fields.

    ``coeffs`` holds the coefficients of the L^2 Riesz representative in the
    sine family, so that ``<f, v> = Re sum f_{k,m} * conj(v_{k,m})``. For an
    L^2 forcing these are simply its own coefficients; rough forcings have
    coefficients that are not square summable as the grid grows.
    """

    grid: GridSpec
    coeffs: np.ndarray

    basis = Basis.SINE

    def __post_init__(self):
        self._init_coeffs((self.grid.n_time, self.grid.M))

    def with_coeffs(self, coeffs: np.ndarray) -> 'DualField':
        return DualField(self.grid, coeffs)

    @classmethod
    def zeros(cls, grid: GridSpec) -> 'DualField':
        return cls(grid, np.zeros((grid.n_time, grid.M)))

    @classmethod
    def from_field(cls, u: Field) -> 'DualField':
        """The functional ``v -> (u, v)`` of an L^2 field in the sine family."""
        if u.basis is not Basis.SINE:
            raise GridMismatchError("dual fields are represented in the sine family")
        return cls(u.grid, u.coeffs)

    def as_field(self) -> Field:
        """Riesz representative as a (sine) Field."""
        return Field(self.grid, self.coeffs, Basis.SINE)

    def __repr__(self) -> str:
        return (
            f"DualField(K={self.grid.K}, M={self.grid.M}, "
            f"max|c|={np.max(np.abs(self.coeffs), initial=0.0):.3e})"
        )


def random_field(
    grid: GridSpec,
    rng: np.random.Generator,
    basis: Basis = Basis.SINE,
    decay: float = 2.0,
    amplitude: float = 1.0,
    window: Optional[Tuple[int, int]] = None
) -> Field:
    """
    Random real field with a power-law spectrum.

    Coefficients are complex Gaussians scaled by ``(1 + k^2 + m^2)^(-decay/2)``
    and symmetrized.

    Parameters
    ----------
    grid : GridSpec
        Target grid.
    rng : np.random.Generator
        Source of randomness.
    basis : Basis
        Space basis.
    decay : float
        Power-law decay exponent of the coefficient moduli.
    amplitude : float
        Overall scale.
    window : Tuple[int, int], optional
        ``(k_max, m_max)`` of the drawn modes. The draw depends only on the
        window, so the same generator state yields the same field on any
        grid containing the window. Defaults to ``(K, M)``.

    Returns
    -------
    Field
        Random Hermitian field.
    """
    k_max, m_max = window if window is not None else (grid.K, grid.M)
    if k_max > grid.K or m_max > grid.M:
        raise ValueError(f"window {(k_max, m_max)} exceeds grid ({grid.K}, {grid.M})")

    first = basis.first_mode
    k = np.arange(-k_max, k_max + 1)[:, None]
    m = np.arange(first, m_max + 1)[None, :]
    shape = (k.size, m.size)
    draw = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    draw *= amplitude * (1.0 + k ** 2 + m ** 2) ** (-decay / 2.0)

    coeffs = np.zeros((grid.n_time, grid.n_space(basis)), dtype=complex)
    coeffs[grid.K - k_max:grid.K + k_max + 1, :m.size] = draw
    return Field(grid, coeffs, basis).symmetrized()


def restrict(u: Field, grid: GridSpec) -> Field:
    """
    Modes of ``u`` that ``grid`` stores (``|k| <= K`` and ``m <= M``).

    Raises
    ------
    GridMismatchError
        If ``grid`` has more modes than ``u.grid`` in either direction.
    """
    if grid.K > u.grid.K or grid.M > u.grid.M:
        raise GridMismatchError(f"cannot restrict from {u.grid} to the larger {grid}")
    rows = slice(u.grid.K - grid.K, u.grid.K + grid.K + 1)
    return Field(grid, u.coeffs[rows, :grid.n_space(u.basis)], u.basis)
