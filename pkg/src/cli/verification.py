"""
Invariant Suites
================

Seeded random-ensemble checks of the operator identities, the Hölder
interpolation inequality and the weak-form identities of the Burgers
operator. Each check reports its worst residual over the ensemble.
"""

import logging
from dataclasses import dataclass
from typing import Callable, Dict, List, Tuple

import numpy as np
from tqdm import tqdm

from ..burgers.operator import OperatorParams, apply_L, apply_S, jacobian_apply
from ..sobolev.norms import dual_forcing_norm, dual_supremizer, gradient_norm
from ..sobolev.probes import DECAY_RANGE, holder_interpolation_check
from ..spectral.fields import Basis, DualField, Field, random_field
from ..spectral.grid import GridSpec
from ..spectral.operators import (
    dual_pairing,
    fractional_derivative,
    fractional_derivative_adjoint,
    hilbert_transform,
    l2_inner,
    l2_norm,
    quadrature_inner,
    space_derivative,
    square_dealiased,
)
from ..spectral.transforms import analyze, evaluate, quadrature_mean, synthesize
from ..utils.helpers import derive_seed, make_rng

logger = logging.getLogger(__name__)

IDENTITY_TOL = 1e-11


@dataclass
class InvariantResult:
    """Outcome of one invariant over the ensemble."""

    name: str
    suite: str
    n_samples: int
    max_residual: float
    threshold: float

    @property
    def passed(self) -> bool:
        return bool(self.max_residual <= self.threshold)

    def to_dict(self) -> dict:
        return {
            'name': self.name,
            'suite': self.suite,
            'n_samples': self.n_samples,
            'max_residual': self.max_residual,
            'threshold': self.threshold,
            'passed': self.passed,
        }


def _rel(a: float, b: float) -> float:
    return abs(a - b) / max(1.0, abs(a), abs(b))


def _field(grid: GridSpec, rng: np.random.Generator, basis: Basis = Basis.SINE) -> Field:
    return random_field(grid, rng, basis, decay=rng.uniform(*DECAY_RANGE))


def _mean_free(u: Field) -> Field:
    coeffs = np.array(u.coeffs)
    coeffs[u.grid.K] = 0.0
    return u.with_coeffs(coeffs)


# Each check maps (grid, rng, mu) to a residual.

def _round_trip(grid, rng, mu):
    u = _field(grid, rng)
    return float(np.max(np.abs(analyze(synthesize(u), grid).coeffs - u.coeffs)))


def _parseval(grid, rng, mu):
    u = _field(grid, rng)
    return _rel(quadrature_inner(u, u), l2_norm(u) ** 2)


def _composition(grid, rng, mu):
    u = _field(grid, rng)
    s, t = rng.uniform(0.0, 1.0, size=2)
    lhs = fractional_derivative(fractional_derivative(u, s), t)
    rhs = fractional_derivative(u, s + t)
    scale = max(1.0, l2_norm(rhs))
    return l2_norm(lhs - rhs) / scale


def _adjointness(grid, rng, mu):
    u, v = _field(grid, rng), _field(grid, rng)
    s = rng.uniform(0.0, 1.0)
    return _rel(l2_inner(fractional_derivative(u, s), v), l2_inner(u, fractional_derivative_adjoint(v, s)))


def _hilbert_half(grid, rng, mu):
    u = _field(grid, rng)
    lhs = fractional_derivative_adjoint(u, 0.5)
    rhs = hilbert_transform(fractional_derivative(u, 0.5))
    return l2_norm(lhs - rhs) / max(1.0, l2_norm(lhs))


def _half_pairing(grid, rng, mu):
    u, v = _field(grid, rng), _field(grid, rng)
    lhs = l2_inner(fractional_derivative(u, 0.5), fractional_derivative_adjoint(v, 0.5))
    return _rel(lhs, l2_inner(fractional_derivative(u, 1.0), v))


def _hilbert_skew(grid, rng, mu):
    u = _field(grid, rng)
    return abs(l2_inner(u, hilbert_transform(u))) / max(1.0, l2_norm(u) ** 2)


def _half_orthogonal(grid, rng, mu):
    u = _field(grid, rng)
    pairing = l2_inner(fractional_derivative(u, 0.5), fractional_derivative_adjoint(u, 0.5))
    return abs(pairing) / max(1.0, l2_norm(fractional_derivative(u, 1.0)) * l2_norm(u))


def _hilbert_square(grid, rng, mu):
    u = _mean_free(_field(grid, rng))
    return l2_norm(hilbert_transform(hilbert_transform(u)) + u) / max(1.0, l2_norm(u))


def _hilbert_half_pairing(grid, rng, mu):
    # <D^{1/2} u, D_*^{1/2} H u> = -||D^{1/2} u||^2
    u = _field(grid, rng)
    half = fractional_derivative(u, 0.5)
    lhs = l2_inner(half, fractional_derivative_adjoint(hilbert_transform(u), 0.5))
    return _rel(lhs, -l2_norm(half) ** 2)


def _holder(grid, rng, mu):
    lhs, rhs = holder_interpolation_check(_field(grid, rng))
    return max(0.0, lhs - rhs) / max(1.0, rhs)


def _supremizer(grid, rng, mu):
    f = DualField.from_field(_field(grid, rng))
    v = dual_supremizer(f)
    return _rel(dual_pairing(f, v), dual_forcing_norm(f) * gradient_norm(v))


def _linear_definition(grid, rng, mu):
    u, v = _field(grid, rng), _field(grid, rng)
    diagonal = dual_pairing(apply_L(u, OperatorParams(mu)), v)
    time_part = l2_inner(fractional_derivative(u, 0.5), fractional_derivative_adjoint(v, 0.5))
    space_part = mu * l2_inner(space_derivative(u), space_derivative(v))
    return _rel(diagonal, time_part + space_part)


def _hilbert_test(grid, rng, mu):
    # testing with H u removes the diffusion and leaves the time seminorm
    u = _field(grid, rng)
    lhs = dual_pairing(apply_L(u, OperatorParams(mu)), hilbert_transform(u))
    return _rel(lhs, -l2_norm(fractional_derivative(u, 0.5)) ** 2)


def _convection_quadrature(grid, rng, mu):
    u, v = _field(grid, rng), _field(grid, rng)
    shape = grid.padded_shape()
    integrand = evaluate(u, shape).real ** 2 * evaluate(space_derivative(v), shape).real
    return _rel(dual_pairing(apply_S(u), v), -0.5 * quadrature_mean(integrand))


def _cubic_annihilation(grid, rng, mu):
    u = _field(grid, rng)
    cubic = l2_inner(square_dealiased(u), space_derivative(u))
    return abs(cubic) / (1.0 + l2_norm(u) ** 3)


def _jacobian_expansion(grid, rng, mu):
    # S is quadratic: T(u + e w) = T(u) + e J(u) w + e^2 S(w) exactly
    u, w = _field(grid, rng), _field(grid, rng)
    p = OperatorParams(mu)
    eps = 1e-3

    def T(z: Field) -> DualField:
        return apply_L(z, p) + apply_S(z)

    remainder = T(u + eps * w) - T(u) - eps * jacobian_apply(u, w, p) - eps ** 2 * apply_S(w)
    scale = max(1.0, l2_norm(T(u).as_field()))
    return l2_norm(remainder.as_field()) / scale


CHECKS: Dict[str, Tuple[str, Callable, float]] = {
    'transform_round_trip': ('spectral', _round_trip, IDENTITY_TOL),
    'parseval': ('spectral', _parseval, IDENTITY_TOL),
    'composition_law': ('spectral', _composition, IDENTITY_TOL),
    'adjointness': ('spectral', _adjointness, IDENTITY_TOL),
    'adjoint_half_is_hilbert_half': ('spectral', _hilbert_half, IDENTITY_TOL),
    'half_derivative_pairing': ('spectral', _half_pairing, IDENTITY_TOL),
    'hilbert_skew': ('spectral', _hilbert_skew, IDENTITY_TOL),
    'half_derivative_orthogonality': ('spectral', _half_orthogonal, IDENTITY_TOL),
    'hilbert_square': ('spectral', _hilbert_square, IDENTITY_TOL),
    'hilbert_half_pairing': ('spectral', _hilbert_half_pairing, IDENTITY_TOL),
    'holder_interpolation': ('sobolev', _holder, 1e-10),
    'dual_supremizer': ('sobolev', _supremizer, IDENTITY_TOL),
    'linear_form_definition': ('burgers', _linear_definition, IDENTITY_TOL),
    'hilbert_test_function': ('burgers', _hilbert_test, IDENTITY_TOL),
    'convection_quadrature': ('burgers', _convection_quadrature, IDENTITY_TOL),
    'cubic_annihilation': ('burgers', _cubic_annihilation, 1e-9),
    'jacobian_expansion': ('burgers', _jacobian_expansion, IDENTITY_TOL),
}


def run_invariants(
    grid: GridSpec,
    n_samples: int,
    seed: int,
    mu: float = 1.0,
    show_progress: bool = False
) -> List[InvariantResult]:
    """
    Run every check of :data:`CHECKS` over ``n_samples`` seeded draws.

    Check ``name`` draws sample ``i`` from the stream
    ``(derive_seed(seed, 'verify.' + name), i)``, so results do not depend on
    the order the checks run in.
    """
    results = []
    items = list(CHECKS.items())
    iterator = tqdm(items, desc="invariants") if show_progress else items
    for name, (suite, check, threshold) in iterator:
        check_seed = derive_seed(seed, f"verify.{name}")
        worst = 0.0
        for i in range(n_samples):
            worst = max(worst, float(check(grid, make_rng(check_seed, i), mu)))
        result = InvariantResult(name, suite, n_samples, worst, threshold)
        logger.info("%-32s max residual %.3e  %s", name, worst, 'ok' if result.passed else 'FAILED')
        results.append(result)
    return results
