"""Tests for the Cole-Hopf transformation and the ground-state certificate."""

import logging

import numpy as np
import pytest

from src.cole_hopf import (
    antiderivative_x,
    default_scale,
    ground_state,
    hopf_transform,
    inverse_transform,
    neumann_residual,
    pde_residual,
    period_map,
    potential_factor,
    second_eigenvalue,
)
from src.solver import SolveConfig, continuation_solve, uniform_lambdas
from src.spectral import Basis, DualField, Field, GridSpec, random_field
from src.spectral.operators import l2_norm, space_derivative
from src.spectral.transforms import space_inverse
from src.utils.errors import NonConvergenceError, OracleInstabilityError
from src.utils.helpers import make_rng

GRID = GridSpec(K=2, M=8)


def _cosine_profile(*values):
    psi = np.zeros(GRID.M + 1)
    psi[:len(values)] = values
    return psi


@pytest.fixture
def drift():
    """Smooth small time-periodic drift."""
    return Field.from_modes(GRID, {(0, 1): 0.3, (1, 1): 0.1 - 0.05j, (1, 2): 0.05})


# ============================================================================
# Transformation
# ============================================================================

def test_antiderivative_of_sine():
    # int_0^x sin(pi s) ds = (1 - cos(pi x)) / pi
    u = Field.from_modes(GRID, {(0, 1): 1 / np.sqrt(2)})
    U = antiderivative_x(u)
    assert U.basis is Basis.COSINE
    assert U.mode(0, 0) == pytest.approx(1 / np.pi)
    assert U.mode(0, 1) == pytest.approx(-1 / (np.pi * np.sqrt(2)))


def test_antiderivative_differentiates_back(make_field):
    u = make_field()
    np.testing.assert_allclose(space_derivative(antiderivative_x(u)).coeffs, u.coeffs, atol=1e-14)
    with pytest.raises(ValueError):
        antiderivative_x(make_field(Basis.COSINE))


def test_hopf_transform_of_zero_is_one():
    phi = hopf_transform(Field.zeros(GRID), mu=0.5)
    expected = np.zeros((GRID.n_time, GRID.M + 1))
    expected[GRID.K, 0] = 1.0
    np.testing.assert_allclose(phi.coeffs, expected, atol=1e-15)


def test_default_scale():
    assert default_scale(0.25) == -0.5


_ROUND_TRIPS = (
    [(GridSpec(K=4, M=8), seed, c) for seed in range(5) for c in (None, 1.0)]
    + [(GridSpec(K=8, M=16), 5, None)]
)


@pytest.mark.parametrize("grid, seed, c", _ROUND_TRIPS)
def test_transform_round_trip(grid, seed, c):
    mu = 1.0
    u = random_field(grid, make_rng(seed), decay=2.0)
    scale = default_scale(mu) if c is None else c
    phi = hopf_transform(u, mu, c)
    assert phi.basis is Basis.COSINE
    assert phi.grid.K > grid.K and phi.grid.M > grid.M
    back = inverse_transform(phi, scale, grid=grid)
    assert back.grid == grid
    assert l2_norm(back - u) < 1e-10 * max(1.0, l2_norm(u))


def test_potential_factor_grows_with_the_field(caplog):
    zero = antiderivative_x(Field.zeros(GRID))
    assert potential_factor(zero, -2.0) == 1
    small = antiderivative_x(Field.from_modes(GRID, {(0, 1): 0.01}))
    large = antiderivative_x(Field.from_modes(GRID, {(0, 1): 1.0}))
    assert 1 < potential_factor(small, -2.0) < potential_factor(large, -2.0)

    huge = antiderivative_x(Field.from_modes(GRID, {(0, 1): 500.0}))
    with caplog.at_level(logging.WARNING, logger='src.cole_hopf.transform'):
        assert potential_factor(huge, 1.0, max_factor=8) == 8
    assert "only resolved" in caplog.text


def test_hopf_transform_rejects_zero_scale():
    with pytest.raises(ValueError):
        hopf_transform(Field.zeros(GRID), mu=1.0, c=0.0)


def test_inverse_transform_needs_positive_cosine_potential():
    negative = Field.from_modes(GRID, {(0, 0): -1.0}, Basis.COSINE)
    with pytest.raises(ValueError):
        inverse_transform(negative, 1.0)
    with pytest.raises(ValueError):
        inverse_transform(Field.zeros(GRID), 1.0)


def test_inverse_transform_basis_choice():
    phi = hopf_transform(Field.from_modes(GRID, {(0, 1): 0.05}), mu=1.0)
    as_cosine = inverse_transform(phi, -2.0, basis=Basis.COSINE)
    assert as_cosine.basis is Basis.COSINE


# ============================================================================
# Period map
# ============================================================================

def test_period_map_without_drift():
    mu = 0.3
    v = Field.zeros(GRID)
    np.testing.assert_allclose(period_map(v, _cosine_profile(1.0), mu), _cosine_profile(1.0), atol=1e-15)
    decayed = period_map(v, _cosine_profile(0.0, 1.0), mu)
    np.testing.assert_allclose(decayed, _cosine_profile(0.0, np.exp(-mu * np.pi ** 2)), rtol=1e-13, atol=1e-15)


def test_period_map_preserves_constants(drift):
    out = period_map(drift, _cosine_profile(2.0), 0.5)
    np.testing.assert_allclose(out, _cosine_profile(2.0), atol=1e-15)


def test_period_map_is_linear(drift):
    rng = make_rng(4)
    p, q = rng.standard_normal(GRID.M + 1), rng.standard_normal(GRID.M + 1)
    lhs = period_map(drift, 2.0 * p - 3.0 * q, 0.5)
    rhs = 2.0 * period_map(drift, p, 0.5) - 3.0 * period_map(drift, q, 0.5)
    np.testing.assert_allclose(lhs, rhs, atol=1e-13)


def test_period_map_keeps_positive_profiles_positive(drift):
    psi0 = _cosine_profile(1.0, 0.6, 0.2)
    samples = space_inverse(psi0, Basis.COSINE, 64)
    assert samples.min() > 0
    out = space_inverse(period_map(drift, psi0, 0.5), Basis.COSINE, 64)
    assert out.min() >= -1e-12


def test_period_map_cfl_guard():
    strong = Field.from_modes(GRID, {(0, 1): 50.0})
    with pytest.raises(OracleInstabilityError):
        period_map(strong, _cosine_profile(1.0), 0.5, steps=GRID.n_time)


def test_period_map_rejects_wrong_profile(drift):
    with pytest.raises(ValueError):
        period_map(drift, np.ones(GRID.M), 0.5)


# ============================================================================
# Ground state
# ============================================================================

def test_ground_state_without_drift():
    mu = 0.25
    gs = ground_state(Field.zeros(GRID), mu)
    assert abs(gs.K) < 1e-12
    assert gs.rho == pytest.approx(1.0, abs=1e-12)
    assert gs.certificate.holds
    assert gs.certificate.eigenvalue_simple
    assert gs.certificate.residuals['phi'] < 1e-12
    assert gs.rho2 == pytest.approx(np.exp(-mu * np.pi ** 2), rel=1e-8)
    assert gs.phi.basis is Basis.COSINE


def test_ground_state_of_drift_is_certified(drift):
    gs = ground_state(drift, 0.5)
    assert abs(gs.K) < 1e-6
    assert gs.certificate.holds
    assert gs.certificate.residuals['phi_min'] > 0
    assert gs.certificate.residuals['pde'] < 1e-8
    assert gs.certificate.residuals['neumann'] < 1e-12
    assert gs.rho - gs.rho2 >= 1e-3
    assert gs.to_dict()['certificate']['holds'] is True


def test_rho_does_not_depend_on_start(drift):
    reference = ground_state(drift, 0.5)
    other = ground_state(drift, 0.5, psi0=_cosine_profile(1.0, 0.5, -0.2))
    assert other.rho == pytest.approx(reference.rho, abs=1e-10)


def test_ground_state_argument_checks(drift):
    with pytest.raises(ValueError):
        ground_state(drift, 0.5, steps=GRID.n_time * 20 + 1)
    with pytest.raises(ValueError):
        ground_state(drift, 0.5, max_iter=1)
    with pytest.raises(ValueError):
        ground_state(drift, 0.5, psi0=_cosine_profile(-1.0, 0.2))


def test_ground_state_iteration_cap():
    start = _cosine_profile(1.0, 0.5)
    with pytest.raises(NonConvergenceError) as err:
        ground_state(Field.zeros(GRID), 0.1, max_iter=2, psi0=start)
    assert len(err.value.history) == 2


def test_second_eigenvalue_without_drift():
    mu = 0.4
    phi0 = _cosine_profile(1.0)
    steps = GRID.n_time * 30
    assert second_eigenvalue(Field.zeros(GRID), phi0, mu, steps) == pytest.approx(np.exp(-mu * np.pi ** 2), rel=1e-8)


def test_residuals_of_constant_potential(drift):
    one = Field.from_modes(GRID, {(0, 0): 1.0}, Basis.COSINE)
    assert pde_residual(one, drift, 0.5, 0.0) < 1e-14
    assert pde_residual(one, drift, 0.5, 0.1) == pytest.approx(0.1)
    wavy = random_field(GRID, make_rng(0), Basis.COSINE)
    assert neumann_residual(wavy) < 1e-12


def test_ground_state_of_burgers_solution():
    grid = GridSpec(K=2, M=8)
    mu = 0.5
    f = DualField.from_field(Field.from_modes(grid, {(1, 1): 1 / (2 * np.sqrt(2))}))
    v = continuation_solve(f, mu, SolveConfig(lambda_grid=uniform_lambdas(5))).last.u
    gs = ground_state(v, mu)
    assert abs(gs.K) < 1e-6
    assert gs.certificate.residuals['phi'] < 1e-5
    assert gs.certificate.holds
