"""Tests for the weak Burgers operator, its Jacobian and the residual."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from src.burgers import (
    OperatorParams,
    apply_L,
    apply_L_inverse,
    apply_S,
    jacobian_apply,
    linear_symbol,
    residual,
)
from src.sobolev import dual_forcing_norm, gradient_norm
from src.spectral import Basis, DualField, Field, GridSpec, random_field
from src.spectral.operators import (
    dual_pairing,
    fractional_derivative,
    hilbert_transform,
    l2_norm,
    space_derivative,
)
from src.spectral.transforms import evaluate, quadrature_mean
from src.utils.errors import GridMismatchError
from src.utils.helpers import make_rng

GRID = GridSpec(K=4, M=8)
seeds = st.integers(min_value=0, max_value=2 ** 32 - 1)


def _field(seed, decay=1.5):
    return random_field(GRID, make_rng(seed), decay=decay)


@pytest.mark.parametrize("mu, lam", [(0.0, 1.0), (-1.0, 0.5), (1.0, -0.1), (1.0, 1.5)])
def test_params_validation(mu, lam):
    with pytest.raises(ValueError):
        OperatorParams(mu, lam)


def test_with_lambda():
    p = OperatorParams(0.3).with_lambda(0.25)
    assert (p.mu, p.lam) == (0.3, 0.25)


def test_linear_symbol():
    symbol = linear_symbol(GRID, 0.5)
    assert symbol.shape == (9, 8)
    assert np.min(np.abs(symbol)) == pytest.approx(0.5 * np.pi ** 2)
    assert symbol[GRID.K + 2, 2] == pytest.approx(4j * np.pi + 0.5 * 9 * np.pi ** 2)


def test_apply_L_on_a_mode():
    u = Field.from_modes(GRID, {(1, 2): 0.5})
    Lu = apply_L(u, OperatorParams(mu=2.0))
    assert Lu.mode(1, 2) == pytest.approx(0.5 * (2j * np.pi + 2.0 * 4 * np.pi ** 2))
    assert Lu.mode(-1, 2) == pytest.approx(0.5 * (-2j * np.pi + 2.0 * 4 * np.pi ** 2))


def test_apply_L_inverse_inverts(make_field):
    p = OperatorParams(0.25)
    u = make_field()
    np.testing.assert_allclose(apply_L_inverse(apply_L(u, p), p.mu).coeffs, u.coeffs, atol=1e-14)


def test_operator_requires_sine_family(make_field):
    with pytest.raises(GridMismatchError):
        apply_L(make_field(Basis.COSINE), OperatorParams(1.0))
    with pytest.raises(GridMismatchError):
        apply_S(make_field(Basis.COSINE))


@given(seed=seeds, mu=st.floats(0.01, 10.0))
@settings(max_examples=30, deadline=None)
def test_linear_part_is_coercive(seed, mu):
    # Re <L u, u> = mu ||u_x||^2; the time part is skew
    u = _field(seed)
    value = dual_pairing(apply_L(u, OperatorParams(mu)), u)
    assert value == pytest.approx(mu * gradient_norm(u) ** 2, rel=1e-12)


@given(seed=seeds, mu=st.floats(0.01, 10.0))
@settings(max_examples=30, deadline=None)
def test_hilbert_test_function_drops_diffusion(seed, mu):
    # <L u, H u> = -||D^{1/2} u||^2 for every viscosity
    u = _field(seed)
    value = dual_pairing(apply_L(u, OperatorParams(mu)), hilbert_transform(u))
    expected = -l2_norm(fractional_derivative(u, 0.5)) ** 2
    assert value == pytest.approx(expected, rel=1e-12, abs=1e-12)


@given(seed=seeds)
@settings(max_examples=30, deadline=None)
def test_convection_matches_quadrature(seed):
    u, v = _field(seed), _field(seed + 1)
    shape = GRID.padded_shape()
    integrand = evaluate(u, shape).real ** 2 * evaluate(space_derivative(v), shape).real
    expected = -0.5 * quadrature_mean(integrand)
    assert dual_pairing(apply_S(u), v) == pytest.approx(expected, rel=1e-11, abs=1e-12)


@given(seed=seeds, decay=st.floats(0.5, 3.0))
@settings(max_examples=50, deadline=None)
def test_cubic_annihilation(seed, decay):
    u = _field(seed, decay)
    assert abs(dual_pairing(apply_S(u), u)) < 1e-11 * (1.0 + l2_norm(u) ** 3)


def test_convection_of_sine_mode():
    # u = sin(pi x); <S(u), v> = (u u_x, v) and u u_x = (pi/2) sin(2 pi x)
    u = Field.from_modes(GRID, {(0, 1): 1 / np.sqrt(2)})
    Su = apply_S(u)
    assert Su.mode(0, 2).real == pytest.approx(np.pi / (2 * np.sqrt(2)))
    np.testing.assert_allclose(np.delete(Su.coeffs, GRID.K * 8 + 1), 0.0, atol=1e-14)


def test_jacobian_first_order_finite_differences():
    p = OperatorParams(0.5)
    eps_values = (1e-1, 1e-2, 1e-3)

    def T(z: Field) -> DualField:
        return apply_L(z, p) + apply_S(z)

    for pair in range(20):
        u, w = _field(2 * pair), _field(2 * pair + 1)
        errors = []
        for eps in eps_values:
            quotient = (T(u + eps * w) - T(u)) / eps
            errors.append(dual_forcing_norm(quotient - jacobian_apply(u, w, p)))
        slopes = np.diff(np.log10(errors)) / np.diff(np.log10(eps_values))
        np.testing.assert_allclose(slopes, 1.0, atol=1e-3)


def test_jacobian_is_complex_linear(make_field):
    p = OperatorParams(0.5)
    u, w = make_field(), make_field()
    lhs = jacobian_apply(u, Field(w.grid, 1j * w.coeffs), p)
    np.testing.assert_allclose(lhs.coeffs, 1j * jacobian_apply(u, w, p).coeffs, atol=1e-13)


def test_jacobian_at_lambda_zero_is_L(make_field):
    p = OperatorParams(0.5, lam=0.0)
    u, w = make_field(), make_field()
    np.testing.assert_array_equal(jacobian_apply(u, w, p).coeffs, apply_L(w, p).coeffs)


def test_residual_of_linear_solution(make_field):
    p = OperatorParams(0.3, lam=0.0)
    f = DualField.from_field(make_field())
    r, r_norm = residual(apply_L_inverse(f, p.mu), f, p)
    assert r_norm < 1e-13
    assert r_norm == pytest.approx(dual_forcing_norm(r))


def test_residual_includes_scaled_convection(make_field):
    u = make_field()
    f = DualField.zeros(GRID)
    r, _ = residual(u, f, OperatorParams(0.3, lam=0.4))
    expected = apply_L(u, OperatorParams(0.3)) + 0.4 * apply_S(u)
    np.testing.assert_allclose(r.coeffs, expected.coeffs, atol=1e-14)


def test_residual_grid_mismatch(make_field):
    with pytest.raises(GridMismatchError):
        residual(make_field(), DualField.zeros(GridSpec(K=2, M=8)), OperatorParams(1.0))
