"""Tests for Sobolev norms, the dual norm and the interpolation / embedding probes."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from src.sobolev import (
    dual_forcing_norm,
    dual_supremizer,
    embedding_chain_check,
    embedding_ensemble,
    gradient_norm,
    h_norm,
    half_derivative_norm,
    holder_interpolation_check,
    interpolation_probe,
    interpolation_ratio,
    l4_norm,
    norm_report,
    sobolev_time_norm,
    square_norm,
)
from src.spectral import Basis, DualField, Field, GridSpec, random_field
from src.spectral.operators import dual_pairing, fractional_derivative, l2_norm, space_derivative, square_dealiased
from src.utils.helpers import make_rng

GRID = GridSpec(K=4, M=8)
seeds = st.integers(min_value=0, max_value=2 ** 32 - 1)


def _field(seed, decay=1.5):
    return random_field(GRID, make_rng(seed), decay=decay)


def test_time_norm_order_zero_is_l2(make_field):
    u = make_field()
    assert sobolev_time_norm(u, 0) == pytest.approx(l2_norm(u))


def test_time_norm_of_first_harmonic():
    u = Field.from_modes(GRID, {(1, 2): 0.3, (-1, 5): 0.1j})
    assert sobolev_time_norm(u, 1) == pytest.approx(np.sqrt(2) * l2_norm(u))


def test_seminorms_match_operators(make_field):
    u = make_field()
    assert half_derivative_norm(u) == pytest.approx(l2_norm(fractional_derivative(u, 0.5)))
    assert gradient_norm(u) == pytest.approx(l2_norm(space_derivative(u)))
    expected = np.sqrt(l2_norm(u) ** 2 + half_derivative_norm(u) ** 2 + gradient_norm(u) ** 2)
    assert h_norm(u) == pytest.approx(expected)


def test_h_norm_requires_sine_family(make_field):
    with pytest.raises(ValueError):
        h_norm(make_field(Basis.COSINE))


def test_l4_norm_of_steady_sine():
    # int_0^1 sin(pi x)^4 dx = 3/8
    u = Field.from_modes(GRID, {(0, 1): 1 / np.sqrt(2)})
    assert l4_norm(u) == pytest.approx((3 / 8) ** 0.25, rel=1e-13)
    assert square_norm(u) == pytest.approx(np.sqrt(3 / 8), rel=1e-13)


def test_square_norm_bounds_truncated_square(make_field):
    u = make_field()
    assert l2_norm(square_dealiased(u)) <= square_norm(u) * (1 + 1e-12)


@given(seed=seeds)
@settings(max_examples=30, deadline=None)
def test_dual_norm_bounds_every_pairing(seed):
    f = DualField.from_field(_field(seed, decay=0.5))
    v = _field(seed + 1)
    assert abs(dual_pairing(f, v)) <= dual_forcing_norm(f) * gradient_norm(v) * (1 + 1e-12)


@given(seed=seeds)
@settings(max_examples=30, deadline=None)
def test_dual_supremizer_attains_norm(seed):
    f = DualField.from_field(_field(seed, decay=0.5))
    v = dual_supremizer(f)
    assert dual_pairing(f, v) == pytest.approx(dual_forcing_norm(f) * gradient_norm(v), rel=1e-12)


def test_dual_norm_of_zero_forcing():
    assert dual_forcing_norm(DualField.zeros(GRID)) == 0.0


@given(seed=seeds, decay=st.floats(0.0, 3.0))
@settings(max_examples=50, deadline=None)
def test_holder_interpolation_holds(seed, decay):
    lhs, rhs = holder_interpolation_check(_field(seed, decay))
    assert lhs <= rhs * (1 + 1e-10) + 1e-300


def test_interpolation_ratio_of_zero_is_none():
    assert interpolation_ratio(Field.zeros(GRID)) is None


def test_interpolation_probe_is_seeded():
    first = interpolation_probe(16, GRID, seed=5)
    second = interpolation_probe(16, GRID, seed=5)
    assert first.c_emp == second.c_emp
    assert first.ratios == second.ratios
    assert first.c_emp > 0
    assert first.c_emp == max(first.ratios)
    assert interpolation_probe(16, GRID, seed=6).c_emp != first.c_emp


def test_interpolation_probe_skips_degenerate_fields():
    result = interpolation_probe(4, GRID, seed=0, extra_fields=[Field.zeros(GRID)])
    assert result.n_skipped == 1
    assert len(result.ratios) == 4
    assert result.to_dict() == {'c_emp': result.c_emp, 'n_used': 4, 'n_skipped': 1}


def test_interpolation_probe_rejects_empty_ensemble():
    with pytest.raises(ValueError):
        interpolation_probe(0, GRID, seed=0)


def test_interpolation_probe_stable_under_refinement():
    window = (GRID.K, GRID.M)
    coarse = interpolation_probe(32, GRID, seed=3, window=window)
    fine = interpolation_probe(32, GRID.refined(), seed=3, window=window)
    assert fine.c_emp == pytest.approx(coarse.c_emp, rel=0.05)


def test_embedding_chain():
    u = _field(11)
    chain = embedding_chain_check(u)
    assert chain.l4 == pytest.approx(l4_norm(u))
    assert chain.h == pytest.approx(h_norm(u))
    assert all(r > 0 for r in chain.ratios)
    assert embedding_chain_check(Field.zeros(GRID)).ratios == (0.0, 0.0)

    worst_l4, worst_h = embedding_ensemble(8, GRID, seed=1)
    assert worst_l4 > 0 and worst_h > 0


def test_norm_report(make_field):
    u = make_field()
    f = DualField.from_field(make_field())
    report = norm_report(u, f).to_dict()
    assert list(report) == ['l2', 'hs_time', 'hx', 'h_space_time', 'l4', 'dual_fnorm']
    assert list(report['hs_time']) == ['0.25', '0.5', '1']
    assert report['hs_time']['0.5'] == pytest.approx(half_derivative_norm(u))
    assert report['dual_fnorm'] == pytest.approx(dual_forcing_norm(f))
    assert 'dual_fnorm' not in norm_report(u).to_dict()
