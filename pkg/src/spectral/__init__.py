"""Spectral representation of fields on T x I and the operators acting on them."""

from .fields import Basis, DualField, Field, random_field, restrict
from .grid import GridSpec
from .operators import (
    dual_pairing,
    fractional_derivative,
    fractional_derivative_adjoint,
    hilbert_transform,
    l2_inner,
    l2_norm,
    pointwise_product,
    quadrature_inner,
    space_derivative,
    space_laplacian,
    square_dealiased,
)
from .stepping import IntegratingFactorStepper, cfl_number, default_steps_per_period
from .transforms import analyze, evaluate, synthesize

__all__ = [
    "Basis",
    "DualField",
    "Field",
    "GridSpec",
    "IntegratingFactorStepper",
    "analyze",
    "cfl_number",
    "default_steps_per_period",
    "dual_pairing",
    "evaluate",
    "fractional_derivative",
    "fractional_derivative_adjoint",
    "hilbert_transform",
    "l2_inner",
    "l2_norm",
    "pointwise_product",
    "quadrature_inner",
    "random_field",
    "restrict",
    "space_derivative",
    "space_laplacian",
    "square_dealiased",
    "synthesize",
]
