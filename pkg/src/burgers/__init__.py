"""Weak-form Burgers operator T = L + S and the lambda-family."""

from .operator import (
    OperatorParams,
    apply_L,
    apply_L_inverse,
    apply_S,
    jacobian_apply,
    linear_symbol,
    residual,
)

__all__ = [
    "OperatorParams",
    "apply_L",
    "apply_L_inverse",
    "apply_S",
    "jacobian_apply",
    "linear_symbol",
    "residual",
]
