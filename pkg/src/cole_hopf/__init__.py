"""Cole-Hopf transformation and the ground-state eigenvalue certificate."""

from .ground_state import (
    Certificate,
    GroundState,
    ground_state,
    neumann_residual,
    pde_residual,
    period_map,
    second_eigenvalue,
)
from .transform import antiderivative_x, default_scale, hopf_transform, inverse_transform, potential_factor

__all__ = [
    "Certificate",
    "GroundState",
    "antiderivative_x",
    "default_scale",
    "ground_state",
    "hopf_transform",
    "inverse_transform",
    "neumann_residual",
    "pde_residual",
    "period_map",
    "potential_factor",
    "second_eigenvalue",
]
