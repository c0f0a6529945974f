"""Sobolev norms and numerical probes of the interpolation and embedding inequalities."""

from .norms import (
    NormReport,
    anisotropic_norm,
    dual_forcing_norm,
    dual_supremizer,
    gradient_norm,
    h_norm,
    half_derivative_norm,
    l4_norm,
    norm_report,
    sobolev_time_norm,
    square_norm,
)
from .probes import (
    EmbeddingChain,
    ProbeResult,
    embedding_chain_check,
    embedding_ensemble,
    holder_interpolation_check,
    interpolation_probe,
    interpolation_ratio,
)

__all__ = [
    "EmbeddingChain",
    "NormReport",
    "ProbeResult",
    "anisotropic_norm",
    "dual_forcing_norm",
    "dual_supremizer",
    "embedding_chain_check",
    "embedding_ensemble",
    "gradient_norm",
    "h_norm",
    "half_derivative_norm",
    "holder_interpolation_check",
    "interpolation_probe",
    "interpolation_ratio",
    "l4_norm",
    "norm_report",
    "sobolev_time_norm",
    "square_norm",
]
