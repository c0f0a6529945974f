"""Run configuration, forcing construction, report I/O and the batch commands."""

from .commands import (
    COMMANDS,
    EXIT_CODES,
    cmd_colehopf,
    cmd_oracle_compare,
    cmd_solve,
    cmd_sweep,
    cmd_verify,
    run_command,
)
from .config import BENCHMARKS, ForcingSpec, ModalTerm, RoughTerm, RunConfig, load_config, parse_config
from .forcing import build_forcing, forcing_diagnostics
from .io import dumps, read_field_csv, write_field_csv, write_json
from .verification import CHECKS, InvariantResult, run_invariants

__all__ = [
    "BENCHMARKS",
    "CHECKS",
    "COMMANDS",
    "EXIT_CODES",
    "ForcingSpec",
    "InvariantResult",
    "ModalTerm",
    "RoughTerm",
    "RunConfig",
    "build_forcing",
    "cmd_colehopf",
    "cmd_oracle_compare",
    "cmd_solve",
    "cmd_sweep",
    "cmd_verify",
    "dumps",
    "forcing_diagnostics",
    "load_config",
    "parse_config",
    "read_field_csv",
    "run_command",
    "run_invariants",
    "write_field_csv",
    "write_json",
]
