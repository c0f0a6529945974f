"""
Commands
========

Batch commands of the Burgers laboratory. Each command takes a validated
:class:`RunConfig` and an output directory, writes its reports and returns
a process exit code (see :data:`EXIT_CODES`).
"""

import logging
from pathlib import Path
from typing import Callable, Dict, Optional, Tuple

import numpy as np

from ..cole_hopf.ground_state import ground_state
from ..cole_hopf.transform import default_scale, inverse_transform
from ..sobolev.norms import norm_report
from ..sobolev.probes import embedding_ensemble, interpolation_probe
from ..solver.config import SolveConfig
from ..solver.newton import continuation_solve
from ..solver.oracle import imex_oracle
from ..solver.reports import Branch
from ..spectral.fields import DualField, Field
from ..spectral.operators import l2_norm
from ..utils.errors import (
    ConfigError,
    ContinuationError,
    EstimateViolationError,
    LinearSolveError,
    NonConvergenceError,
    OracleInstabilityError,
)
from ..utils.helpers import derive_seed
from .config import RunConfig
from .forcing import build_forcing, forcing_diagnostics
from .io import read_field_csv, write_field_csv, write_json
from .verification import run_invariants

logger = logging.getLogger(__name__)

EXIT_CODES = {
    'ok': 0,
    'invariant_failure': 1,
    'config_error': 2,
    'nonconvergence': 3,
    'certificate_failure': 4,
    'oracle_instability': 5,
}


# ============================================================================
# Shared steps
# ============================================================================

def _header(command: str, cfg: RunConfig, f: Optional[DualField] = None) -> dict:
    out = {'command': command, 'config': cfg.summary()}
    if f is not None:
        out['forcing_diagnostics'] = forcing_diagnostics(f)
    return out


def _solve_config(cfg: RunConfig) -> SolveConfig:
    """Solver settings with ``c_emp`` filled in by a probe when not configured."""
    if cfg.solve.c_emp is not None or cfg.probe_samples == 0:
        return cfg.solve
    probe = interpolation_probe(cfg.probe_samples, cfg.grid, derive_seed(cfg.seed, 'solve.probe'))
    return cfg.solve.with_c_emp(probe.c_emp)


def _plot(cfg: RunConfig, out_dir: Path, u: Optional[Field] = None, branch: Optional[Branch] = None) -> None:
    if not cfg.plot:
        return
    from ..visualization.fields import FieldVisualizer

    viz = FieldVisualizer()
    if u is not None:
        viz.save(viz.plot_field(u), out_dir / 'solution.png')
    if branch is not None and len(branch):
        viz.save(viz.plot_branch(branch), out_dir / 'branch.png')


def _endpoint(cfg: RunConfig, f: DualField) -> Tuple[Branch, SolveConfig]:
    solve_cfg = _solve_config(cfg)
    return continuation_solve(f, cfg.mu, solve_cfg), solve_cfg


# ============================================================================
# Commands
# ============================================================================

def cmd_solve(cfg: RunConfig, out_dir: Path) -> int:
    """Solve at lambda = 1; writes ``solution.csv`` and ``report.json``."""
    f = build_forcing(cfg.forcing, cfg.grid, cfg.seed)
    branch, solve_cfg = _endpoint(cfg, f)
    entry = branch.last

    write_field_csv(entry.u, out_dir / 'solution.csv')
    report = _header('solve', cfg, f)
    report.update({
        'c_emp': solve_cfg.c_emp,
        'report': entry.report.to_dict(),
        'norms': norm_report(entry.u, f).to_dict(),
    })
    write_json(report, out_dir / 'report.json')
    _plot(cfg, out_dir, u=entry.u)
    return EXIT_CODES['ok']


def _write_branch(cfg: RunConfig, f: DualField, branch: Branch, c_emp, out_dir: Path,
                  error: Optional[str] = None) -> None:
    out = _header('sweep', cfg, f)
    out.update({
        'completed': error is None,
        'error': error,
        'c_emp': c_emp,
        'sup_h_norm': branch.sup_h_norm,
        'branch': branch.to_dict(),
    })
    write_json(out, out_dir / 'branch.json')
    branch.to_frame().to_csv(out_dir / 'branch.csv', index=False, float_format='%.17g')


def cmd_sweep(cfg: RunConfig, out_dir: Path) -> int:
    """
    Full lambda-sweep; writes ``branch.json`` and ``branch.csv``.

    A sweep that stops early still writes the partial branch and returns
    the nonconvergence code.
    """
    f = build_forcing(cfg.forcing, cfg.grid, cfg.seed)
    solve_cfg = _solve_config(cfg)
    out_dir.mkdir(parents=True, exist_ok=True)
    try:
        branch = continuation_solve(f, cfg.mu, solve_cfg, show_progress=False)
    except ContinuationError as err:
        logger.error("Sweep stopped: %s", err)
        _write_branch(cfg, f, err.branch, solve_cfg.c_emp, out_dir, error=str(err))
        return EXIT_CODES['nonconvergence']

    _write_branch(cfg, f, branch, solve_cfg.c_emp, out_dir)
    _plot(cfg, out_dir, u=branch.last.u, branch=branch)
    return EXIT_CODES['ok']


def cmd_verify(cfg: RunConfig, out_dir: Path) -> int:
    """Invariant suites over seeded ensembles; writes ``verify.json``."""
    n = cfg.verify.n_samples
    results = run_invariants(cfg.grid, n, cfg.seed, mu=cfg.mu)
    probe = interpolation_probe(n, cfg.grid, derive_seed(cfg.seed, 'verify.interpolation_probe'))
    worst_l4, worst_h = embedding_ensemble(n, cfg.grid, derive_seed(cfg.seed, 'verify.embedding'))

    all_passed = all(r.passed for r in results)
    out = {
        'command': 'verify',
        'seed': cfg.seed,
        'grid': cfg.grid.to_dict(),
        'n_samples': n,
        'all_passed': all_passed,
        'invariants': [r.to_dict() for r in results],
        'probes': {
            'interpolation': probe.to_dict(),
            'embedding': {'l4_over_h_third': worst_l4, 'h_third_over_h': worst_h},
        },
    }
    write_json(out, out_dir / 'verify.json')
    return EXIT_CODES['ok'] if all_passed else EXIT_CODES['invariant_failure']


def cmd_colehopf(cfg: RunConfig, out_dir: Path) -> int:
    """
    Ground-state certificate for a drift; writes ``groundstate.json`` and ``phi.csv``.

    The drift is read from ``colehopf.drift_file`` (a ``t,x,u`` CSV on the
    configured grid) or obtained by solving the configured forcing first.
    """
    opts = cfg.colehopf
    if opts.drift_file is not None:
        path = cfg.resolve_path(opts.drift_file)
        try:
            v = read_field_csv(path, cfg.grid)
        except (FileNotFoundError, ValueError) as err:
            raise ConfigError('colehopf.drift_file', str(err)) from None
        source, f = str(opts.drift_file), None
    else:
        f = build_forcing(cfg.forcing, cfg.grid, cfg.seed)
        branch, _ = _endpoint(cfg, f)
        v, source = branch.last.u, 'solve'

    gs = ground_state(v, cfg.mu, tol=opts.tol, steps=opts.steps, max_iter=opts.max_iter)
    c = default_scale(cfg.mu) if opts.c is None else opts.c
    recovered = inverse_transform(gs.phi, c) if gs.certificate.phi_positive else None

    out = _header('colehopf', cfg, f)
    out.update({
        'source': source,
        'scale_c': c,
        'drift_norm': l2_norm(v),
        'inverse_transform_norm': None if recovered is None else l2_norm(recovered),
    })
    out.update(gs.to_dict())
    write_json(out, out_dir / 'groundstate.json')
    write_field_csv(gs.phi, out_dir / 'phi.csv')

    if not gs.certificate.holds:
        logger.warning("Certificate failed: %s", gs.certificate.residuals)
        return EXIT_CODES['certificate_failure']
    return EXIT_CODES['ok']


def cmd_oracle_compare(cfg: RunConfig, out_dir: Path) -> int:
    """Continuation endpoint against the time-stepping attractor; writes ``compare.json``."""
    f = build_forcing(cfg.forcing, cfg.grid, cfg.seed)
    branch, _ = _endpoint(cfg, f)
    u = branch.last.u

    opts = cfg.oracle
    result = imex_oracle(
        f, cfg.mu,
        n_periods=opts.n_periods,
        steps_per_period=opts.steps_per_period,
        scheme=opts.scheme,
        drift_tol=opts.drift_tol,
        cfl_limit=opts.cfl_limit,
    )
    error = np.abs(u.coeffs - result.field.coeffs) ** 2
    discrepancy = float(np.sqrt(error.sum()))
    threshold = opts.threshold_for(cfg.forcing)
    passed = discrepancy < threshold

    out = _header('oracle-compare', cfg, f)
    out.update({
        'discrepancy': discrepancy,
        'threshold': threshold,
        'passed': passed,
        'mode_error': {
            'space': np.sqrt(error.sum(axis=0)).tolist(),
            'time': np.sqrt(error.sum(axis=1)).tolist(),
        },
        'oracle': dict(result.to_dict(), scheme=opts.scheme),
    })
    write_json(out, out_dir / 'compare.json')
    logger.info("Oracle discrepancy %.3e (threshold %.1e)", discrepancy, threshold)
    return EXIT_CODES['ok'] if passed else EXIT_CODES['invariant_failure']


COMMANDS: Dict[str, Callable[[RunConfig, Path], int]] = {
    'solve': cmd_solve,
    'sweep': cmd_sweep,
    'verify': cmd_verify,
    'colehopf': cmd_colehopf,
    'oracle-compare': cmd_oracle_compare,
}


def run_command(name: str, cfg: RunConfig, out_dir: Path) -> int:
    """
    Run a command and map failures onto exit codes.

    Failures other than an incomplete sweep write ``error.json`` with the
    diagnostic into ``out_dir``.
    """
    if name not in COMMANDS:
        raise ValueError(f"Unknown command: {name}. Use one of {list(COMMANDS)}.")
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    try:
        return COMMANDS[name](cfg, out_dir)
    except ConfigError as err:
        return _fail(name, out_dir, err, EXIT_CODES['config_error'], {'path': err.path})
    except EstimateViolationError as err:
        report = err.report.to_dict() if err.report is not None else None
        return _fail(name, out_dir, err, EXIT_CODES['invariant_failure'], {'report': report})
    except OracleInstabilityError as err:
        return _fail(name, out_dir, err, EXIT_CODES['oracle_instability'], {'cfl': err.cfl})
    except (NonConvergenceError, LinearSolveError) as err:
        history = getattr(err, 'history', [])
        return _fail(name, out_dir, err, EXIT_CODES['nonconvergence'], {'history': history})


def _fail(name: str, out_dir: Path, err: Exception, code: int, diagnostic: dict) -> int:
    logger.error("%s failed (exit %d): %s", name, code, err)
    write_json({'command': name, 'exit_code': code, 'error': str(err),
                'type': type(err).__name__, 'diagnostic': diagnostic}, out_dir / 'error.json')
    return code
