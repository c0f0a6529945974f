"""
Run Configuration
=================

Loading and validation of run configuration files (YAML; JSON is accepted
since it is a subset). Every failure raises :class:`ConfigError` naming the
dotted path of the offending field, before any computation starts.
"""

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Mapping, Optional, Tuple, Union

import yaml

from ..solver.config import PREDICTORS, SolveConfig, uniform_lambdas
from ..spectral.grid import GridSpec
from ..spectral.stepping import SCHEMES
from ..utils.errors import ConfigError

logger = logging.getLogger(__name__)


# ============================================================================
# Forcing terms
# ============================================================================

@dataclass(frozen=True)
class ModalTerm:
    """``a * cos(2 pi k t + phase) * sin(m pi x)``."""

    a: float
    k: int
    m: int
    phase: float = 0.0

    kind = 'modal'

    def to_dict(self) -> dict:
        return {'kind': self.kind, 'a': self.a, 'k': self.k, 'm': self.m, 'phase': self.phase}


@dataclass(frozen=True)
class RoughTerm:
    """
    ``f = g_x`` with random cosine-family ``g`` decaying like ``(1+k^2+m^2)^(-p/2)``.

    ``a`` is the L^2 norm of ``g``; ``cutoff`` bounds ``max(|k|, m)``; the
    seed defaults to one derived from the run seed.
    """

    p: float
    a: float = 1.0
    seed: Optional[int] = None
    cutoff: Optional[int] = None

    kind = 'rough'

    def to_dict(self) -> dict:
        return {'kind': self.kind, 'p': self.p, 'a': self.a, 'seed': self.seed, 'cutoff': self.cutoff}


ForcingTerm = Union[ModalTerm, RoughTerm]


@dataclass(frozen=True)
class ForcingSpec:
    """Sum of modal and rough forcing terms (empty means ``f = 0``)."""

    terms: Tuple[ForcingTerm, ...] = ()
    name: Optional[str] = None

    @property
    def is_rough(self) -> bool:
        return any(isinstance(t, RoughTerm) for t in self.terms)

    def to_dict(self) -> dict:
        return {'name': self.name, 'terms': [t.to_dict() for t in self.terms]}


BENCHMARKS: Dict[str, ForcingSpec] = {
    'steady_sine': ForcingSpec((ModalTerm(a=1.0, k=0, m=1),), name='steady_sine'),
    'oscillatory': ForcingSpec((ModalTerm(a=1.0, k=1, m=1),), name='oscillatory'),
    'rough': ForcingSpec((RoughTerm(p=0.5, a=1.0),), name='rough'),
}


# ============================================================================
# Command options
# ============================================================================

@dataclass(frozen=True)
class VerifyOptions:
    n_samples: int = 200


@dataclass(frozen=True)
class ColeHopfOptions:
    drift_file: Optional[str] = None
    steps: Optional[int] = None
    tol: float = 1e-12
    max_iter: int = 200
    c: Optional[float] = None


# Oracle discrepancy thresholds for smooth forcings and for rough (H^-1) ones
ORACLE_THRESHOLD = 1e-6
ROUGH_ORACLE_THRESHOLD = 1e-4


@dataclass(frozen=True)
class OracleOptions:
    n_periods: int = 60
    steps_per_period: Optional[int] = None
    threshold: Optional[float] = None
    drift_tol: Optional[float] = 1e-12
    scheme: str = 'rk4'
    cfl_limit: float = 2.5

    def threshold_for(self, forcing: ForcingSpec) -> float:
        """Explicit threshold, else the default for smooth or rough forcing."""
        if self.threshold is not None:
            return self.threshold
        return ROUGH_ORACLE_THRESHOLD if forcing.is_rough else ORACLE_THRESHOLD


@dataclass(frozen=True)
class RunConfig:
    """
    Validated configuration of one run.

    Attributes
    ----------
    mu : float
        Viscosity.
    grid : GridSpec
        Discretization.
    forcing : ForcingSpec
        Forcing terms.
    solve : SolveConfig
        Newton / continuation settings.
    seed : int
        Root seed; component seeds are derived from it.
    output_dir : str
        Default output directory (``--out`` overrides).
    probe_samples : int
        Size of the interpolation probe run before solving.
    plot : bool
        Whether to write figures.
    """

    mu: float
    grid: GridSpec
    forcing: ForcingSpec = field(default_factory=ForcingSpec)
    solve: SolveConfig = field(default_factory=SolveConfig)
    seed: int = 0
    output_dir: str = 'results'
    probe_samples: int = 64
    verify: VerifyOptions = field(default_factory=VerifyOptions)
    colehopf: ColeHopfOptions = field(default_factory=ColeHopfOptions)
    oracle: OracleOptions = field(default_factory=OracleOptions)
    plot: bool = False
    base_dir: Path = field(default_factory=Path.cwd)

    def resolve_path(self, path: str) -> Path:
        """Path relative to the configuration file's directory."""
        p = Path(path)
        return p if p.is_absolute() else self.base_dir / p

    def summary(self) -> dict:
        """Configuration echo written into every report."""
        return {
            'mu': self.mu,
            'seed': self.seed,
            'grid': self.grid.to_dict(),
            'forcing': self.forcing.to_dict(),
        }


# ============================================================================
# Field parsing
# ============================================================================

def _join(path: str, key: str) -> str:
    return f"{path}.{key}" if path else key


def _section(raw: Mapping, key: str, path: str = '') -> Mapping:
    value = raw.get(key)
    if value is None:
        return {}
    if not isinstance(value, Mapping):
        raise ConfigError(_join(path, key), "must be a mapping")
    return value


def _check_keys(raw: Mapping, allowed, path: str) -> None:
    for key in raw:
        if key not in allowed:
            raise ConfigError(_join(path, str(key)), "unknown key")


def _coerce(value: Any, path: str) -> float:
    if isinstance(value, bool):
        raise ConfigError(path, f"must be a number, got {value!r}")
    try:
        # YAML reads exponent literals such as 1e-10 as strings
        return float(value)
    except (TypeError, ValueError):
        raise ConfigError(path, f"must be a number, got {value!r}") from None


def _number(raw: Mapping, key: str, path: str, default: Any = None, required: bool = False) -> Optional[float]:
    full = _join(path, key)
    if key not in raw or raw[key] is None:
        if required:
            raise ConfigError(full, "is required")
        return default
    return _coerce(raw[key], full)


def _integer(raw: Mapping, key: str, path: str, default: Any = None, required: bool = False) -> Optional[int]:
    value = _number(raw, key, path, default, required)
    if value is None:
        return None
    if float(value) != int(value):
        raise ConfigError(_join(path, key), f"must be an integer, got {raw[key]!r}")
    return int(value)


def _positive(value, path: str) -> None:
    if value is not None and not value > 0:
        raise ConfigError(path, f"must be > 0, got {value}")


def _choice(raw: Mapping, key: str, path: str, choices, default: str) -> str:
    value = raw.get(key, default)
    if value not in choices:
        raise ConfigError(_join(path, key), f"must be one of {list(choices)}, got {value!r}")
    return value


def _parse_grid(raw: Mapping) -> GridSpec:
    path = 'grid'
    _check_keys(raw, ('K', 'M', 'Nt', 'Nx', 'dealias'), path)
    K = _integer(raw, 'K', path, required=True)
    M = _integer(raw, 'M', path, required=True)
    Nt = _integer(raw, 'Nt', path)
    Nx = _integer(raw, 'Nx', path)
    dealias = _number(raw, 'dealias', path, 1.5)

    if K < 1:
        raise ConfigError('grid.K', f"must be >= 1, got {K}")
    if M < 1:
        raise ConfigError('grid.M', f"must be >= 1, got {M}")
    if Nt is not None and Nt < 2 * K + 1:
        raise ConfigError('grid.Nt', f"must be >= 2K+1 = {2 * K + 1}, got {Nt}")
    if Nx is not None and Nx < M + 1:
        raise ConfigError('grid.Nx', f"must be >= M+1 = {M + 1}, got {Nx}")
    if dealias < 1.5:
        raise ConfigError('grid.dealias', f"must be >= 1.5, got {dealias}")
    return GridSpec(K=K, M=M, Nt=Nt, Nx=Nx, dealias=dealias)


def _parse_term(raw: Any, path: str) -> ForcingTerm:
    if not isinstance(raw, Mapping):
        raise ConfigError(path, "must be a mapping")
    kind = raw.get('kind')
    if kind == 'modal':
        _check_keys(raw, ('kind', 'a', 'k', 'm', 'phase'), path)
        m = _integer(raw, 'm', path, required=True)
        if m < 1:
            raise ConfigError(_join(path, 'm'), f"must be >= 1, got {m}")
        return ModalTerm(
            a=_number(raw, 'a', path, required=True),
            k=_integer(raw, 'k', path, 0),
            m=m,
            phase=_number(raw, 'phase', path, 0.0),
        )
    if kind == 'rough':
        _check_keys(raw, ('kind', 'p', 'a', 'seed', 'cutoff'), path)
        p = _number(raw, 'p', path, required=True)
        if p < 0:
            raise ConfigError(_join(path, 'p'), f"must be >= 0, got {p}")
        a = _number(raw, 'a', path, 1.0)
        if a < 0:
            raise ConfigError(_join(path, 'a'), f"must be >= 0, got {a}")
        cutoff = _integer(raw, 'cutoff', path)
        if cutoff is not None and cutoff < 1:
            raise ConfigError(_join(path, 'cutoff'), f"must be >= 1, got {cutoff}")
        return RoughTerm(p=p, a=a, seed=_integer(raw, 'seed', path), cutoff=cutoff)
    raise ConfigError(_join(path, 'kind'), f"must be 'modal' or 'rough', got {kind!r}")


def _parse_forcing(raw: Mapping, grid: GridSpec) -> ForcingSpec:
    path = 'forcing'
    _check_keys(raw, ('benchmark', 'terms'), path)
    terms, name = [], None
    if 'benchmark' in raw:
        name = raw['benchmark']
        if name not in BENCHMARKS:
            raise ConfigError('forcing.benchmark', f"must be one of {sorted(BENCHMARKS)}, got {name!r}")
        terms.extend(BENCHMARKS[name].terms)

    extra = raw.get('terms') or []
    if not isinstance(extra, list):
        raise ConfigError('forcing.terms', "must be a list")
    for i, item in enumerate(extra):
        terms.append(_parse_term(item, f"forcing.terms[{i}]"))

    for i, term in enumerate(terms):
        if isinstance(term, ModalTerm) and (abs(term.k) > grid.K or term.m > grid.M):
            raise ConfigError(f"forcing.terms[{i}]",
                              f"mode (k={term.k}, m={term.m}) is outside the grid (K={grid.K}, M={grid.M})")
    return ForcingSpec(tuple(terms), name)


def _parse_solve(raw: Mapping) -> Tuple[SolveConfig, int]:
    path = 'solve'
    _check_keys(raw, ('newton_tol', 'max_newton', 'lambda_points', 'lambda_grid', 'krylov_tol',
                      'krylov_max', 'krylov_restarts', 'continuation', 'c_emp', 'probe_samples',
                      'bisect'), path)
    if 'lambda_grid' in raw and 'lambda_points' in raw:
        raise ConfigError('solve.lambda_grid', "give either lambda_grid or lambda_points, not both")
    if 'lambda_grid' in raw:
        values = raw['lambda_grid']
        if not isinstance(values, list) or not values:
            raise ConfigError('solve.lambda_grid', "must be a non-empty list")
        lambdas = tuple(_coerce(v, f'solve.lambda_grid[{i}]') for i, v in enumerate(values))
    else:
        n_points = _integer(raw, 'lambda_points', path, 21)
        if n_points < 2:
            raise ConfigError('solve.lambda_points', f"must be >= 2, got {n_points}")
        lambdas = uniform_lambdas(n_points)

    newton_tol = _number(raw, 'newton_tol', path, 1e-10)
    krylov_tol = _number(raw, 'krylov_tol', path, 1e-12)
    _positive(newton_tol, 'solve.newton_tol')
    _positive(krylov_tol, 'solve.krylov_tol')
    c_emp = _number(raw, 'c_emp', path)
    _positive(c_emp, 'solve.c_emp')
    probe_samples = _integer(raw, 'probe_samples', path, 64)
    if probe_samples < 0:
        raise ConfigError('solve.probe_samples', f"must be >= 0, got {probe_samples}")

    ints = {}
    for key, default in (('max_newton', 50), ('krylov_max', 200), ('krylov_restarts', 5)):
        ints[key] = _integer(raw, key, path, default)
        if ints[key] < 1:
            raise ConfigError(_join(path, key), f"must be >= 1, got {ints[key]}")

    continuation = _choice(raw, 'continuation', path, PREDICTORS, 'previous')
    try:
        cfg = SolveConfig(
            newton_tol=newton_tol,
            lambda_grid=lambdas,
            krylov_tol=krylov_tol,
            continuation=continuation,
            c_emp=c_emp,
            bisect=bool(raw.get('bisect', True)),
            **ints,
        )
    except ValueError as err:
        raise ConfigError('solve.lambda_grid', str(err)) from None
    return cfg, probe_samples


def _parse_colehopf(raw: Mapping, grid: GridSpec) -> ColeHopfOptions:
    path = 'colehopf'
    _check_keys(raw, ('drift_file', 'steps', 'tol', 'max_iter', 'c'), path)
    drift_file = raw.get('drift_file')
    if drift_file is not None and not isinstance(drift_file, str):
        raise ConfigError('colehopf.drift_file', "must be a path string")
    steps = _integer(raw, 'steps', path)
    if steps is not None and (steps < grid.n_time or steps % grid.n_time != 0):
        raise ConfigError('colehopf.steps', f"must be a positive multiple of Nt={grid.n_time}, got {steps}")
    tol = _number(raw, 'tol', path, 1e-12)
    _positive(tol, 'colehopf.tol')
    max_iter = _integer(raw, 'max_iter', path, 200)
    if max_iter < 2:
        raise ConfigError('colehopf.max_iter', f"must be >= 2, got {max_iter}")
    c = _number(raw, 'c', path)
    if c == 0:
        raise ConfigError('colehopf.c', "must be nonzero")
    return ColeHopfOptions(drift_file=drift_file, steps=steps, tol=tol, max_iter=max_iter, c=c)


def _parse_oracle(raw: Mapping, grid: GridSpec) -> OracleOptions:
    path = 'oracle'
    _check_keys(raw, ('n_periods', 'steps_per_period', 'threshold', 'drift_tol', 'scheme', 'cfl_limit'), path)
    n_periods = _integer(raw, 'n_periods', path, 60)
    if n_periods < 1:
        raise ConfigError('oracle.n_periods', f"must be >= 1, got {n_periods}")
    steps = _integer(raw, 'steps_per_period', path)
    if steps is not None and (steps < grid.n_time or steps % grid.n_time != 0):
        raise ConfigError('oracle.steps_per_period', f"must be a positive multiple of Nt={grid.n_time}, got {steps}")
    threshold = _number(raw, 'threshold', path)
    _positive(threshold, 'oracle.threshold')
    drift_tol = _number(raw, 'drift_tol', path, 1e-12)
    _positive(drift_tol, 'oracle.drift_tol')
    cfl_limit = _number(raw, 'cfl_limit', path, 2.5)
    _positive(cfl_limit, 'oracle.cfl_limit')
    return OracleOptions(
        n_periods=n_periods,
        steps_per_period=steps,
        threshold=threshold,
        drift_tol=drift_tol,
        scheme=_choice(raw, 'scheme', path, SCHEMES, 'rk4'),
        cfl_limit=cfl_limit,
    )


def parse_config(raw: Mapping, base_dir: Optional[Path] = None) -> RunConfig:
    """
    Validate a raw configuration mapping.

    Parameters
    ----------
    raw : Mapping
        Parsed YAML / JSON document.
    base_dir : Path, optional
        Directory relative paths are resolved against.

    Returns
    -------
    RunConfig
        Validated configuration.

    Raises
    ------
    ConfigError
        On the first invalid field, with its dotted path.
    """
    if not isinstance(raw, Mapping):
        raise ConfigError('config', "top level must be a mapping")
    _check_keys(raw, ('mu', 'seed', 'output_dir', 'grid', 'forcing', 'solve', 'verify',
                      'colehopf', 'oracle', 'plot'), '')

    mu = _number(raw, 'mu', '', required=True)
    _positive(mu, 'mu')
    seed = _integer(raw, 'seed', '', 0)
    if seed < 0:
        raise ConfigError('seed', f"must be >= 0, got {seed}")

    if 'grid' not in raw:
        raise ConfigError('grid', "is required")
    grid = _parse_grid(_section(raw, 'grid'))
    forcing = _parse_forcing(_section(raw, 'forcing'), grid)
    solve, probe_samples = _parse_solve(_section(raw, 'solve'))

    verify_raw = _section(raw, 'verify')
    _check_keys(verify_raw, ('n_samples',), 'verify')
    n_samples = _integer(verify_raw, 'n_samples', 'verify', 200)
    if n_samples < 1:
        raise ConfigError('verify.n_samples', f"must be >= 1, got {n_samples}")

    output_dir = raw.get('output_dir', 'results')
    if not isinstance(output_dir, str):
        raise ConfigError('output_dir', "must be a path string")
    plot = raw.get('plot', False)
    if not isinstance(plot, bool):
        raise ConfigError('plot', f"must be true or false, got {plot!r}")

    return RunConfig(
        mu=mu,
        grid=grid,
        forcing=forcing,
        solve=solve,
        seed=seed,
        output_dir=output_dir,
        probe_samples=probe_samples,
        verify=VerifyOptions(n_samples=n_samples),
        colehopf=_parse_colehopf(_section(raw, 'colehopf'), grid),
        oracle=_parse_oracle(_section(raw, 'oracle'), grid),
        plot=plot,
        base_dir=base_dir or Path.cwd(),
    )


def load_config(path: Union[str, Path]) -> RunConfig:
    """
    Load and validate a configuration file.

    Raises
    ------
    ConfigError
        If the file is missing, unparsable or invalid.
    """
    path = Path(path)
    if not path.exists():
        raise ConfigError('config', f"file not found: {path}")
    try:
        with open(path, 'r') as f:
            raw = yaml.safe_load(f)
    except yaml.YAMLError as err:
        raise ConfigError('config', f"cannot parse {path}: {err}") from None
    cfg = parse_config(raw or {}, base_dir=path.resolve().parent)
    logger.debug("Loaded configuration from %s", path)
    return cfg
