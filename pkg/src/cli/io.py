"""
Report and Field I/O
====================

Deterministic JSON reports and ``t,x,u`` CSV field dumps.
"""

import json
import logging
import math
from pathlib import Path
from typing import Any, Tuple, Union

import numpy as np
import pandas as pd

from ..spectral.fields import Basis, Field
from ..spectral.grid import GridSpec
from ..spectral.transforms import analyze, synthesize

logger = logging.getLogger(__name__)

CSV_COLUMNS = ['t', 'x', 'u']


def format_float(x: float) -> str:
    """17 significant digits, always with a decimal point or exponent."""
    text = format(x, '.17g')
    if not any(ch in text for ch in '.en'):
        text += '.0'
    return text


def _encode(obj: Any, indent: int, level: int) -> str:
    pad = ' ' * (indent * (level + 1))
    close = ' ' * (indent * level)

    if isinstance(obj, (bool, np.bool_)):
        return 'true' if obj else 'false'
    if obj is None:
        return 'null'
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        value = float(obj)
        return format_float(value) if math.isfinite(value) else 'null'
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, Path):
        return json.dumps(str(obj))
    if isinstance(obj, np.ndarray):
        obj = obj.tolist()
    if isinstance(obj, dict):
        if not obj:
            return '{}'
        items = [f"{pad}{json.dumps(str(k))}: {_encode(v, indent, level + 1)}" for k, v in obj.items()]
        return '{\n' + ',\n'.join(items) + '\n' + close + '}'
    if isinstance(obj, (list, tuple)):
        if not obj:
            return '[]'
        items = [f"{pad}{_encode(v, indent, level + 1)}" for v in obj]
        return '[\n' + ',\n'.join(items) + '\n' + close + ']'
    raise TypeError(f"Object of type {type(obj).__name__} is not JSON serializable")


def dumps(obj: Any, indent: int = 2) -> str:
    """
    Serialize to JSON text deterministically.

    Keys keep insertion order, floats use 17 significant digits and
    non-finite floats become ``null``.
    """
    return _encode(obj, indent, 0) + '\n'


def write_json(obj: Any, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps(obj))
    logger.info("Wrote %s", path)
    return path


def read_json(path: Union[str, Path]) -> Any:
    with open(path, 'r') as f:
        return json.load(f)


def field_frame(u: Field) -> pd.DataFrame:
    """Samples of ``u`` on its quadrature grid as a ``t,x,u`` table (t outer)."""
    grid = u.grid
    t = grid.time_points()
    x = grid.space_points()
    values = synthesize(u)
    return pd.DataFrame({
        't': np.repeat(t, x.size),
        'x': np.tile(x, t.size),
        'u': values.ravel(),
    }, columns=CSV_COLUMNS)


def write_field_csv(u: Field, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    field_frame(u).to_csv(path, index=False, float_format='%.17g')
    logger.info("Wrote %s", path)
    return path


def read_field_samples(path: Union[str, Path]) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Read a ``t,x,u`` CSV.

    Returns
    -------
    Tuple[np.ndarray, np.ndarray, np.ndarray]
        Time nodes, space nodes and the ``(Nt, Nx)`` sample array.

    Raises
    ------
    FileNotFoundError
        If the file does not exist.
    ValueError
        If the columns or the layout are wrong.
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Field file not found: {path}")
    df = pd.read_csv(path)
    if list(df.columns) != CSV_COLUMNS:
        raise ValueError(f"{path}: expected columns {CSV_COLUMNS}, got {list(df.columns)}")

    t = pd.unique(df['t'].to_numpy())
    x = pd.unique(df['x'].to_numpy())
    if len(df) != t.size * x.size:
        raise ValueError(f"{path}: {len(df)} rows do not form a {t.size} x {x.size} grid")
    return t, x, df['u'].to_numpy().reshape(t.size, x.size)


def read_field_csv(path: Union[str, Path], grid: GridSpec, basis: Basis = Basis.SINE) -> Field:
    """Load a field dumped by :func:`write_field_csv` on the same grid."""
    t, x, values = read_field_samples(path)
    if values.shape != grid.shape:
        raise ValueError(f"{path}: sample grid {values.shape} does not match configured grid {grid.shape}")
    if not (np.allclose(t, grid.time_points()) and np.allclose(x, grid.space_points())):
        raise ValueError(f"{path}: sample nodes are not the quadrature nodes of the configured grid")
    return analyze(values, grid, basis)
