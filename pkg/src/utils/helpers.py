"""
Helper Utilities
================

Quadrature nodes and reproducible seeding shared across the toolkit.
"""

import hashlib
from typing import Union

import numpy as np


def time_nodes(n_samples: int) -> np.ndarray:
    """
    Uniform nodes on the unit time torus.

    Parameters
    ----------
    n_samples : int
        Number of time points.

    Returns
    -------
    np.ndarray
        ``t_j = j / n_samples`` for ``j = 0..n_samples-1``.
    """
    return np.arange(n_samples) / n_samples


def midpoint_nodes(n_samples: int) -> np.ndarray:
    """
    Midpoint nodes on the unit interval.

    These are the DST-II / DCT-II sample points, so the sine and cosine
    families are analyzed exactly on them.

    Parameters
    ----------
    n_samples : int
        Number of space points.

    Returns
    -------
    np.ndarray
        ``x_j = (j + 1/2) / n_samples``.
    """
    return (np.arange(n_samples) + 0.5) / n_samples


def derive_seed(root: int, name: str) -> int:
    """
    Derive a component seed from the root seed and a component name.

    The derivation is a fixed hash, so results do not depend on the order in
    which components draw random numbers.

    Parameters
    ----------
    root : int
        Root seed of the run.
    name : str
        Component name, e.g. ``'verify.composition'``.

    Returns
    -------
    int
        A 63-bit seed.
    """
    digest = hashlib.sha256(f"{int(root)}:{name}".encode('utf-8')).digest()
    return int.from_bytes(digest[:8], 'big') >> 1


def make_rng(seed: Union[int, np.random.SeedSequence], *index: int) -> np.random.Generator:
    """
    Generator for ``seed``, or for the sub-stream keyed by ``index``.

    ``make_rng(s, i)`` is the ``i``-th sample stream; ``make_rng(s, k, m)``
    keys a stream by a mode, so a per-mode draw does not depend on how many
    other modes are drawn.
    """
    if not index:
        return np.random.default_rng(seed)
    return np.random.default_rng(np.random.SeedSequence([int(seed), *(int(i) for i in index)]))
