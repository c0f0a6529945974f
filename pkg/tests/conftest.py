"""Shared fixtures: small grids, seeded generators and report schema validation."""

import json
import sys
from pathlib import Path

import numpy as np
import pytest
from jsonschema import Draft202012Validator
from referencing import Registry, Resource

# Add the repository root to path
REPO_ROOT = Path(__file__).parent.parent
sys.path.insert(0, str(REPO_ROOT))

from src.spectral import Basis, GridSpec, random_field  # noqa: E402

SCHEMA_DIR = REPO_ROOT / 'configs' / 'schemas'


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: desk-scale runs (deselect with -m 'not slow')")


@pytest.fixture
def grid():
    return GridSpec(K=4, M=8)


@pytest.fixture
def oversampled_grid():
    return GridSpec(K=3, M=10, Nt=12, Nx=16)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def make_field(grid, rng):
    """Random real field on ``grid`` (sine family unless asked otherwise)."""
    def _make(basis=Basis.SINE, decay=2.0, on=None):
        return random_field(on or grid, rng, basis, decay=decay)
    return _make


def _registry():
    resources = []
    for path in sorted(SCHEMA_DIR.glob('*.schema.json')):
        schema = json.loads(path.read_text())
        resources.append((schema['$id'], Resource.from_contents(schema)))
    return Registry().with_resources(resources)


@pytest.fixture(scope='session')
def validate_report():
    """``validate_report(doc, 'report')`` checks ``doc`` against ``report.schema.json``."""
    registry = _registry()

    def _validate(doc, name):
        schema = json.loads((SCHEMA_DIR / f'{name}.schema.json').read_text())
        Draft202012Validator.check_schema(schema)
        Draft202012Validator(schema, registry=registry).validate(doc)

    return _validate
