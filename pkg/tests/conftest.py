"""
Pytest configuration for pydq-lyapunov tests.

Randomized matrices come from a seeded generator so failures reproduce.
Long randomized sweeps are marked ``slow`` and need ``--runslow``.
"""

import numpy as np
import pytest

from pydq_lyapunov.config import configure


def pytest_configure(config):
    """Add custom markers."""
    config.addinivalue_line("markers", "slow: marks tests as slow (randomized sweeps, large grids)")


def pytest_collection_modifyitems(config, items):
    """Skip slow tests unless --runslow is passed."""
    if config.getoption("--runslow", default=False):
        return

    skip_slow = pytest.mark.skip(reason="need --runslow option to run")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


def pytest_addoption(parser):
    """Add command line options."""
    parser.addoption("--runslow", action="store_true", default=False, help="run slow tests")


@pytest.fixture(autouse=True)
def _reset_settings():
    """Reset settings to defaults around each test."""
    configure()
    yield
    configure()


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


def random_stable(rng, n: int, shift: float = 0.0) -> np.ndarray:
    """Random n x n matrix with eigenvalues moved right by ``n + shift``.

    Two such matrices G, R give a well-posed GX + XR = Q.
    """
    return rng.standard_normal((n, n)) + (n + shift) * np.eye(n)
