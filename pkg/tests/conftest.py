"""Shared pytest configuration and fixtures."""

import numpy as np
import pytest


@pytest.fixture(autouse=True)
def _dimensionless_units(monkeypatch):
    """Pin hbar = mu = 1 regardless of the environment or a local .env."""
    from geomomentum import settings

    monkeypatch.setattr(settings, "HBAR", 1.0)
    monkeypatch.setattr(settings, "MASS", 1.0)
    yield


@pytest.fixture
def rng():
    return np.random.default_rng(20260212)


def pytest_addoption(parser):
    parser.addoption(
        "--run-slow",
        action="store_true",
        default=False,
        help="Run the long verification tests",
    )


def pytest_collection_modifyitems(config, items):
    if not config.getoption("--run-slow"):
        skip_slow = pytest.mark.skip(reason="needs --run-slow option to run")
        for item in items:
            if "slow" in item.keywords:
                item.add_marker(skip_slow)
