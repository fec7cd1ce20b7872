"""
Shared pytest configuration and fixtures for the test suite.

Provides small hand-checkable instances, potential constants and an
isolated settings environment for every test.
"""

import pytest

from online_mssc.core import Instance, Permutation
from online_mssc.dlm import AlgState
from online_mssc.potentials import PotentialParams


@pytest.fixture(scope="function", autouse=True)
def isolated_settings(monkeypatch, tmp_path):
    """Point every test at its own output directory and default settings."""
    for key in ("MSSC_LOG_LEVEL", "MSSC_CHECK_INVARIANTS", "MSSC_WORKERS"):
        monkeypatch.delenv(key, raising=False)
    monkeypatch.setenv("MSSC_OUTPUT_DIR", str(tmp_path / "runs"))
    monkeypatch.chdir(tmp_path)


def pytest_configure(config):
    """Configure pytest with custom markers."""
    config.addinivalue_line("markers", "unit: marks tests as unit tests (fast, isolated)")
    config.addinivalue_line(
        "markers", "integration: marks tests as integration tests (full pipelines)"
    )
    config.addinivalue_line("markers", "slow: marks tests as slow-running")


@pytest.fixture
def abc_state():
    """DLM on the list (a, b, c) with zero budgets."""
    return AlgState(Permutation.identity(3))


@pytest.fixture
def params_r1():
    return PotentialParams.for_r(1)


@pytest.fixture
def params_r2():
    return PotentialParams.for_r(2)


@pytest.fixture
def small_instance():
    """Five elements, mixed request sizes up to 3."""
    return Instance.build(
        [0, 1, 2, 3, 4],
        [[4], [3, 4], [2, 3, 4], [4], [1, 2], [0, 4], [3], [2, 4]],
        r=3,
    )
