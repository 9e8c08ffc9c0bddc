import pytest

from embedlab.common.config import MAX_N0_ENV, MAX_N_ENV, VERBOSE_ENV
from embedlab.metric import build_n0_truncation, build_truncation


def pytest_configure(config):
    config.addinivalue_line(
        "markers", "slow: acceptance-scale runs (embedding search, large truncations)"
    )


@pytest.fixture(autouse=True)
def _clean_env(monkeypatch):
    """Tests start from the documented defaults regardless of the caller's shell."""
    monkeypatch.delenv(MAX_N_ENV, raising=False)
    monkeypatch.delenv(MAX_N0_ENV, raising=False)
    monkeypatch.delenv(VERBOSE_ENV, raising=False)


@pytest.fixture(scope="session")
def m3():
    return build_truncation(3)


@pytest.fixture(scope="session")
def m4():
    return build_truncation(4)


@pytest.fixture(scope="session")
def m5():
    return build_truncation(5)


@pytest.fixture(scope="session")
def n0_10():
    return build_n0_truncation(10)
