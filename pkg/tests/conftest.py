import functools

import pytest

from dti.core import validate_ring
from dti.testideal import compute_test_ideal


@functools.lru_cache(maxsize=None)
def report_for(p, d, n):
    return compute_test_ideal(validate_ring(p, d, n))


@pytest.fixture
def report():
    return report_for


@pytest.fixture(autouse=True)
def _isolated_cache(tmp_path, monkeypatch):
    monkeypatch.setenv("DTI_CACHE_DIR", str(tmp_path / "cache"))


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
