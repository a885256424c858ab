from __future__ import annotations

import pytest
from hypothesis import HealthCheck, settings

from detachkit.catalog import default_catalog

settings.register_profile(
    "detachkit",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("detachkit")

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def catalog():
    return default_catalog()


@pytest.fixture(scope="session")
def small_catalog(catalog):
    """Catalog matroids with at most 8 elements; enough for brute-force oracles."""
    return catalog.select(max_n=8)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
