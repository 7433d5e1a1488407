import pytest
from hypothesis import HealthCheck, settings

from helpers import make_matrix_a
from sparsefmt.matrix_core import CooMatrix

settings.register_profile(
    "sparsefmt", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("sparsefmt")


@pytest.fixture
def matrix_a() -> CooMatrix:
    return make_matrix_a()


# -- acceptance reporting ---------------------------------------------------

def pytest_configure(config):
    config._criteria_results = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is not None and report.when == "call":
        number, title = marker.args
        item.config._criteria_results.append((number, title, report.passed))


def pytest_terminal_summary(terminalreporter, config):
    results = getattr(config, "_criteria_results", [])
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, passed in sorted(results):
        terminalreporter.write_line(f"[{'PASS' if passed else 'FAIL'}] criterion {number}: {title}")
