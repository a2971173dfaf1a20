import pytest
from hypothesis import HealthCheck, settings

from linkgrowth.linkio import builtin_link, wirtinger

settings.register_profile("ci", derandomize=True, deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("ci")

KNOTS = ("trefoil", "figure8")
LINKS2 = ("hopf", "L5a1", "L6a1", "L6a2")


@pytest.fixture(scope="session")
def pres():
    cache = {}

    def get(name):
        if name not in cache:
            cache[name] = wirtinger(builtin_link(name))
        return cache[name]
    return get


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
