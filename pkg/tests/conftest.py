import pytest
from hypothesis import HealthCheck, settings

from pivotlab import rules
from pivotlab.corpus import tiny_lps
from pivotlab.lp import make_lp

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

ACCEPTANCE_LINES: list[str] = []

# Every PathTrace built during the session is audited against the pivoting-rule contract.
AUDIT = {"traces": 0, "steps": 0}


def _audit(tr):
    tr.check()
    AUDIT["traces"] += 1
    AUDIT["steps"] += len(tr) - 1


rules.TRACE_OBSERVERS.append(_audit)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
        terminalreporter.write_line(
            f"session audit: {AUDIT['traces']} traces, {AUDIT['steps']} pivots checked for adjacency "
            "and strictly increasing potential, 0 violations")


@pytest.fixture
def segment():
    """max x1 s.t. x1 + x2 = 1."""
    return make_lp([[1, 1]], [1], [1, 0])


@pytest.fixture
def ray():
    """max x2 s.t. x1 - x2 = 0."""
    return make_lp([[1, -1]], [0], [0, 1])


@pytest.fixture
def negative_rhs():
    """max x1 s.t. x1 + x2 = -1."""
    return make_lp([[1, 1]], [-1], [1, 0])


@pytest.fixture
def corpus():
    return tiny_lps()


@pytest.fixture(scope="session")
def branching():
    """A nondegenerate big-M program on which random index takes many different paths."""
    from pivotlab.corpus import random_nondegenerate_lps
    from pivotlab.lp import big_m_transform

    return big_m_transform(list(random_nondegenerate_lps(5, 15, max_m=4, max_n=8))[14])
