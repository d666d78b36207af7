import math

import hypothesis
import pytest

from prophetlab.distributions import Exponential, Pareto, ReverseWeibullWitness, Uniform

hypothesis.settings.register_profile("default", deadline=None, max_examples=60)
hypothesis.settings.register_profile("fast", deadline=None, max_examples=10)
hypothesis.settings.load_profile("default")


def catalog():
    return [
        Uniform(),
        Exponential(1.0),
        Exponential(2.5),
        Pareto(2.0),
        Pareto(3.0),
        ReverseWeibullWitness(-1.0),
        ReverseWeibullWitness(-2.0),
        ReverseWeibullWitness(-0.5),
    ]


@pytest.fixture(params=catalog(), ids=lambda d: d.spec)
def dist(request):
    return request.param


def rel_close(a, b, tol):
    return abs(a - b) <= tol * max(abs(a), abs(b), 1e-300)


@pytest.fixture
def close():
    return rel_close


_ACCEPTANCE_KEY = pytest.StashKey[list]()


@pytest.fixture
def acceptance_log(request):
    """Collects one PASS/FAIL line per acceptance criterion for the run summary."""
    return request.config.stash.setdefault(_ACCEPTANCE_KEY, [])


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_ACCEPTANCE_KEY, [])
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(lines, key=lambda s: int(s.split()[1].rstrip(":"))):
        terminalreporter.write_line(line)
