import numpy as np
import pytest

from steinfrechet import catalog


@pytest.fixture
def pareto2():
    return catalog("pareto", alpha=2.0)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance")
    for line in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(line)
