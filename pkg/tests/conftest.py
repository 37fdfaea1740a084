import math

import numpy as np
import pytest

DELTAS = [0.1, 0.01, math.sqrt(7 / 20)]


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def theta_grid():
    return np.linspace(0.0, 2.0 * np.pi, 4096, endpoint=False)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
