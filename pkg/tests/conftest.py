import math
import sys

import numpy as np
import pytest

from recoilslit import DEFAULT_GEOMETRY, DEFAULT_GRID, FAR_FIELD_GEOMETRY, GridSpec, auto_grid

SQRT_HALF = 1.0 / math.sqrt(2.0)


@pytest.fixture
def rng():
    return np.random.default_rng(20121015)


@pytest.fixture
def geom():
    return DEFAULT_GEOMETRY


@pytest.fixture
def grid():
    return DEFAULT_GRID


@pytest.fixture
def far():
    """Envelope much wider than a fringe (sigma_t ~ 8 w)."""
    return FAR_FIELD_GEOMETRY


@pytest.fixture
def far_grid(far):
    return auto_grid(far)


@pytest.fixture
def fine_far_grid():
    return GridSpec(5120.0, 16384)


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(module.RESULTS):
        terminalreporter.write_line(module.RESULTS[number])
