import os
import sys
import warnings

import numpy as np
import pytest

sys.path.insert(0, os.path.dirname(__file__))

import whichpath
from whichpath.experiment import GeometryWarning

ACCEPTANCE_LINES = []


@pytest.fixture
def tonomura():
    return whichpath.tonomura()


@pytest.fixture
def rng():
    return np.random.default_rng(20240501)


@pytest.fixture
def quiet_geometry():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", GeometryWarning)
        yield


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
