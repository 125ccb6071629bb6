"""Shared fixtures and the acceptance summary hook."""

import pytest
from helpers import ACCEPTANCE_LINES, HEUN_REF

from trirec.heun import HeunParams, heun_family
from trirec.recurrence_core import CoefficientFamily, PolyN


@pytest.fixture
def heun_ref():
    return heun_family(HeunParams(**HEUN_REF))


@pytest.fixture
def thm_two():
    # A_n = 1/(n+1), B_n = (4n+1)/(n+1)
    return CoefficientFamily(PolyN.of(1), PolyN.of(1, 1), PolyN.of(1, 4), PolyN.of(1, 1))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
