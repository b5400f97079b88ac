import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from qtl import quantale  # noqa: E402

ACCEPTANCE_LINES = {}


@pytest.fixture(scope="session")
def corpus3():
    return list(quantale.enumerate_all_quantales(3))


@pytest.fixture(scope="session")
def corpus4():
    return list(quantale.enumerate_all_quantales(4))


@pytest.fixture
def powerset2():
    return quantale.gen_powerset(2)


@pytest.fixture
def zn12():
    return quantale.gen_zn(12)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])
