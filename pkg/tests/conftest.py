import numpy as np
import pytest

from idqm.fixtures import all_fixtures

# one line per acceptance criterion, filled by test_acceptance.py
ACCEPTANCE_LINES = {}


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(scope="session")
def fixtures():
    return all_fixtures()


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])
