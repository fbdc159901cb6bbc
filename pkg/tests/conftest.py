import pytest
from helpers import V


@pytest.fixture
def ab():
    return V("a,b")


@pytest.fixture
def abc():
    return V("a,b,c")


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import LINES

    if LINES:
        terminalreporter.section("acceptance criteria")
        for line in LINES:
            terminalreporter.write_line(line)
