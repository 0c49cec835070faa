import pytest

from qcldpc8 import ExponentMatrix

E1_ROWS = [[0, 0, 0, 0, 0], [0, 1, 2, 3, 4], [0, 11, 5, 9, 16]]
E2_ROWS = [[0, 0, 0, 0, 0, 0], [0, 1, 2, 3, 4, 5], [0, 16, 9, 6, 14, 22]]

# acceptance lines collected by tests/test_acceptance.py
ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def E1():
    return ExponentMatrix.from_rows(E1_ROWS, 17)


@pytest.fixture
def E2():
    return ExponentMatrix.from_rows(E2_ROWS, 23)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
