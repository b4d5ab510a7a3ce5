from fractions import Fraction

import pytest

from hprig.realizer import from_roots

ACCEPTANCE_LINES: list[str] = []

@pytest.fixture
def p1():
    return from_roots([(Fraction(1), 1), (Fraction(11, 10), 1), (Fraction(-3), 1)])


@pytest.fixture
def p2():
    return from_roots([(Fraction(1), 1), (Fraction(3), 1), (Fraction(-31, 10), 1)])


@pytest.fixture
def acceptance_log():
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
