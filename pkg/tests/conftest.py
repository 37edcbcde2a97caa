from fractions import Fraction

import pytest

from newtonhodge import RootOfUnity, build_newton_data, parse_poly

# acceptance lines collected while the suite runs, echoed in the terminal summary
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def lam(text):
    return RootOfUnity(Fraction(text))


@pytest.fixture
def cubic():
    return parse_poly("1 - t*x1^3", "torus", 1)


@pytest.fixture
def cubic_data(cubic):
    return build_newton_data(cubic)


@pytest.fixture
def square_root():
    return parse_poly("x1^2 - t", "affine", 1)


@pytest.fixture
def square_root_data(square_root):
    return build_newton_data(square_root)
