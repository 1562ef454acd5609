import sys
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from discrete_analytic import GaussianRational, Window, zeta_by_extension

small_fractions = st.fractions(min_value=-20, max_value=20, max_denominator=12)
gaussian_rationals = st.builds(GaussianRational, small_fractions, small_fractions)
gaussian_integers = st.builds(GaussianRational, st.integers(-9, 9), st.integers(-9, 9))


def gr(re, im=0):
    return GaussianRational(Fraction(re), Fraction(im))


@pytest.fixture(scope="session")
def small_table():
    return zeta_by_extension(12, Window(0, 8, -3, 3))


@pytest.fixture(scope="session")
def wide_table():
    return zeta_by_extension(15, Window(0, 17, -2, 2))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
