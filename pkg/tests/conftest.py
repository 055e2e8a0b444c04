import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from minorsign import Matrix

small_rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@st.composite
def matrices(draw, n_min=1, n_max=5, symmetric=False, elements=small_rationals):
    n = draw(st.integers(n_min, n_max))
    grid = [[draw(elements) for _ in range(n)] for _ in range(n)]
    if symmetric:
        for i in range(n):
            for j in range(i):
                grid[i][j] = grid[j][i]
    return Matrix(grid)


def random_matrix(rng: random.Random, n: int, symmetric=False, lo=-9, hi=9, max_den=5) -> Matrix:
    grid = [[Fraction(rng.randint(lo, hi), rng.randint(1, max_den)) for _ in range(n)] for _ in range(n)]
    if symmetric:
        for i in range(n):
            for j in range(i):
                grid[i][j] = grid[j][i]
    return Matrix(grid)


def sympy_matrix(m: Matrix):
    import sympy

    return sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in row] for row in m.rows])


@pytest.fixture
def rng():
    return random.Random(20240531)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
