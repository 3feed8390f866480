from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from clusteralg.linalg import (
    SingularMatrixError,
    clear_denominators,
    determinant,
    identity,
    inverse,
    matmul,
    rank,
    solve,
)

entries = st.fractions(min_value=-4, max_value=4, max_denominator=3)


def matrices(rows, cols):
    return st.lists(st.lists(entries, min_size=cols, max_size=cols), min_size=rows, max_size=rows)


def to_sympy(a):
    return sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in row] for row in a])


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 5).flatmap(lambda m: st.integers(1, 5).flatmap(lambda n: matrices(m, n))))
def test_rank_matches_sympy(a):
    assert rank(a) == to_sympy(a).rank()


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 5).flatmap(lambda n: matrices(n, n)))
def test_determinant_matches_sympy(a):
    assert determinant(a) == Fraction(str(to_sympy(a).det()))


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: matrices(n, n)))
def test_inverse_is_two_sided(a):
    if determinant(a) == 0:
        with pytest.raises(SingularMatrixError):
            inverse(a)
        return
    inv = inverse(a)
    assert matmul(a, inv) == identity(len(a))
    assert matmul(inv, a) == identity(len(a))


def test_rank_of_degenerate_rows():
    assert rank(((0, 0), (0, 0))) == 0
    assert rank(((1, 2), (2, 4))) == 1
    assert rank(((0, -6), (6, 0))) == 2


def test_clear_denominators():
    scaled, mu = clear_denominators(((Fraction(1, 2), Fraction(-1, 3)), (0, 1)))
    assert mu == 6
    assert scaled == ((3, -2), (0, 6))


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 4).flatmap(lambda m: st.integers(1, 5).flatmap(
    lambda n: st.tuples(matrices(m, n), st.lists(entries, min_size=n, max_size=n)))))
def test_solve_consistent_systems(data):
    a, x = data
    b = [sum(p * q for p, q in zip(row, x)) for row in a]
    sol = solve(a, b)
    assert sol is not None
    assert [sum(p * q for p, q in zip(row, sol)) for row in a] == b


def test_solve_inconsistent():
    assert solve(((1, 1), (2, 2)), (1, 3)) is None
