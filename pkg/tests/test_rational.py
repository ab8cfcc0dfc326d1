from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from dualpolar.rational import QArray, as_qarray, outer_sum, rank, stack

fracs = st.fractions(min_value=-50, max_value=50, max_denominator=12)


def mats(r, c):
    return st.lists(st.lists(fracs, min_size=c, max_size=c), min_size=r, max_size=r)


def test_refuses_floats():
    with pytest.raises(TypeError):
        QArray(np.ones(3))


def test_scalar_access_and_reduction():
    a = QArray(np.array([2, 4, 6]), 4)
    assert a.den == 2 and a[0] == Fraction(1, 2)
    assert a == QArray.from_fractions([Fraction(1, 2), 1, Fraction(3, 2)])


@given(mats(3, 3), mats(3, 3), mats(3, 3))
def test_matches_fraction_arithmetic(a, b, c):
    A, B, C = map(QArray.from_fractions, (a, b, c))
    ref = lambda M: [[sum(x * y for x, y in zip(row, col)) for col in zip(*M[1])] for row in M[0]]
    assert (A @ B).tolist() == ref((a, b))
    assert ((A + B) @ C) == A @ C + B @ C
    assert (A - A).is_zero()
    assert (A * Fraction(2, 3)).tolist() == [[x * Fraction(2, 3) for x in row] for row in a]


def test_object_fallback_is_exact():
    big = QArray(np.array([[2 ** 40, 1], [1, 2 ** 40]], dtype=np.int64))
    sq = big @ big
    assert sq[0, 0] == 2 ** 80 + 1


@given(mats(4, 5))
def test_rank_against_sympy(a):
    import sympy
    assert rank(QArray.from_fractions(a)) == sympy.Matrix(a).rank()


def test_helpers():
    v = as_qarray([1, Fraction(1, 2)])
    assert v.dot(v) == Fraction(5, 4)
    assert outer_sum([v]) == QArray.from_fractions([[1, Fraction(1, 2)], [Fraction(1, 2), Fraction(1, 4)]])
    assert stack([v, v]).shape == (2, 2)
    assert QArray.identity(3).trace() == 3
