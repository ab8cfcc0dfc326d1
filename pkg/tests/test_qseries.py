from fractions import Fraction
import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dualpolar.qseries import (
    QPower,
    ThetaMismatch,
    a_count,
    bcn_formula,
    eigen_table,
    gauss_binom,
    lambda1_closed_form,
    mu,
    mu_by_recursion,
    newton_identity_check,
    pochhammer,
    qint,
    qpow,
    u_series,
    valency,
)
from dualpolar.subspace import rank
from dualpolar.gf import field_of_order


def brute_gauss(n, k, q):
    F = field_of_order(q)
    vecs = list(itertools.product(range(q), repeat=n))
    spans = set()
    for combo in itertools.combinations(vecs, k):
        if rank(F, combo) == k:
            from dualpolar.subspace import rref
            spans.add(rref(F, combo))
    return len(spans)


def test_gauss_examples():
    assert gauss_binom(5, 0, 2) == 1
    assert gauss_binom(2, 1, 2) == 3
    assert gauss_binom(4, 2, 2) == 35 == brute_gauss(4, 2, 2)
    assert gauss_binom(3, 1, 3) == brute_gauss(3, 1, 3)
    assert gauss_binom(2, 3, 2) == 0


def test_qpow():
    assert qpow(4, 3) == 8
    assert qpow(2, -2) == Fraction(1, 2)
    with pytest.raises(ValueError):
        qpow(2, 1)


def test_pochhammer():
    assert pochhammer(QPower(1, 6), 2, 0) == 1
    assert pochhammer(1, 2, 3) == 0
    assert pochhammer(QPower(1, -2), 2, 1) == Fraction(1, 2)


def test_newton_examples():
    assert newton_identity_check(0, 5, 2)
    assert newton_identity_check(2, 2, 2)
    assert newton_identity_check(3, 1, 2)
    assert (1 + 2) * (1 + 4) == 1 + 3 * 2 + 2 * 4


@given(st.integers(1, 12), st.integers(0, 12), st.sampled_from([2, 3, 4, 5]))
def test_q_pascal(n, k, q):
    g = gauss_binom(n, k, q)
    assert g == gauss_binom(n - 1, k - 1, q) + q ** k * gauss_binom(n - 1, k, q)
    assert g == q ** (n - k) * gauss_binom(n - 1, k - 1, q) + gauss_binom(n - 1, k, q)
    assert g == gauss_binom(n, n - k, q)


@given(st.integers(0, 8), st.sampled_from([(2, 2), (2, 0), (2, 4), (3, 2), (4, 1), (4, 3)]))
def test_newton_at_q_to_the_e(n, qe):
    q, two_e = qe
    assert newton_identity_check(n, QPower(1, two_e), q)


PARAMS = [(2, 2, 2), (3, 2, 2), (2, 2, 3), (3, 0, 2), (2, 4, 2), (2, 1, 4), (2, 3, 4), (4, 2, 2), (3, 3, 4)]


@pytest.mark.parametrize("d,two_e,q", PARAMS)
def test_eigen_table_structure(d, two_e, q):
    t = eigen_table(d, two_e, q)
    for j in range(d + 1):
        assert t.p[0][j] == 1
        assert u_series(0, j, d, two_e, q) == 1
    for i in range(d + 1):
        assert t.p[i][0] == valency(i, d, two_e, q)
        assert u_series(i, 0, d, two_e, q) == 1
    assert sum(t.p[i][0] for i in range(d + 1)) == a_count(0, d, two_e, q)
    assert t.theta == mu_by_recursion(d, two_e, q)
    # mu is strictly decreasing and ends at -[d;1]
    assert all(a > b for a, b in zip(t.theta, t.theta[1:]))
    assert t.theta[-1] == -qint(d, q)


def test_c22_table():
    t = eigen_table(2, 2, 2)
    assert t.theta == [6, 1, -3]
    assert u_series(1, 1, 2, 2, 2) == Fraction(1, 6)
    assert [mu(j, 3, 2, 2) for j in range(4)] == [14, 5, -1, -7]


def test_valency_and_lambda1():
    assert valency(1, 2, 2, 2) == 6
    assert valency(1, 3, 2, 2) == 14
    assert lambda1_closed_form(2, 2, 2) == 4
    assert lambda1_closed_form(3, 2, 2) == 24
    assert lambda1_closed_form(3, 0, 2) == 12


@pytest.mark.parametrize("d,two_e,q", PARAMS)
def test_a_counts_and_bcn_specialisations(d, two_e, q):
    assert a_count(d, d, two_e, q) == 1
    assert a_count(d + 1, d, two_e, q) == 0
    for j in range(d + 1):
        # (k, l, m) = (0, d - j, j) recovers a_j
        assert bcn_formula(d, two_e, q, j, 0, d - j, j) == a_count(j, d, two_e, q)
        if j < d:
            assert bcn_formula(d, two_e, q, j, 0, 1, j) == qint(d - j, q) * (1 + qpow(q, 2 * (d - j - 1) + two_e))
            assert a_count(j, d, two_e, q) == (1 + qpow(q, 2 * (d - j - 1) + two_e)) * a_count(j + 1, d, two_e, q)


def test_theta_mismatch_is_an_assertion():
    assert issubclass(ThetaMismatch, AssertionError)
