import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dualpolar.gf import (
    DegreeTooLarge,
    DivisionByZero,
    FieldMismatch,
    NotPrime,
    NotQuadraticExtension,
    arith,
    conjugate,
    enumerate_elements,
    field_create,
    field_of_order,
    is_irreducible,
)

SMALL_ORDERS = [2, 3, 4, 5, 7, 8, 9]


def test_moduli():
    assert field_create(2, 2).modulus == (1, 1, 1)
    assert field_create(2, 1).q == 2
    assert field_create(3, 1).q == 3
    # coefficients low degree first; x^3 + x + 1 is the first irreducible cubic
    assert field_create(2, 3).modulus == (1, 1, 0, 1)


def test_gf4_generator_squared():
    F = field_create(2, 2)
    g = F.element((0, 1))
    assert g * g == g + F.one


def test_gf3_addition():
    F = field_create(3)
    assert F.element(2) + F.element(2) == F.element(1)


@pytest.mark.parametrize("p,k", [(4, 1), (1, 1), (9, 2)])
def test_not_prime(p, k):
    with pytest.raises(NotPrime):
        field_create(p, k)


def test_degree_too_large():
    with pytest.raises(DegreeTooLarge):
        field_create(2, 5)


def test_field_of_order_rejects_composites():
    with pytest.raises(NotPrime):
        field_of_order(6)


@pytest.mark.parametrize("q", [2, 4, 9])
def test_enumeration(q):
    els = enumerate_elements(field_of_order(q))
    assert len(els) == q == len(set(els))


def test_mixed_fields_rejected():
    with pytest.raises(FieldMismatch):
        field_of_order(4).one + field_of_order(2).one


def test_zero_division():
    F = field_of_order(5)
    with pytest.raises(DivisionByZero):
        arith(F.one, F.zero, "/")
    with pytest.raises(ZeroDivisionError):
        F.one / F.zero


def test_conjugate_needs_square_order():
    with pytest.raises(NotQuadraticExtension):
        conjugate(field_of_order(8).one)


def test_irreducibility_brute_force():
    # a monic quadratic over GF(p) is irreducible iff it has no root
    for p in (2, 3, 5):
        for b, c in itertools.product(range(p), repeat=2):
            roots = [x for x in range(p) if (x * x + b * x + c) % p == 0]
            assert is_irreducible((c, b, 1), p) == (not roots)


@st.composite
def triples(draw):
    F = field_of_order(draw(st.sampled_from(SMALL_ORDERS)))
    code = st.integers(0, F.q - 1)
    return F, draw(code), draw(code), draw(code)


@given(triples())
def test_field_axioms(t):
    F, a, b, c = t
    A, B, C = F.element(a), F.element(b), F.element(c)
    assert A + B == B + A and A * B == B * A
    assert (A + B) + C == A + (B + C)
    assert (A * B) * C == A * (B * C)
    assert A * (B + C) == A * B + A * C
    assert A + F.zero == A and A * F.one == A
    assert A - A == F.zero
    if A:
        assert A * (F.one / A) == F.one


@given(triples())
def test_frobenius_is_additive_and_multiplicative(t):
    F, a, b, _ = t
    A, B = F.element(a), F.element(b)
    fr = lambda x: F.element(F.power(x.code, F.p))
    assert fr(A + B) == fr(A) + fr(B)
    assert fr(A * B) == fr(A) * fr(B)


@pytest.mark.parametrize("q", [4, 9])
def test_conjugation_is_an_involution_fixing_the_subfield(q):
    F = field_of_order(q)
    r = {4: 2, 9: 3}[q]
    fixed = [x for x in enumerate_elements(F) if conjugate(x) == x]
    assert len(fixed) == r
    for x in enumerate_elements(F):
        assert conjugate(conjugate(x)) == x
        norm = x * conjugate(x)
        assert conjugate(norm) == norm
