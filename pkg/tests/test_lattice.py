import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dualpolar.forms import is_isotropic, make_space
from dualpolar.gf import field_of_order
from dualpolar.lattice import PolarLattice, a_counts, bcn_count, enumerate_lattice
from dualpolar.subspace import Subspace, intersect, rref
from dualpolar.verify import brute_force_counts, lattice_laws


def test_c22_levels(c22):
    lat = c22.lattice
    assert [len(l) for l in lat.omega] == [1, 15, 15, 1]
    assert lat.a == [15, 3, 1, 0]
    assert brute_force_counts(lat.space) == [1, 15, 15]


def test_c32_vertices(c32):
    assert len(c32.lattice.X) == 135 == 3 * 5 * 9


def test_levels_are_sorted_canonical_and_isotropic(small_instance):
    lat = small_instance.lattice
    F = lat.field
    for l, level in enumerate(lat.omega[:-1]):
        assert level == sorted(level)
        assert len(set(level)) == len(level)
        for u in level:
            assert u.rank == l
            assert rref(F, u.basis) == u.basis
            assert is_isotropic(lat.space, u)
    assert lat.omega[-1] == [lat.top]


def test_meet_join_basics(c22):
    lat = c22.lattice
    u = lat.X[0]
    assert lat.meet(u, u) == u
    assert lat.meet(u, lat.bottom) == lat.bottom
    assert lat.meet(u, lat.top) == u
    assert lat.join(u, lat.bottom) == u
    assert lat.join(u, lat.top) == lat.top


def test_lagrangians_through_a_point_meet_in_it(c22):
    lat = c22.lattice
    p = lat.atoms[0]
    xs = [x for x in lat.X if lat.leq(p, x)]
    assert len(xs) == 3
    assert lat.meet(xs[0], xs[1]) == p


def test_atoms_with_nonzero_pairing_join_to_top(c22):
    lat = c22.lattice
    F = lat.field
    e1 = Subspace.span(F, [(1, 0, 0, 0)])
    e3 = Subspace.span(F, [(0, 0, 1, 0)])
    assert lat.join(e1, e3).is_top
    e2 = Subspace.span(F, [(0, 1, 0, 0)])
    assert lat.join(e1, e2).rank == 2


def test_covers(c22):
    lat = c22.lattice
    t = lat.atoms[0]
    assert lat.covers(t, lat.bottom)
    assert all(lat.covers(lat.top, x) for x in lat.X)
    assert not lat.covers(t, t)
    assert len(lat.upper_covers(t)) == 3


def test_a_counts(small_instance):
    lat = small_instance.lattice
    a = a_counts(lat)
    assert a[-1] == 0 and a[-2] == 1 and a[0] == len(lat.X)


def test_bcn_examples(c22):
    lat = c22.lattice
    W = lat.atoms[0]
    got = bcn_count(lat, W, 0, 1, 1)
    assert got.ok and got.observed == 3
    with pytest.raises(ValueError):
        bcn_count(lat, W, 2, 1, 0)


def test_lattice_laws_exhaustive(small_instance):
    rep = lattice_laws(small_instance.lattice)
    assert rep["mode"] == "exhaustive"
    assert rep["pairs"] == rep["elements"] * (rep["elements"] + 1) // 2


def test_lattice_laws_sampled_mode(c22):
    rep = lattice_laws(c22.lattice, exhaustive=10, samples=200)
    assert rep["mode"] == "sampled" and rep["pairs"] == 200


def test_json_round_trip(a2even):
    lat = a2even.lattice
    doc = json.loads(json.dumps(lat.to_json()))
    again = PolarLattice.from_json(doc)
    assert again.omega == lat.omega
    assert again.masks == lat.masks
    assert again.a == lat.a


@st.composite
def subspace_pairs(draw):
    q = draw(st.sampled_from([2, 3]))
    n = draw(st.integers(2, 5))
    F = field_of_order(q)
    row = st.tuples(*[st.integers(0, q - 1)] * n)
    u = Subspace.span(F, draw(st.lists(row, max_size=n)))
    w = Subspace.span(F, draw(st.lists(row, max_size=n)))
    return F, n, u, w


@given(subspace_pairs())
def test_dimension_formula(t):
    F, n, u, w = t
    m = intersect(F, u, w, n)
    s = rref(F, u.basis + w.basis)
    assert u.rank + w.rank == len(s) + m.rank
    assert rref(F, m.basis) == m.basis
    assert intersect(F, w, u, n) == m


@given(st.data())
def test_meet_is_associative_on_a_lattice(data):
    lat = enumerate_lattice(make_space("C", 2, 2))
    elems = list(lat.elements())
    a, b, c = (data.draw(st.sampled_from(elems)) for _ in range(3))
    assert lat.meet(lat.meet(a, b), c) == lat.meet(a, lat.meet(b, c))
    assert lat.leq(lat.meet(a, b), a)
    assert lat.leq(a, lat.join(a, b))
