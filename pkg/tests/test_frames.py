from fractions import Fraction
import random

import numpy as np
import pytest

from dualpolar import frames
from dualpolar.rational import QArray
from dualpolar.scheme import adjacency_matrix


def test_iota_endpoints(c22):
    lat = c22.lattice
    assert frames.iota(lat, lat.bottom).vec == QArray(np.ones(15, dtype=np.int64))
    assert frames.iota(lat, lat.top).vec.is_zero()


def test_iota_norms_and_atom_inner_products(small_instance):
    lat = small_instance.lattice
    for level in lat.omega[: lat.d + 1]:
        z = level[0]
        v = frames.iota(lat, z).vec
        assert v.dot(v) == lat.a[z.rank]
    atoms = lat.atoms
    vals = {frames.iota(lat, atoms[0]).vec.dot(frames.iota(lat, t).vec) for t in atoms}
    assert vals <= {lat.a[1], lat.a[2], 0}


def test_u_matrices(c22):
    lat, g = c22.lattice, c22.graph
    n = 15
    assert frames.u_matrix(lat, 0, g) == QArray(np.ones((n, n), dtype=np.int64))
    assert frames.u_matrix(lat, 2, g) == QArray.identity(n)
    U1 = frames.u_matrix(lat, 1, g)
    expected = 3 * adjacency_matrix(g, 0) + adjacency_matrix(g, 1)
    assert U1 == QArray(expected)


@pytest.mark.parametrize("fixture,lam1", [("c22", 4), ("c32", 24), ("d32", 12)])
def test_lambda1_values(request, fixture, lam1):
    inst = request.getfixturevalue(fixture)
    assert inst.lambdas[1] == lam1
    assert inst.lambdas[0] == len(inst.lattice.X)


def test_tight_frames(small_instance):
    inst = small_instance
    for j, lam in enumerate(inst.lambdas):
        rep = frames.verify_tight_frame(j, inst.lattice, inst.decomp, lam)
        assert rep["dim"] == inst.decomp.mult[j]


def test_c32_level_two(c32):
    rep = frames.verify_tight_frame(2, c32.lattice, c32.decomp, c32.lambdas[2])
    assert rep["vectors"] == 315


def test_tight_frame_rejects_wrong_constant(c22):
    with pytest.raises(frames.TightFrameViolation):
        frames.verify_tight_frame(1, c22.lattice, c22.decomp, Fraction(5))


def test_pi1_examples(c22):
    lat, E1 = c22.lattice, c22.decomp.E[1]
    lam = c22.lambdas[1]
    ones = QArray(np.ones(15, dtype=np.int64))
    assert frames.pi1_via_frame(lat, lam, ones).is_zero()
    checks = frames.tau_check_formula(lat)
    tau = QArray(lat.incidence(1)[3])
    assert frames.pi1_via_frame(lat, lam, tau) == checks[3]
    rng = random.Random(7)
    h = QArray(np.array([rng.randint(-20, 20) for _ in range(15)]))
    assert frames.pi1_via_frame(lat, lam, h) == E1 @ h
    assert frames.pi1_operator(lat, lam) == E1
