from fractions import Fraction

import numpy as np
import pytest

from dualpolar import norton
from dualpolar.frames import tau_check_formula
from dualpolar.qseries import qint
from dualpolar.rational import QArray


def test_star_edge_cases(c22):
    lat, dec = c22.lattice, c22.decomp
    checks = tau_check_formula(lat)
    a1 = Fraction(lat.a[1], len(lat.X))
    t = checks[0]
    assert norton.star(dec, t, QArray.zeros(15)).is_zero()
    assert norton.star(dec, t, t) == t - t * (2 * a1)
    sigma = next(i for i, s in enumerate(lat.atoms) if lat.join(lat.atoms[0], s).is_top)
    s = checks[sigma]
    assert norton.star(dec, t, s) == -(t + s) * a1
    with pytest.raises(norton.NotInV1):
        norton.star(dec, QArray(np.ones(15, dtype=np.int64)), t)


def _two_space_pair(lat):
    t = lat.atoms[0]
    for s in lat.atoms[1:]:
        if not lat.join(t, s).is_top:
            return t, s


def test_partition_c32(c32):
    lat = c32.lattice
    t, s = _two_space_pair(lat)
    part = norton.psi_partition(lat, t, s)
    assert len(part.psi2) == qint(2, 2) == 3
    assert lat.locate(t)[1] in part.psi2
    assert sum(part.sizes().values()) == len(lat.atoms)
    with pytest.raises(norton.BadOperands):
        norton.psi_partition(lat, t, t)


def test_partition_c22_has_no_rank_three(c22):
    lat = c22.lattice
    t, s = _two_space_pair(lat)
    assert norton.psi_partition(lat, t, s).psi3 == []


@pytest.mark.parametrize("fixture", ["c32", "d32"])
def test_denominator_equals_lambda1(request, fixture):
    inst = request.getfixturevalue(fixture)
    assert norton._denominator(inst.lattice) == inst.lambdas[1]


def test_rhs_symmetric_and_correct(c32):
    lat, dec = c32.lattice, c32.decomp
    t, s = _two_space_pair(lat)
    rhs = norton.norton_rhs(lat, t, s)
    assert rhs == norton.norton_rhs(lat, s, t)
    checks = tau_check_formula(lat)
    i, k = lat.locate(t)[1], lat.locate(s)[1]
    assert norton.star(dec, checks[i], checks[k]) == rhs


def test_rhs_needs_diameter_three(c22):
    t, s = _two_space_pair(c22.lattice)
    with pytest.raises(norton.DiameterTooSmall):
        norton.norton_rhs(c22.lattice, t, s)


def test_verify_c32_all_cases(c32):
    rep = norton.verify_norton(c32.lattice, c32.decomp)
    assert rep["exhaustive"] and rep["pairs"] == 63 * 64 // 2
    assert rep["two_space_skipped"] is None
    assert min(rep["counts"][k] for k in ("equal", "top", "two_space")) > 0


def test_verify_d2_reports_skip(c22):
    rep = norton.verify_norton(c22.lattice, c22.decomp)
    assert rep["two_space_skipped"].startswith("d = 2")
    assert rep["counts"]["inner_identity"] == rep["pairs"]
    assert rep["d2_probe"]["pairs"] > 0


def test_sampling_is_reproducible():
    class Fake:
        atoms = list(range(100))
    a, ex = norton._pairs(Fake, 3)
    b, _ = norton._pairs(Fake, 3)
    assert a == b and not ex and len(a) == norton.SAMPLED_PAIRS


def test_commutative_bilinear(d32):
    assert norton.commutativity_bilinearity(d32.decomp, d32.lattice, trials=3)
