"""Eigenspaces of the Laplacian of a dual polar graph, in exact arithmetic.

The eigenvalues are known in closed form, so the primitive idempotents come
from Lagrange interpolation in A_1; no eigensolver is involved.  If the
closed form were wrong, ``A_1 E_j == mu_j E_j`` would fail.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import qseries
from .lattice import PolarLattice
from .qseries import qint, qpow
from .rational import QArray, rank
from .scheme import DualPolarGraph, adjacency_matrix


class EigenvalueCollision(ValueError):
    pass


class NotAnEigenvalue(AssertionError):
    pass


class FiltrationMismatch(AssertionError):
    pass


class IdentityViolation(AssertionError):
    pass


def laplacian(g: DualPolarGraph) -> QArray:
    """Operator matrix of L(f)(x) = sum over neighbours y of f(y), i.e. A_1."""
    return QArray(adjacency_matrix(g, 1))


def mu(j: int, d: int, two_e: int, q: int) -> Fraction:
    return qseries.mu(j, d, two_e, q)


def mu_values(d: int, two_e: int, q: int) -> list[Fraction]:
    """Closed-form eigenvalues, cross-checked against the downward recursion."""
    closed = [mu(j, d, two_e, q) for j in range(d + 1)]
    rec = qseries.mu_by_recursion(d, two_e, q)
    if closed != rec:
        raise NotAnEigenvalue(f"closed form {closed} disagrees with recursion {rec}")
    return closed


@dataclass
class SpectralDecomposition:
    mu: list[Fraction]
    E: list[QArray]
    mult: list[int]
    theta: list[Fraction] = field(default_factory=list)
    lam: list[Fraction] = field(default_factory=list)

    @property
    def d(self) -> int:
        return len(self.mu) - 1

    def to_json(self) -> dict:
        return {
            "mu": [str(m) for m in self.mu],
            "mult": self.mult,
            "theta": [str(t) for t in self.theta],
            "lambda": [str(x) for x in self.lam],
        }


def idempotents(L: QArray, mus: list[Fraction]) -> SpectralDecomposition:
    """E_j = prod_{i != j} (L - mu_i I) / (mu_j - mu_i), with every algebra law verified."""
    if len(set(mus)) != len(mus):
        raise EigenvalueCollision(f"eigenvalues not distinct: {mus}")
    n = L.shape[0]
    I = QArray.identity(n)
    E = []
    for j, mj in enumerate(mus):
        P = I
        for i, mi in enumerate(mus):
            if i != j:
                P = P @ (L - I * mi) / (mj - mi)
        E.append(P)
    for j, Ej in enumerate(E):
        if L @ Ej != Ej * mus[j]:
            raise NotAnEigenvalue(f"A_1 E_{j} != mu_{j} E_{j} with mu_{j} = {mus[j]}")
        if Ej @ Ej != Ej:
            raise NotAnEigenvalue(f"E_{j} is not idempotent")
        if Ej.T != Ej:
            raise NotAnEigenvalue(f"E_{j} is not symmetric")
        for i in range(j):
            if not (E[i] @ Ej).is_zero():
                raise NotAnEigenvalue(f"E_{i} E_{j} != 0")
    total = E[0]
    for Ej in E[1:]:
        total = total + Ej
    if total != I:
        raise NotAnEigenvalue("sum of idempotents is not the identity")
    mult = [rank(Ej) for Ej in E]
    for j, (m, Ej) in enumerate(zip(mult, E)):
        if m < 1 or Ej.trace() != m:
            raise NotAnEigenvalue(f"E_{j}: rank {m}, trace {Ej.trace()}")
    if sum(mult) != n:
        raise NotAnEigenvalue(f"multiplicities {mult} do not sum to {n}")
    return SpectralDecomposition(list(mus), E, mult)


def decompose(g: DualPolarGraph) -> SpectralDecomposition:
    s = g.lattice.space
    return idempotents(laplacian(g), mu_values(g.d, s.two_e, s.q))


def project(decomp: SpectralDecomposition, f: QArray, j: int) -> QArray:
    return decomp.E[j] @ f


def eigenvalue_check(g: DualPolarGraph, decomp: SpectralDecomposition, table: qseries.EigenvalueTable) -> list[str]:
    """A_i E_j == p_i(j) E_j for all i, j; returns the failures."""
    bad = []
    for i in range(g.d + 1):
        Ai = QArray(adjacency_matrix(g, i))
        for j, Ej in enumerate(decomp.E):
            if Ai @ Ej != Ej * table.p[i][j]:
                bad.append(f"A_{i} E_{j} != {table.p[i][j]} E_{j}")
    return bad


def _first_difference(lhs: QArray, rhs: QArray) -> tuple[int, int]:
    a, b, _ = lhs._aligned(rhs)
    idx = np.argwhere(a != b)[0]
    return int(idx[0]), int(idx[1])


def filtration_check(lat: PolarLattice, decomp: SpectralDecomposition) -> dict:
    """Upward sums of iota, dimensions of Lambda_j, and Lambda_j = V_0 + ... + V_j."""
    d, q = lat.d, lat.space.q
    M = [QArray(lat.incidence(j)) for j in range(d + 1)]
    for j in range(d):
        wstar = QArray(lat.cover_matrix(j)) @ M[j + 1]
        expected = M[j] * qint(d - j, q)
        if wstar != expected:
            w, x = _first_difference(wstar, expected)
            raise FiltrationMismatch(f"w* != [d-j;1] iota(w) at w = {lat.omega[j][w]}, x = {x}")
    dims = [rank(Mj) for Mj in M]
    partial = [sum(decomp.mult[: j + 1]) for j in range(d + 1)]
    if dims != partial:
        raise FiltrationMismatch(f"dim Lambda_j = {dims}, cumulative multiplicities {partial}")
    n = len(lat.X)
    for j in range(d + 1):
        P = decomp.E[0]
        for Ei in decomp.E[1 : j + 1]:
            P = P + Ei
        # Lambda_j inside V_0 + ... + V_j, and the dimensions agree
        if P @ M[j].T != M[j].T:
            raise FiltrationMismatch(f"Lambda_{j} is not inside V_0 + ... + V_{j}")
        if j and not (M[j - 1] @ decomp.E[j]).is_zero():
            raise FiltrationMismatch(f"V_{j} is not orthogonal to Lambda_{j - 1}")
    if dims[-1] != n:
        raise FiltrationMismatch(f"Lambda_d has dimension {dims[-1]} != |X| = {n}")
    return {"dims": dims, "mult": list(decomp.mult)}


def laplacian_identities_check(lat: PolarLattice, L: QArray) -> dict:
    """The Laplacian on coatoms, and the cover double-sum identity on every level below d."""
    d, q, e2 = lat.d, lat.space.q, lat.space.two_e
    n = len(lat.X)
    M = [QArray(lat.incidence(j)) for j in range(d + 1)]
    C = [QArray(lat.cover_matrix(j)) for j in range(d)]
    # rows are indexed by x; L(iota(x)) is column x of A_1 and A_1 is symmetric
    rhs = QArray.identity(n) * (-qint(d, q)) + C[d - 1].T @ M[d - 1]
    if L != rhs:
        x, y = _first_difference(L, rhs)
        raise IdentityViolation(f"Laplacian identity fails at coatom {lat.X[x]}, point {y}")
    checked = n
    for j in range(d):
        lhs = C[j] @ C[j].T @ M[j]
        coef = Fraction(q) ** j + qpow(q, 2 * (d - j - 1) + e2)
        inner = M[j] * coef
        if j:
            inner = inner + C[j - 1].T @ M[j - 1]
        rhs = inner * qint(d - j, q)
        if lhs != rhs:
            w, x = _first_difference(lhs, rhs)
            raise IdentityViolation(f"double-sum identity fails at w = {lat.omega[j][w]}, x = {x}")
        checked += len(lat.omega[j])
    return {"checked": checked}
