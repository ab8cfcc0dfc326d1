"""Indicator embedding of the lattice into R^X and the tight frames it induces.

For u in Omega_j the frame vector is the projection of iota(u) onto V_j.
Matrices here are built from their definitions (rank-one sums over a
level), never from the identities they are checked against.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .lattice import PolarLattice
from .qseries import EigenvalueTable, gauss_binom, lambda1_closed_form, lambda_from_table
from .rational import QArray, as_qarray
from .scheme import DualPolarGraph, adjacency_matrix
from .spectral import SpectralDecomposition
from .subspace import Subspace


class DecompositionMismatch(AssertionError):
    pass


class FrameConstantMismatch(AssertionError):
    pass


class TightFrameViolation(AssertionError):
    pass


@dataclass(frozen=True)
class IotaVector:
    source: Subspace
    vec: QArray


def iota(lat: PolarLattice, z: Subspace) -> IotaVector:
    """iota(z)(x) = [z <= x] over X."""
    if z.is_top:
        return IotaVector(z, QArray.zeros(len(lat.X)))
    row = np.array([int(lat.leq(z, x)) for x in lat.X], dtype=np.int64)
    return IotaVector(z, QArray(row))


def u_matrix(lat: PolarLattice, j: int, g: DualPolarGraph | None = None) -> QArray:
    """U^j = sum over u in Omega_j of iota(u) iota(u)^T, checked against the
    expansion sum_l [l;j]_q A_{d-l} when the graph is supplied."""
    M = QArray(lat.incidence(j))
    U = M.T @ M
    if g is not None:
        q, d = lat.space.q, lat.d
        expected = sum((gauss_binom(l, j, q) * adjacency_matrix(g, d - l) for l in range(j, d + 1)),
                       np.zeros(g.dist.shape, dtype=np.int64))
        if U != QArray(expected):
            raise DecompositionMismatch(f"U^{j} differs from sum_l [l;{j}] A_(d-l)")
    return U


@dataclass
class FrameData:
    j: int
    frame: QArray  # columns are the frame vectors, one per u in Omega_j
    lambda_j: Fraction
    Uj: QArray

    @property
    def dim(self) -> int:
        from .rational import rank

        return rank(self.frame.T)


def frame_vectors(lat: PolarLattice, decomp: SpectralDecomposition, j: int) -> QArray:
    return decomp.E[j] @ QArray(lat.incidence(j)).T


def frame_constant(j: int, decomp: SpectralDecomposition, table: EigenvalueTable, lat: PolarLattice) -> Fraction:
    """lambda_j from the eigenvalue table, confirmed as the U^j eigenvalue on
    every frame vector (and, for j = 1, against the closed product form)."""
    q, d, e2 = lat.space.q, lat.d, lat.space.two_e
    lam = lambda_from_table(j, table, q)
    F = frame_vectors(lat, decomp, j)
    U = u_matrix(lat, j)
    if U @ F != F * lam:
        bad = _first_bad_column(U @ F, F * lam)
        raise FrameConstantMismatch(f"U^{j} u_check != {lam} u_check for u = {lat.omega[j][bad]}")
    if j == 1 and lam != lambda1_closed_form(d, e2, q):
        raise FrameConstantMismatch(f"lambda_1 = {lam} but closed form gives {lambda1_closed_form(d, e2, q)}")
    return lam


def _first_bad_column(a: QArray, b: QArray) -> int:
    x, y, _ = a._aligned(b)
    return int(np.argwhere(x != y)[0][1])


def verify_tight_frame(j: int, lat: PolarLattice, decomp: SpectralDecomposition, lam: Fraction) -> dict:
    """Reconstruction and frame potential on the spanning set, plus the
    matrix identity sum_w w_check w_check^T = lambda_j E_j."""
    F = frame_vectors(lat, decomp, j)
    S = F @ F.T
    if S != decomp.E[j] * lam:
        raise TightFrameViolation(f"sum of w_check w_check^T != {lam} E_{j}")
    recon = S @ F
    if recon != F * lam:
        raise TightFrameViolation(f"reconstruction fails for u = {lat.omega[j][_first_bad_column(recon, F * lam)]}")
    G = F.T @ F
    potential = np.diagonal((G @ G).num)
    norms = np.diagonal(G.num)
    scale = (G @ G).den, G.den
    for idx, (pot, nrm) in enumerate(zip(potential, norms)):
        if Fraction(int(pot), scale[0]) != lam * Fraction(int(nrm), scale[1]):
            raise TightFrameViolation(f"frame potential fails for u = {lat.omega[j][idx]}")
    return {"j": j, "lambda": lam, "vectors": F.shape[1], "dim": decomp.mult[j]}


def tau_check_formula(lat: PolarLattice) -> QArray:
    """Rows iota(tau) - (a_1/|X|) 1 for tau in Omega_1, without any projector."""
    M = QArray(lat.incidence(1))
    ones = QArray(np.ones(M.shape, dtype=np.int64))
    return M - ones * Fraction(lat.a[1], len(lat.X))


def pi1_via_frame(lat: PolarLattice, lambda1: Fraction, h) -> QArray:
    """sum over atoms tau of <iota(tau), h> / lambda_1 * tau_check.

    ``h`` may be a vector or a matrix whose columns are vectors.
    """
    h = as_qarray(h)
    M = QArray(lat.incidence(1))
    return (tau_check_formula(lat).T @ (M @ h)) / lambda1


def pi1_operator(lat: PolarLattice, lambda1: Fraction) -> QArray:
    return pi1_via_frame(lat, lambda1, QArray.identity(len(lat.X)))
