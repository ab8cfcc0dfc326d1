"""The lattice of isotropic subspaces of a formed space.

Levels Omega_0, ..., Omega_d hold the isotropic subspaces of each dimension,
and Omega_{d+1} holds the top sentinel standing for the whole space.  Joins
that leave the isotropic world collapse onto that sentinel.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

import numpy as np

from . import forms
from .forms import FormedSpace, WittIndexMismatch
from .qseries import a_count, bcn_formula, qint, qpow
from .subspace import Subspace, dot, intersect, projective_points, rank, rref


class CountMismatch(AssertionError):
    pass


def in_span(F, basis, v) -> bool:
    """Membership test against an RREF basis."""
    rest = list(v)
    for row in basis:
        c = next(i for i, x in enumerate(row) if x)
        f = rest[c]
        if f:
            nf = F.neg(f)
            for t in range(c, len(rest)):
                if row[t]:
                    rest[t] = F.add(rest[t], F.mul(nf, row[t]))
    return not any(rest)


@dataclass
class PolarLattice:
    space: FormedSpace
    omega: list[list[Subspace]]
    index: dict[tuple, tuple[int, int]] = field(repr=False)
    masks: list[list[int]] = field(repr=False)
    a: list[int] = field(default_factory=list)
    _mask_index: dict[int, tuple[int, int]] = field(default_factory=dict, repr=False)
    _incidence: dict[int, np.ndarray] = field(default_factory=dict, repr=False)

    @property
    def d(self) -> int:
        return self.space.d

    @property
    def field(self):
        return self.space.field

    @property
    def X(self) -> list[Subspace]:
        return self.omega[self.d]

    @property
    def atoms(self) -> list[Subspace]:
        return self.omega[1]

    @property
    def bottom(self) -> Subspace:
        return self.omega[0][0]

    @property
    def top(self) -> Subspace:
        return self.omega[self.d + 1][0]

    def __len__(self) -> int:
        return sum(len(level) for level in self.omega)

    def elements(self) -> Iterator[Subspace]:
        for level in self.omega:
            yield from level

    def locate(self, u: Subspace) -> tuple[int, int]:
        return self.index[u.key]

    def mask(self, u: Subspace) -> int:
        """Bitmask of the atoms below u (all bits for the top)."""
        l, i = self.locate(u)
        return self.masks[l][i]

    def from_mask(self, m: int) -> Subspace:
        l, i = self._mask_index[m]
        return self.omega[l][i]

    # -- order and operations -------------------------------------------------

    def rank(self, u: Subspace) -> int:
        return u.rank

    def leq(self, u: Subspace, w: Subspace) -> bool:
        if w.is_top:
            return True
        if u.is_top:
            return False
        mu, mw = self.mask(u), self.mask(w)
        return mu & mw == mu

    def meet(self, u: Subspace, w: Subspace) -> Subspace:
        if u.is_top:
            return w
        if w.is_top:
            return u
        return intersect(self.field, u, w, self.space.n)

    def join(self, u: Subspace, w: Subspace) -> Subspace:
        if u.is_top or w.is_top:
            return self.top
        b = rref(self.field, u.basis + w.basis)
        if len(b) > self.d or not forms.basis_isotropic(self.space, b):
            return self.top
        return Subspace(b, len(b))

    def covers(self, u: Subspace, w: Subspace) -> bool:
        """True iff u covers w."""
        return u.rank == w.rank + 1 and self.leq(w, u)

    def perp(self, u: Subspace) -> Subspace:
        return forms.perp(self.space, u)

    def upper_covers(self, w: Subspace) -> list[Subspace]:
        return [u for u in self.omega[w.rank + 1] if self.leq(w, u)] if w.rank <= self.d else []

    def lower_covers(self, w: Subspace) -> list[Subspace]:
        return [v for v in self.omega[w.rank - 1] if self.leq(v, w)] if w.rank >= 1 else []

    def coatoms_above(self, z: Subspace) -> list[int]:
        """Indices into X of the maximal isotropic spaces containing z."""
        if z.is_top:
            return []
        mz = self.mask(z)
        return [i for i, m in enumerate(self.masks[self.d]) if m & mz == mz]

    def incidence(self, j: int) -> np.ndarray:
        """0/1 matrix with rows iota(u), u in Omega_j, indexed by X."""
        if j not in self._incidence:
            Xm = self.masks[self.d]
            if j == self.d + 1:
                inc = np.zeros((1, len(Xm)), dtype=np.int64)
            else:
                inc = np.array([[int(m & zm == zm) for m in Xm] for zm in self.masks[j]], dtype=np.int64)
            inc.flags.writeable = False
            self._incidence[j] = inc
        return self._incidence[j]

    def cover_matrix(self, j: int) -> np.ndarray:
        """C[w, u] = 1 iff u in Omega_{j+1} covers w in Omega_j."""
        up = self.masks[j + 1]
        return np.array([[int(um & wm == wm) for um in up] for wm in self.masks[j]], dtype=np.int64)

    def sample_pairs(self, count: int, seed: int = 0) -> Iterator[tuple[Subspace, Subspace]]:
        elems = list(self.elements())
        rng = random.Random(seed)
        for _ in range(count):
            yield rng.choice(elems), rng.choice(elems)

    # -- serialization --------------------------------------------------------

    def to_json(self) -> dict:
        s = self.space
        return {
            "family": s.family.tag,
            "r": s.family.r,
            "d": s.d,
            "q": s.q,
            "n": s.n,
            "two_e": s.two_e,
            "field": {"p": s.field.p, "k": s.field.k, "modulus": list(s.field.modulus)},
            "levels": [[[list(row) for row in u.basis] for u in level] for level in self.omega[: self.d + 1]],
            "a": self.a,
        }

    @classmethod
    def from_json(cls, doc: dict) -> "PolarLattice":
        space = forms.make_space(doc["family"], doc["d"], doc["r"])
        levels = [[Subspace(tuple(map(tuple, b)), len(b)) for b in level] for level in doc["levels"]]
        levels.append([Subspace.top(space.d)])
        lat = _assemble(space, levels)
        if lat.a != doc["a"]:
            raise CountMismatch("stored a_j disagree with the reloaded lattice")
        return lat


def _assemble(space: FormedSpace, levels: list[list[Subspace]]) -> PolarLattice:
    F = space.field
    index = {}
    for l, level in enumerate(levels):
        for i, u in enumerate(level):
            index[u.key] = (l, i)
    atoms = levels[1]
    masks = [[0]]
    for level in levels[1:-1]:
        row = []
        for u in level:
            m = 0
            for t, p in enumerate(atoms):
                if in_span(F, u.basis, p.basis[0]):
                    m |= 1 << t
            row.append(m)
        masks.append(row)
    masks.append([(1 << len(atoms)) - 1 if atoms else 0])
    lat = PolarLattice(space, levels, index, masks)
    lat._mask_index = {m: (l, i) for l, row in enumerate(masks[:-1]) for i, m in enumerate(row)}
    lat.a = _count_a(lat)
    return lat


def _count_a(lat: PolarLattice) -> list[int]:
    out = []
    Xm = lat.masks[lat.d]
    for j in range(lat.d + 1):
        counts = {sum(1 for m in Xm if m & zm == zm) for zm in lat.masks[j]}
        if len(counts) != 1:
            raise CountMismatch(f"|{{x >= z}}| is not constant on level {j}: {sorted(counts)}")
        out.append(counts.pop())
    out.append(0)
    return out


def enumerate_lattice(space: FormedSpace) -> PolarLattice:
    """Build every level by extending isotropic spaces one atom at a time."""
    F = space.field
    atoms = sorted(
        Subspace((p,), 1) for p in projective_points(F, space.n) if forms.vector_isotropic(space, p)
    )
    levels = [[Subspace.zero()], atoms]
    while True:
        cur = levels[-1]
        nxt = {}
        for U in cur:
            rows = [forms.pairing_row(space, b) for b in U.basis]
            for p in atoms:
                v = p.basis[0]
                if any(dot(F, r, v) for r in rows) or in_span(F, U.basis, v):
                    continue
                W = Subspace.span(F, U.basis + (v,))
                if W.key not in nxt:
                    if not forms.basis_isotropic(space, W.basis):
                        raise AssertionError(f"extension {W} is not isotropic")
                    nxt[W.key] = W
        if not nxt:
            break
        levels.append(sorted(nxt.values()))
        if len(levels) > space.d + 1:
            raise WittIndexMismatch(f"{space.name}: isotropic spaces beyond dimension {space.d}")
    if len(levels) != space.d + 1:
        raise WittIndexMismatch(f"{space.name}: maximal isotropic dimension {len(levels) - 1}, expected {space.d}")
    levels.append([Subspace.top(space.d)])
    return _assemble(space, levels)


def a_counts(lat: PolarLattice) -> list[int]:
    """a_j for j = 0..d+1, checked against the product formula and its recursion."""
    d, q, e2 = lat.d, lat.space.q, lat.space.two_e
    for j in range(d + 2):
        if lat.a[j] != a_count(j, d, e2, q):
            raise CountMismatch(f"a_{j} = {lat.a[j]} but formula gives {a_count(j, d, e2, q)}")
    for j in range(d):

        if lat.a[j] != (1 + qpow(q, 2 * (d - j - 1) + e2)) * lat.a[j + 1]:
            raise CountMismatch(f"a_{j} != (1 + q^(d-j-1+e)) a_{j + 1}")
    return list(lat.a)


@dataclass(frozen=True)
class BcnCount:
    observed: int
    formula: Fraction

    @property
    def ok(self) -> bool:
        return self.observed == self.formula


def bcn_count(lat: PolarLattice, W: Subspace, k: int, l: int, m: int) -> BcnCount:
    """Count U with dim(U & W) = m and dim(U & perp W) = l + m, against the closed form."""
    d = lat.d
    if min(k, l, m) < 0 or k + l + m > d:
        raise ValueError("need k, l, m >= 0 with k + l + m <= d")
    F, space = lat.field, lat.space
    j = W.rank
    wm = lat.mask(W)
    wrows = [forms.pairing_row(space, b) for b in W.basis]
    target = k + l + m
    observed = 0
    for U, um in zip(lat.omega[target], lat.masks[target]):
        common = bin(um & wm).count("1")
        if common != qint(m, space.q):
            continue
        # U & perp(W) is the kernel of u -> (B(u, w_i))_i restricted to U
        pairing = [[dot(F, r, b) for r in wrows] for b in U.basis]
        dim_perp = target - rank(F, pairing) if wrows else target
        if dim_perp == l + m:
            observed += 1
    formula = bcn_formula(d, space.two_e, space.q, j, k, l, m)
    out = BcnCount(observed, formula)
    if not out.ok:
        raise CountMismatch(f"subspace count (j={j}, k={k}, l={l}, m={m}): {observed} != {formula}")
    return out
