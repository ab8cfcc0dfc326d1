"""Subspaces of GF(q)^n in canonical reduced row echelon form.

Vectors are tuples of integer field codes (see ``FieldSpec``).  A subspace is
identified by its RREF basis, so two ``Subspace`` objects compare equal
exactly when they span the same space.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .gf import FieldSpec

Vector = tuple[int, ...]


def rref(F: FieldSpec, rows: Iterable[Sequence[int]]) -> tuple[Vector, ...]:
    """Reduced row echelon form with zero rows dropped."""
    m = [list(r) for r in rows]
    if not m:
        return ()
    n = len(m[0])
    out: list[list[int]] = []
    for c in range(n):
        piv = next((i for i, r in enumerate(m) if r[c]), None)
        if piv is None:
            continue
        row = m.pop(piv)
        inv = F.inv(row[c])
        if inv != 1:
            row = [F.mul(inv, x) for x in row]
        for other in itertools.chain(m, out):
            f = other[c]
            if f:
                nf = F.neg(f)
                for t in range(c, n):
                    if row[t]:
                        other[t] = F.add(other[t], F.mul(nf, row[t]))
        out.append(row)
        m = [r for r in m if any(r)]
        if not m:
            break
    out.sort(key=lambda r: next(i for i, x in enumerate(r) if x))
    return tuple(tuple(r) for r in out)


def rank(F: FieldSpec, rows: Iterable[Sequence[int]]) -> int:
    return len(rref(F, rows))


def nullspace(F: FieldSpec, rows: Sequence[Sequence[int]], n: int) -> tuple[Vector, ...]:
    """Basis (in RREF) of {v : sum_t r[t] v[t] = 0 for every row r}."""
    red = rref(F, rows)
    pivots = [next(i for i, x in enumerate(r) if x) for r in red]
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * n
        v[f] = 1
        for r, pc in zip(red, pivots):
            if r[f]:
                v[pc] = F.neg(r[f])
        basis.append(v)
    return rref(F, basis)


def dot(F: FieldSpec, u: Sequence[int], v: Sequence[int]) -> int:
    s = 0
    for a, b in zip(u, v):
        if a and b:
            s = F.add(s, F.mul(a, b))
    return s


def normalize(F: FieldSpec, v: Sequence[int]) -> Vector:
    """Scale so the first nonzero coordinate is 1."""
    lead = next(x for x in v if x)
    if lead == 1:
        return tuple(v)
    inv = F.inv(lead)
    return tuple(F.mul(inv, x) for x in v)


@dataclass(frozen=True, order=True)
class Subspace:
    """A lattice element: an RREF basis, or the top sentinel.

    ``rank`` is the number of basis rows, except for the top element whose
    rank is d + 1 (it is a tag, not a matrix).
    """

    basis: tuple[Vector, ...]
    rank: int
    is_top: bool = False

    @classmethod
    def span(cls, F: FieldSpec, rows: Iterable[Sequence[int]]) -> "Subspace":
        b = rref(F, rows)
        return cls(b, len(b))

    @classmethod
    def zero(cls) -> "Subspace":
        return cls((), 0)

    @classmethod
    def top(cls, d: int) -> "Subspace":
        return cls((), d + 1, True)

    @property
    def key(self) -> tuple:
        return ("top",) if self.is_top else self.basis

    def __repr__(self) -> str:
        if self.is_top:
            return "Subspace(top)"
        return f"Subspace({list(map(list, self.basis))})"


def intersect(F: FieldSpec, u: Subspace, w: Subspace, n: int) -> Subspace:
    """Zassenhaus: reduce [[u, u], [w, 0]]; rows with empty left half span u & w."""
    if not u.basis or not w.basis:
        return Subspace.zero()
    zeros = (0,) * n
    red = rref(F, [b + b for b in u.basis] + [b + zeros for b in w.basis])
    b = tuple(r[n:] for r in red if not any(r[:n]))
    return Subspace(b, len(b))


def contains(F: FieldSpec, big: Subspace, small: Subspace) -> bool:
    if small.is_top:
        return big.is_top
    if big.is_top:
        return True
    return rank(F, big.basis + small.basis) == len(big.basis)


def all_vectors(F: FieldSpec, n: int):
    return itertools.product(range(F.q), repeat=n)


def projective_points(F: FieldSpec, n: int):
    """Normalized representatives of all 1-spaces of GF(q)^n."""
    for lead in range(n):
        for tail in itertools.product(range(F.q), repeat=n - lead - 1):
            yield (0,) * lead + (1,) + tail
