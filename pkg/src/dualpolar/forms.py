"""The six formed spaces whose maximal isotropic subspaces give dual polar graphs.

Coordinates are 0-based.  In every standard form below the first ``d``
coordinate vectors span a maximal isotropic subspace:

* ``C``      symplectic on 2d coords, omega(x, y) = sum_i x_i y_{d+i} - x_{d+i} y_i
* ``B``      quadratic on 2d+1 coords, Q(x) = sum_i x_i x_{d+i} + x_{2d}^2
* ``D``      quadratic on 2d coords, Q(x) = sum_i x_i x_{d+i}
* ``2D``     quadratic on 2d+2 coords, Q(x) = sum_i x_i x_{d+i} + g(x_{2d}, x_{2d+1})
             with g anisotropic
* ``2A_odd`` Hermitian on 2d+1 coords over GF(r^2) (the family 2A_{2d}(r))
* ``2A_even`` Hermitian on 2d coords over GF(r^2) (the family 2A_{2d-1}(r))

The Hermitian forms are H(x, y) = sum_i x_i y_{d+i}^r + x_{d+i} y_i^r
(+ x_{2d} y_{2d}^r in odd dimension).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .gf import FieldElement, FieldSpec, field_of_order
from .subspace import Subspace, Vector, nullspace

# tag -> (2e, ambient dimension as a function of d, quadratic?, hermitian?)
_FAMILIES = {
    "C": (2, lambda d: 2 * d, False, False),
    "B": (2, lambda d: 2 * d + 1, True, False),
    "D": (0, lambda d: 2 * d, True, False),
    "2D": (4, lambda d: 2 * d + 2, True, False),
    "2A_odd": (3, lambda d: 2 * d + 1, False, True),
    "2A_even": (1, lambda d: 2 * d, False, True),
}

TAGS = tuple(_FAMILIES)


class BadParameters(ValueError):
    pass


class DimensionMismatch(ValueError):
    pass


class WittIndexMismatch(AssertionError):
    pass


@dataclass(frozen=True)
class Family:
    tag: str
    r: int

    def __post_init__(self):
        if self.tag not in _FAMILIES:
            raise BadParameters(f"unknown family {self.tag!r}; expected one of {TAGS}")

    @property
    def two_e(self) -> int:
        return _FAMILIES[self.tag][0]

    @property
    def e(self) -> Fraction:
        return Fraction(self.two_e, 2)

    @property
    def quadratic(self) -> bool:
        return _FAMILIES[self.tag][2]

    @property
    def hermitian(self) -> bool:
        return _FAMILIES[self.tag][3]

    @property
    def q(self) -> int:
        return self.r ** 2 if self.hermitian else self.r

    def dimension(self, d: int) -> int:
        return _FAMILIES[self.tag][1](d)

    def name(self, d: int) -> str:
        return {
            "C": f"C_{d}({self.r})",
            "B": f"B_{d}({self.r})",
            "D": f"D_{d}({self.r})",
            "2D": f"2D_{d + 1}({self.r})",
            "2A_odd": f"2A_{2 * d}({self.r})",
            "2A_even": f"2A_{2 * d - 1}({self.r})",
        }[self.tag]


@dataclass(frozen=True)
class FormedSpace:
    family: Family
    field: FieldSpec
    n: int
    d: int
    gram: tuple[tuple[int, ...], ...]
    quad_coeffs: tuple[tuple[int, ...], ...] | None = None

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def two_e(self) -> int:
        return self.family.two_e

    @property
    def name(self) -> str:
        return self.family.name(self.d)


def _anisotropic_binary(F: FieldSpec) -> tuple[int, int]:
    """First (a, b) in lexicographic order with u^2 + a uv + b v^2 anisotropic."""
    for a in range(F.q):
        for b in range(F.q):
            def g(u, v):
                return F.add(F.add(F.mul(u, u), F.mul(a, F.mul(u, v))), F.mul(b, F.mul(v, v)))

            if all(g(u, v) for u in range(F.q) for v in range(F.q) if u or v):
                return a, b
    raise AssertionError("no anisotropic binary form")  # pragma: no cover


def make_space(family: Family | str, d: int, r: int | None = None) -> FormedSpace:
    if isinstance(family, str):
        if r is None:
            raise BadParameters("r is required")
        family = Family(family, r)
    if d < 2:
        raise BadParameters("diameter must be at least 2")
    try:
        F = field_of_order(family.q)
    except ValueError as exc:
        raise BadParameters(str(exc)) from exc
    n = family.dimension(d)
    one = 1
    zero = [[0] * n for _ in range(n)]
    quad = None
    if family.tag == "C":
        gram = zero
        for i in range(d):
            gram[i][d + i] = one
            gram[d + i][i] = F.neg(one)
    elif family.hermitian:
        gram = zero
        for i in range(d):
            gram[i][d + i] = one
            gram[d + i][i] = one
        if n == 2 * d + 1:
            gram[2 * d][2 * d] = one
    else:
        quad = [[0] * n for _ in range(n)]
        for i in range(d):
            quad[i][d + i] = one
        if family.tag == "B":
            quad[2 * d][2 * d] = one
        elif family.tag == "2D":
            a, b = _anisotropic_binary(F)
            quad[2 * d][2 * d] = one
            quad[2 * d][2 * d + 1] = a
            quad[2 * d + 1][2 * d + 1] = b
        # polar form B(x, y) = Q(x+y) - Q(x) - Q(y) has Gram matrix C + C^T
        gram = [[F.add(quad[i][j], quad[j][i]) for j in range(n)] for i in range(n)]
        quad = tuple(map(tuple, quad))
    return FormedSpace(family, F, n, d, tuple(map(tuple, gram)), quad)


# -- evaluation on integer codes -----------------------------------------------

def _twist(space: FormedSpace, v: Sequence[int]) -> list[int]:
    if space.family.hermitian:
        return [space.field.conj(x) for x in v]
    return list(v)


def pairing_row(space: FormedSpace, v: Sequence[int]) -> Vector:
    """Row r with sum_t x_t r_t = B(x, v) for every x."""
    F = space.field
    w = _twist(space, v)
    out = []
    for i in range(space.n):
        s = 0
        for j, c in enumerate(space.gram[i]):
            if c and w[j]:
                s = F.add(s, F.mul(c, w[j]))
        out.append(s)
    return tuple(out)


def pair(space: FormedSpace, u: Sequence[int], v: Sequence[int]) -> int:
    """Bilinear, Hermitian, or polar pairing of two coded vectors."""
    F = space.field
    w = _twist(space, v)
    s = 0
    for i, x in enumerate(u):
        if x:
            for j, c in enumerate(space.gram[i]):
                if c and w[j]:
                    s = F.add(s, F.mul(x, F.mul(c, w[j])))
    return s


def quad(space: FormedSpace, v: Sequence[int]) -> int:
    F = space.field
    s = 0
    for i, x in enumerate(v):
        if x:
            for j in range(i, space.n):
                c = space.quad_coeffs[i][j]
                if c and v[j]:
                    s = F.add(s, F.mul(c, F.mul(x, v[j])))
    return s


def vector_isotropic(space: FormedSpace, v: Sequence[int]) -> bool:
    if space.family.quadratic:
        return quad(space, v) == 0
    return pair(space, v, v) == 0


def basis_isotropic(space: FormedSpace, basis: Sequence[Sequence[int]]) -> bool:
    for i, b in enumerate(basis):
        if not vector_isotropic(space, b):
            return False
        for c in basis[i + 1:]:
            if pair(space, b, c):
                return False
    return True


# -- public API on FieldElement vectors ----------------------------------------

def _codes(space: FormedSpace, v) -> Vector:
    if len(v) != space.n:
        raise DimensionMismatch(f"expected length {space.n}, got {len(v)}")
    return tuple(x.code if isinstance(x, FieldElement) else int(x) for x in v)


def evaluate(space: FormedSpace, u, v) -> FieldElement:
    """omega(u, v) for bilinear and Hermitian families, the polar form otherwise."""
    return space.field.element(pair(space, _codes(space, u), _codes(space, v)))


polar = evaluate


def evaluate_quadratic(space: FormedSpace, v) -> FieldElement:
    if not space.family.quadratic:
        raise BadParameters(f"{space.name} carries no quadratic form")
    return space.field.element(quad(space, _codes(space, v)))


def is_isotropic(space: FormedSpace, S: Subspace) -> bool:
    if S.is_top:
        return False
    return basis_isotropic(space, S.basis)


def perp(space: FormedSpace, S: Subspace) -> Subspace:
    if S.is_top:
        return Subspace.zero()
    if not S.basis:
        return Subspace.span(space.field, [tuple(int(i == j) for j in range(space.n)) for i in range(space.n)])
    rows = [pairing_row(space, b) for b in S.basis]
    b = nullspace(space.field, rows, space.n)
    return Subspace(b, len(b))


def witt_index_check(space: FormedSpace) -> int:
    from .lattice import enumerate_lattice

    lat = enumerate_lattice(space)
    top = max(l for l, level in enumerate(lat.omega[:-1]) if level)
    if top != space.d:
        raise WittIndexMismatch(f"{space.name}: Witt index {top}, expected {space.d}")
    return top
