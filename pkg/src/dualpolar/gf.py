"""Arithmetic in GF(p^k).

Elements are polynomials over GF(p) reduced modulo a fixed monic irreducible
polynomial of degree k.  Coefficient sequences are stored low degree first,
so ``(c0, c1)`` stands for ``c0 + c1*x``.

Besides the element-level API (``FieldElement``, ``arith``, ``conjugate``)
every ``FieldSpec`` exposes a fast integer-coded kernel used by the linear
algebra in the rest of the package: an element is coded as the integer
``sum(c_i * p**i)`` and ``add``/``mul``/``inv``/``conj`` operate on codes.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

MAX_DEGREE = 4
MAX_ORDER = 2 ** 16
_ADD_TABLE_LIMIT = 1024


class FieldError(ValueError):
    pass


class NotPrime(FieldError):
    pass


class DegreeTooLarge(FieldError):
    pass


class FieldMismatch(FieldError):
    pass


class NotQuadraticExtension(FieldError):
    pass


class DivisionByZero(ZeroDivisionError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % f for f in range(2, int(n ** 0.5) + 1))


# -- polynomials over GF(p), coefficient lists low degree first -------------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    a = _trim([c % p for c in a])
    m = _trim(list(m))
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) >= len(m):
        f = a[-1] * inv_lead % p
        shift = len(a) - len(m)
        for i, c in enumerate(m):
            a[shift + i] = (a[shift + i] - f * c) % p
        _trim(a)
    return a


def _monic_polys(p: int, deg: int):
    """Monic polynomials of degree ``deg``, lexicographic from the top coefficient down."""
    for top in itertools.product(range(p), repeat=deg):
        yield list(reversed(top)) + [1]


def is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree at most deg/2."""
    deg = len(poly) - 1
    if deg < 1:
        return False
    for dd in range(1, deg // 2 + 1):
        for f in _monic_polys(p, dd):
            if not _poly_mod(poly, f, p):
                return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    p: int
    k: int
    modulus: tuple[int, ...]

    @property
    def q(self) -> int:
        return self.p ** self.k

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.k})" if self.k > 1 else f"GF({self.p})"

    # -- integer-coded kernel ----------------------------------------------

    def to_coeffs(self, code: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.k):
            code, c = divmod(code, self.p)
            out.append(c)
        return tuple(out)

    def to_code(self, coeffs: Sequence[int]) -> int:
        code = 0
        for c in reversed(coeffs):
            code = code * self.p + c
        return code

    def _poly_mul_code(self, a: int, b: int) -> int:
        ca, cb = self.to_coeffs(a), self.to_coeffs(b)
        prod = [0] * (2 * self.k - 1)
        for i, x in enumerate(ca):
            if x:
                for j, y in enumerate(cb):
                    prod[i + j] += x * y
        red = _poly_mod(prod, self.modulus, self.p)
        return self.to_code(red + [0] * (self.k - len(red)))

    @cached_property
    def _log_exp(self) -> tuple[list[int], list[int]]:
        q = self.q
        if q == 2:
            return [0, 0], [1]
        for g in range(2, q) if self.k == 1 else range(self.p, q):
            exp = [1]
            x = g
            while x != 1:
                exp.append(x)
                x = self._poly_mul_code(x, g)
            if len(exp) == q - 1:
                log = [0] * q
                for i, v in enumerate(exp):
                    log[v] = i
                return log, exp
        raise AssertionError("no primitive element found")  # pragma: no cover

    @cached_property
    def _add_table(self) -> list[list[int]] | None:
        if self.q > _ADD_TABLE_LIMIT:
            return None
        return [[self._add_slow(a, b) for b in range(self.q)] for a in range(self.q)]

    def _add_slow(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        return self.to_code([(x + y) % self.p for x, y in zip(self.to_coeffs(a), self.to_coeffs(b))])

    def add(self, a: int, b: int) -> int:
        t = self._add_table
        return t[a][b] if t is not None else self._add_slow(a, b)

    def neg(self, a: int) -> int:
        if self.k == 1:
            return (-a) % self.p
        return self.to_code([(-c) % self.p for c in self.to_coeffs(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        log, exp = self._log_exp
        return exp[(log[a] + log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of zero")
        log, exp = self._log_exp
        return exp[-log[a] % (self.q - 1)]

    def power(self, a: int, n: int) -> int:
        if a == 0:
            return 0 if n else 1
        log, exp = self._log_exp
        return exp[log[a] * n % (self.q - 1)]

    @cached_property
    def conj_exponent(self) -> int:
        if self.k % 2:
            raise NotQuadraticExtension(f"{self!r} is not a quadratic extension")
        return self.p ** (self.k // 2)

    def conj(self, a: int) -> int:
        return self.power(a, self.conj_exponent)

    # -- element-level views -----------------------------------------------

    def element(self, value: int | Sequence[int]) -> "FieldElement":
        coeffs = self.to_coeffs(value) if isinstance(value, int) else tuple(value)
        return FieldElement(coeffs, self)

    @property
    def zero(self) -> "FieldElement":
        return self.element(0)

    @property
    def one(self) -> "FieldElement":
        return self.element(1)


@dataclass(frozen=True)
class FieldElement:
    coeffs: tuple[int, ...]
    spec: FieldSpec = field(repr=False)

    def __post_init__(self):
        if len(self.coeffs) != self.spec.k or any(not 0 <= c < self.spec.p for c in self.coeffs):
            raise FieldError(f"bad coefficients {self.coeffs} for {self.spec!r}")

    @property
    def code(self) -> int:
        return self.spec.to_code(self.coeffs)

    def _other(self, other: "FieldElement") -> int:
        if not isinstance(other, FieldElement):
            return NotImplemented
        if other.spec != self.spec:
            raise FieldMismatch(f"{self.spec!r} vs {other.spec!r}")
        return other.code

    def __add__(self, other):
        return arith(self, other, "add")

    def __sub__(self, other):
        return arith(self, other, "sub")

    def __mul__(self, other):
        return arith(self, other, "mul")

    def __truediv__(self, other):
        return arith(self, other, "div")

    def __neg__(self):
        return self.spec.element(self.spec.neg(self.code))

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def __repr__(self) -> str:
        if self.spec.k == 1:
            return str(self.coeffs[0])
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                mono = "1" if i == 0 else ("x" if i == 1 else f"x^{i}")
                terms.append(mono if c == 1 and i else f"{c}" + ("" if i == 0 else f"*{mono}"))
        return "+".join(reversed(terms)) or "0"


def field_create(p: int, k: int = 1) -> FieldSpec:
    """Build GF(p^k) with the lexicographically smallest monic irreducible modulus.

    Monic polynomials are ordered by their coefficient sequence read from the
    top degree down, so for ``(2, 4)`` the modulus is ``x^4 + x + 1``.
    """
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if not 1 <= k <= MAX_DEGREE or p ** k > MAX_ORDER:
        raise DegreeTooLarge(f"GF({p}^{k}) exceeds the supported range")
    if k == 1:
        return FieldSpec(p, 1, (0, 1))
    for poly in _monic_polys(p, k):
        if is_irreducible(poly, p):
            return FieldSpec(p, k, tuple(poly))
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


def field_of_order(q: int) -> FieldSpec:
    for p in range(2, q + 1):
        if is_prime(p) and q % p == 0:
            k = 0
            n = q
            while n % p == 0:
                n //= p
                k += 1
            if n != 1:
                break
            return field_create(p, k)
    raise NotPrime(f"{q} is not a prime power")


_OPS = {"+": "add", "-": "sub", "*": "mul", "/": "div"}


def arith(a: FieldElement, b: FieldElement, op: str) -> FieldElement:
    """``op`` is one of add, sub, mul, div or the matching symbol."""
    op = _OPS.get(op, op)
    spec = a.spec
    cb = a._other(b)
    ca = a.code
    if op == "add":
        r = spec.add(ca, cb)
    elif op == "sub":
        r = spec.sub(ca, cb)
    elif op == "mul":
        r = spec.mul(ca, cb)
    elif op == "div":
        if cb == 0:
            raise DivisionByZero("division by zero")
        r = spec.mul(ca, spec.inv(cb))
    else:
        raise ValueError(f"unknown operation {op!r}")
    return spec.element(r)


def conjugate(a: FieldElement) -> FieldElement:
    """Frobenius map a -> a^r on GF(r^2)."""
    return a.spec.element(a.spec.conj(a.code))


def enumerate_elements(spec: FieldSpec) -> list[FieldElement]:
    return [spec.element(c) for c in range(spec.q)]
