"""Dense exact-rational vectors and matrices.

A ``QArray`` is an integer numpy array ``num`` over a positive common
denominator ``den``.  Numerators are kept as int64 while every product is
provably below 2**62 and fall back to Python integers (object dtype) past
that, so arithmetic is exact at any size.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable

import numpy as np

_LIMIT = 2 ** 62


def _maxabs(a: np.ndarray) -> int:
    if a.size == 0:
        return 0
    return int(max(abs(int(a.max())), abs(int(a.min()))))


def _shrink(a: np.ndarray) -> np.ndarray:
    if a.dtype == object and _maxabs(a) < _LIMIT:
        return a.astype(np.int64)
    return a


def _grow(a: np.ndarray) -> np.ndarray:
    return a if a.dtype == object else a.astype(object)


def _exact_matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    inner = a.shape[-1] if a.ndim else 1
    if a.dtype != object and b.dtype != object and _maxabs(a) * _maxabs(b) * max(inner, 1) < _LIMIT:
        return a @ b
    return _shrink(_grow(a) @ _grow(b))


class QArray:
    __slots__ = ("num", "den")

    def __init__(self, num, den: int = 1):
        num = np.asarray(num)
        if num.dtype.kind == "f":
            raise TypeError("QArray refuses floating point input")
        if num.dtype != object:
            num = num.astype(np.int64)
        if den == 0:
            raise ZeroDivisionError
        if den < 0:
            num, den = -num, -den
        g = reduce(gcd, (int(x) for x in np.unique(num)), int(den)) if num.size else int(den)
        if g > 1:
            num = num // g
            den //= g
        self.num = _shrink(num)
        self.den = int(den)

    @classmethod
    def from_fractions(cls, values) -> "QArray":
        arr = np.asarray(values, dtype=object)
        dens = [Fraction(x).denominator for x in arr.flat]
        L = reduce(lcm, dens, 1)
        num = np.array([int(Fraction(x) * L) for x in arr.flat], dtype=object).reshape(arr.shape)
        return cls(num, L)

    @classmethod
    def identity(cls, n: int) -> "QArray":
        return cls(np.eye(n, dtype=np.int64))

    @classmethod
    def zeros(cls, shape) -> "QArray":
        return cls(np.zeros(shape, dtype=np.int64))

    @property
    def shape(self):
        return self.num.shape

    @property
    def T(self) -> "QArray":
        return QArray(self.num.T, self.den)

    def __len__(self) -> int:
        return len(self.num)

    def __getitem__(self, idx):
        sub = self.num[idx]
        if np.ndim(sub) == 0:
            return Fraction(int(sub), self.den)
        return QArray(sub, self.den)

    def to_fractions(self) -> np.ndarray:
        out = np.empty(self.shape, dtype=object)
        for i, x in np.ndenumerate(self.num):
            out[i] = Fraction(int(x), self.den)
        return out

    def tolist(self):
        return self.to_fractions().tolist()

    def _aligned(self, other: "QArray"):
        L = lcm(self.den, other.den)
        return _grow(self.num) * (L // self.den), _grow(other.num) * (L // other.den), L

    def __add__(self, other):
        if not isinstance(other, QArray):
            return NotImplemented
        a, b, L = self._aligned(other)
        return QArray(a + b, L)

    def __sub__(self, other):
        if not isinstance(other, QArray):
            return NotImplemented
        a, b, L = self._aligned(other)
        return QArray(a - b, L)

    def __neg__(self):
        return QArray(-_grow(self.num), self.den)

    def __mul__(self, scalar):
        if isinstance(scalar, QArray):
            return QArray(_grow(self.num) * _grow(scalar.num), self.den * scalar.den)
        s = Fraction(scalar)
        return QArray(_grow(self.num) * s.numerator, self.den * s.denominator)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        s = Fraction(scalar)
        return self * (1 / s)

    def __matmul__(self, other: "QArray") -> "QArray":
        return QArray(_exact_matmul(self.num, other.num), self.den * other.den)

    def __eq__(self, other) -> bool:
        if not isinstance(other, QArray):
            return NotImplemented
        # both sides are reduced, so equality is structural
        return self.shape == other.shape and self.den == other.den and bool(np.all(self.num == other.num))

    __hash__ = None

    def is_zero(self) -> bool:
        return not np.any(self.num)

    def dot(self, other: "QArray") -> Fraction:
        """Standard inner product of two vectors."""
        s = _exact_matmul(self.num.reshape(1, -1), other.num.reshape(-1, 1))
        return Fraction(int(s[0, 0]), self.den * other.den)

    def trace(self) -> Fraction:
        return Fraction(int(sum(int(x) for x in np.diagonal(self.num))), self.den)

    def __repr__(self) -> str:
        return f"QArray(shape={self.shape}, den={self.den})"


def as_qarray(x) -> QArray:
    if isinstance(x, QArray):
        return x
    arr = np.asarray(x, dtype=object)
    if all(isinstance(v, int) or (isinstance(v, Fraction) and v.denominator == 1) for v in arr.flat):
        return QArray(np.array([int(v) for v in arr.flat], dtype=object).reshape(arr.shape))
    return QArray.from_fractions(arr)


def outer_sum(vectors: Iterable[QArray]) -> QArray:
    """sum_v v v^T as one matrix product."""
    vs = list(vectors)
    M = stack(vs)
    return M.T @ M


def stack(vectors: Iterable[QArray]) -> QArray:
    vs = list(vectors)
    L = reduce(lcm, (v.den for v in vs), 1)
    rows = [_grow(v.num) * (L // v.den) for v in vs]
    return QArray(np.vstack(rows), L)


def rank(m) -> int:
    """Exact rank by fraction-free Gaussian elimination over the integers.

    Rows are kept primitive (content divided out) after every update; the
    pivot is the remaining row entry of least magnitude.
    """
    num = m.num if isinstance(m, QArray) else np.asarray(m)
    rows = [[int(x) for x in r] for r in num]
    rows = [r for r in rows if any(r)]
    if not rows:
        return 0
    ncols = len(rows[0])
    r = 0
    for c in range(ncols):
        piv, best = None, None
        for i in range(r, len(rows)):
            v = rows[i][c]
            if v and (best is None or abs(v) < best):
                piv, best = i, abs(v)
                if best == 1:
                    break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pr = rows[r]
        p = pr[c]
        for i in range(r + 1, len(rows)):
            ri = rows[i]
            f = ri[c]
            if f:
                g = gcd(p, f)
                mp, mf = p // g, f // g
                new = [mp * x - mf * y for x, y in zip(ri, pr)]
                cont = reduce(gcd, new, 0)
                if cont > 1:
                    new = [x // cont for x in new]
                rows[i] = new
        r += 1
        if r == len(rows):
            break
    return r
