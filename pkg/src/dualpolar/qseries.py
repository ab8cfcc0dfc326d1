"""Exact q-analogues: Gaussian binomials, q-Pochhammer symbols and the
terminating 4phi3 series giving the eigenvalues of a dual polar scheme.

Exponents may be half-integers (the Hermitian families have ``e`` in
{1/2, 3/2} and ``q = r**2``), so powers are carried as doubled exponents and
evaluated through ``qpow``.  Nothing here uses floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt


class ThetaMismatch(AssertionError):
    pass


def qpow(q: int, num2: int) -> Fraction:
    """``q ** (num2 / 2)`` as an exact rational.

    Odd ``num2`` requires ``q`` to be a perfect square.
    """
    if num2 % 2 == 0:
        return Fraction(q) ** (num2 // 2)
    r = isqrt(q)
    if r * r != q:
        raise ValueError(f"q={q} is not a square; q^({num2}/2) is irrational")
    return Fraction(r) ** num2


@dataclass(frozen=True)
class QPower:
    """The value ``sign * q**(num2/2)``."""

    sign: int
    num2: int

    def value(self, q: int) -> Fraction:
        return self.sign * qpow(q, self.num2)


def qint(i: int, q: int) -> int:
    """[i;1]_q, zero for i < 1."""
    if i < 1:
        return 0
    return (q ** i - 1) // (q - 1)


def gauss_binom(n: int, k: int, q: int) -> int:
    """Gaussian binomial as the ratio of products of [i;1]_q."""
    if k < 0 or k > n:
        return 0
    num = Fraction(1)
    for i in range(k):
        num *= qint(n - i, q)
        num /= qint(k - i, q)
    assert num.denominator == 1
    return int(num)


def pochhammer(a: QPower | Fraction | int, q: int, t: int) -> Fraction:
    """(a;q)_t = (1 - a)(1 - aq)...(1 - aq^(t-1))."""
    if t < 0:
        raise ValueError("t must be nonnegative")
    av = a.value(q) if isinstance(a, QPower) else Fraction(a)
    out = Fraction(1)
    for s in range(t):
        out *= 1 - av * Fraction(q) ** s
    return out


def u_term(i: int, j: int, d: int, two_e: int, q: int, t: int) -> Fraction:
    """The t-th summand of u_i(theta_j)."""
    num = (
        pochhammer(QPower(1, -2 * i), q, t)
        * pochhammer(QPower(1, -2 * j), q, t)
        * pochhammer(QPower(-1, 2 * (j - d) - two_e), q, t)
        * Fraction(q) ** t
    )
    den = pochhammer(QPower(1, -2 * d), q, t) * pochhammer(q, q, t)
    return num / den


def u_series(i: int, j: int, d: int, two_e: int, q: int) -> Fraction:
    """u_i(theta_j), summed up to its termination point min(i, j).

    The summand at ``min(i, j) + 1`` is checked to vanish, since every later
    term carries the same zero factor.
    """
    if not (0 <= i <= d and 0 <= j <= d):
        raise ValueError("indices out of range")
    stop = min(i, j)
    if stop + 1 <= d and u_term(i, j, d, two_e, q, stop + 1) != 0:
        raise AssertionError("4phi3 series did not terminate")
    return sum((u_term(i, j, d, two_e, q, t) for t in range(stop + 1)), Fraction(0))


def valency(i: int, d: int, two_e: int, q: int) -> Fraction:
    """k_i = [d;i]_q q^((i^2 - i)/2 + i e)."""
    return gauss_binom(d, i, q) * qpow(q, i * i - i + i * two_e)


def mu(j: int, d: int, two_e: int, q: int) -> Fraction:
    """mu_j = q^e [d-j;1]_q - [j;1]_q."""
    return qpow(q, two_e) * qint(d - j, q) - qint(j, q)


def mu_by_recursion(d: int, two_e: int, q: int) -> list[Fraction]:
    """mu_d = -[d;1]_q and mu_j = mu_{j+1} + q^j + q^(d+e-j-1)."""
    out = [Fraction(-qint(d, q))]
    for j in range(d - 1, -1, -1):
        out.append(out[-1] + Fraction(q) ** j + qpow(q, 2 * (d - j - 1) + two_e))
    return out[::-1]


def a_count(j: int, d: int, two_e: int, q: int) -> Fraction:
    """Number of maximal isotropic spaces through a fixed j-dimensional one."""
    if j == d + 1:
        return Fraction(0)
    out = Fraction(1)
    for i in range(d - j):
        out *= 1 + qpow(q, two_e + 2 * i)
    return out


def bcn_formula(d: int, two_e: int, q: int, j: int, k: int, l: int, m: int) -> Fraction:
    """Number of isotropic (k+l+m)-spaces meeting a fixed isotropic j-space W
    in dimension m and its perp in dimension l+m."""
    # doubled exponent of l(j-m) + k(2d-j-m-2l+e-1) - k(k-1)/2
    num2 = 2 * l * (j - m) + k * (2 * (2 * d - j - m - 2 * l - 1) + two_e) - k * (k - 1)
    out = qpow(q, num2) * gauss_binom(j, m, q) * gauss_binom(j - m, k, q) * gauss_binom(d - j, l, q)
    for i in range(l):
        out *= 1 + qpow(q, 2 * (d - j - i - 1) + two_e)
    return out


@dataclass(frozen=True)
class EigenvalueTable:
    theta: list[Fraction]
    p: list[list[Fraction]]  # p[i][j] = eigenvalue of A_i on the j-th eigenspace
    u: list[list[Fraction]]
    k: list[Fraction]


def eigen_table(d: int, two_e: int, q: int) -> EigenvalueTable:
    k = [valency(i, d, two_e, q) for i in range(d + 1)]
    u = [[u_series(i, j, d, two_e, q) for j in range(d + 1)] for i in range(d + 1)]
    p = [[u[i][j] * k[i] for j in range(d + 1)] for i in range(d + 1)]
    theta = p[1] if d >= 1 else [Fraction(0)]
    for j in range(d + 1):
        if theta[j] != mu(j, d, two_e, q):
            raise ThetaMismatch(f"theta_{j} = {theta[j]} but mu_{j} = {mu(j, d, two_e, q)}")
    return EigenvalueTable(theta=list(theta), p=p, u=u, k=k)


def lambda_from_table(j: int, table: EigenvalueTable, q: int) -> Fraction:
    """sum_{l=j}^{d} [l;j]_q p_{d-l}(j)."""
    d = len(table.k) - 1
    return sum((gauss_binom(l, j, q) * table.p[d - l][j] for l in range(j, d + 1)), Fraction(0))


def lambda1_closed_form(d: int, two_e: int, q: int) -> Fraction:
    """q^(d-1) (1 + q^(e-1)) a_2."""
    return qpow(q, 2 * (d - 1)) * (1 + qpow(q, two_e - 2)) * a_count(2, d, two_e, q)


def newton_identity_check(n: int, t: QPower | Fraction | int, q: int) -> bool:
    """prod_{k<n} (1 + q^k t) == sum_k q^((k^2-k)/2) [n;k]_q t^k."""
    tv = t.value(q) if isinstance(t, QPower) else Fraction(t)
    lhs = Fraction(1)
    for k in range(n):
        lhs *= 1 + Fraction(q) ** k * tv
    rhs = sum(
        (Fraction(q) ** ((k * k - k) // 2) * gauss_binom(n, k, q) * tv ** k for k in range(n + 1)),
        Fraction(0),
    )
    return lhs == rhs
