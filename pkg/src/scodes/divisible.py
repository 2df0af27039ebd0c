"""
Digit expansions over the base sequence sigma_i = (q^(r+1) - q^i)/(q - 1)
and the sharpened floor/ceil brackets built on them.

An integer n is the cardinality of some q^r-divisible multiset of points
over GF(q) exactly when the leading coefficient of its expansion is
non-negative; the brackets scan for the nearest realizable remainder and
power the improved Johnson bound.  Pure functions throughout.
"""

from __future__ import annotations

from dataclasses import dataclass

from .qcombi import gauss_int

NEG_INF = float("-inf")
POS_INF = float("inf")


@dataclass(frozen=True)
class SqrBases:
    q: int
    r: int
    bases: tuple[int, ...]  # sigma_0 .. sigma_r


@dataclass(frozen=True)
class SqrExpansion:
    q: int
    r: int
    coefficients: tuple[int, ...]  # a_0 .. a_r, a_r may be any integer
    value: int

    @property
    def leading(self) -> int:
        return self.coefficients[-1]


def sqr_bases(q: int, r: int) -> SqrBases:
    """sigma_i = (q^(r+1) - q^i)/(q-1) = q^i + q^(i+1) + ... + q^r."""
    if r < 0:
        raise ValueError("r must be >= 0")
    if q < 2:
        raise ValueError("q must be >= 2")
    return SqrBases(q, r, tuple((q ** (r + 1) - q**i) // (q - 1) for i in range(r + 1)))


def sqr_expand(n: int, q: int, r: int) -> SqrExpansion:
    """
    The unique expansion n = sum_i a_i sigma_i with a_0..a_(r-1) in [0, q)
    and integer leading coefficient a_r.
    """
    bases = sqr_bases(q, r).bases
    coeffs = []
    m = n
    for i in range(r):
        a = m % q
        coeffs.append(a)
        m = (m - a * gauss_int(r - i + 1, q)) // q
    coeffs.append(m)
    value = sum(a * s for a, s in zip(coeffs, bases))
    assert value == n, (n, coeffs, bases)
    return SqrExpansion(q, r, tuple(coeffs), n)


def divisible_exists(n: int, q: int, r: int) -> bool:
    """True iff a q^r-divisible multiset of points of cardinality n exists."""
    return sqr_expand(n, q, r).leading >= 0


def _scan_limit(q: int, r: int) -> int:
    # All m >= (q-1) * sum_{i<r} sigma_i are realizable (digits bounded by
    # q-1 force a non-negative leading coefficient), so a scan whose
    # remainders sweep past that threshold must terminate.
    bases = sqr_bases(q, r).bases
    return (q - 1) * sum(bases[:r]) + q ** (r + 1) + 1


def sharp_floor(a: int, b: int, q: int, r: int):
    """
    Largest n such that a - n*b is a realizable q^r-divisible cardinality;
    at most floor(a/b).  The fraction a/b is formal data: no reduction.
    """
    if b <= 0:
        raise ValueError("b must be a positive integer")
    n = a // b
    for _ in range(_scan_limit(q, r)):
        if divisible_exists(a - n * b, q, r):
            return n
        n -= 1
    return NEG_INF  # pragma: no cover - unreachable for b >= 1


def sharp_ceil(a: int, b: int, q: int, r: int):
    """Smallest n such that n*b - a is a realizable q^r-divisible
    cardinality; at least ceil(a/b)."""
    if b <= 0:
        raise ValueError("b must be a positive integer")
    n = -((-a) // b)
    for _ in range(_scan_limit(q, r)):
        if divisible_exists(n * b - a, q, r):
            return n
        n += 1
    return POS_INF  # pragma: no cover - unreachable for b >= 1
