"""
Exact q-analogue combinatorics on arbitrary-precision integers.

Everything here is exact: Gaussian binomials and q-integers as Python ints,
the q-Pochhammer reciprocal as a rational with a proven enclosing interval,
and integer polynomials in the field-size variable q.  All functions are
pure and safe for concurrent use.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


def gauss_int(n: int, q: int) -> int:
    """[n]_q = (q^n - 1)/(q - 1), the number of points of PG(n-1, q)."""
    if q < 2:
        raise ValueError(f"q must be >= 2, got {q}")
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    return (q**n - 1) // (q - 1)


def gauss_binomial(n: int, k: int, q: int) -> int:
    """Number of k-subspaces of an n-space over GF(q); 0 outside 0<=k<=n."""
    if q < 2:
        raise ValueError(f"q must be >= 2, got {q}")
    if k < 0 or n < 0 or k > n:
        return 0
    k = min(k, n - k)
    num = 1
    den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (k - i) - 1
    assert num % den == 0
    return num // den


def count_large_intersection(n: int, m: int, k: int, t: int, q: int) -> int:
    """Number of k-spaces of GF(q)^n meeting a fixed m-space in dimension
    at least k - t."""
    if not (0 <= t <= k <= n and k - t <= m <= n):
        raise ValueError(f"invalid parameters n={n} m={m} k={k} t={t}")
    total = 0
    for i in range(t + 1):
        b = gauss_binomial(m, k - i, q) * gauss_binomial(n - m, i, q)
        if b:  # the binomial vanishes whenever the exponent would be negative
            total += q ** ((m + i - k) * i) * b
    return total


@dataclass(frozen=True)
class PochhammerEnclosure:
    """Exact rational bracket for 1 / prod_{i>=1} (1 - q^-i)."""

    q: int
    terms: int
    partial: Fraction  # reciprocal of the partial product, exact
    low: Fraction
    high: Fraction

    def contains(self, x) -> bool:
        return self.low <= Fraction(x) <= self.high


def qpochhammer_reciprocal_limit(q: int, terms: int) -> PochhammerEnclosure:
    """
    Bracket the reciprocal of the infinite product prod_{i>=1}(1 - q^-i).

    The partial product P_t over the first `terms` factors satisfies
        P_t * (1 - S) <= P_inf <= P_t,  S = sum_{i>t} q^-i = q^-t/(q-1),
    by the Weierstrass product inequality, so the reciprocal lies in
    [1/P_t, 1/(P_t (1 - S))].  All bounds are exact rationals.
    """
    if q < 2:
        raise ValueError(f"q must be >= 2, got {q}")
    if terms < 1:
        raise ValueError("terms must be >= 1")
    partial_prod = Fraction(1)
    for i in range(1, terms + 1):
        partial_prod *= 1 - Fraction(1, q**i)
    tail = Fraction(1, q**terms * (q - 1))
    low = 1 / partial_prod
    high = 1 / (partial_prod * (1 - tail))
    return PochhammerEnclosure(q=q, terms=terms, partial=low, low=low, high=high)


class QPolynomial:
    """Integer polynomial in the field-size variable, low degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[int] = ()):
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def monomial(cls, coeff: int, degree: int) -> "QPolynomial":
        return cls([0] * degree + [coeff])

    def __add__(self, other: "QPolynomial") -> "QPolynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [0] * (n - len(self.coeffs))
        for i, c in enumerate(other.coeffs):
            a[i] += c
        return QPolynomial(a)

    def __sub__(self, other: "QPolynomial") -> "QPolynomial":
        return self + other.scale(-1)

    def __mul__(self, other: "QPolynomial") -> "QPolynomial":
        if not self.coeffs or not other.coeffs:
            return QPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return QPolynomial(out)

    def scale(self, c: int) -> "QPolynomial":
        return QPolynomial([c * x for x in self.coeffs])

    def __call__(self, q: int) -> int:
        return qpoly_eval(self, q)

    def __eq__(self, other) -> bool:
        return isinstance(other, QPolynomial) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for d in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[d]
            if c == 0:
                continue
            if d == 0:
                parts.append(f"{c}")
            else:
                mono = "q" if d == 1 else f"q^{d}"
                if c == 1:
                    parts.append(mono)
                elif c == -1:
                    parts.append(f"-{mono}")
                else:
                    parts.append(f"{c}{mono}")
        s = "+".join(parts).replace("+-", "-")
        return s


def qpoly_eval(P: QPolynomial, q: int) -> int:
    """Exact Horner evaluation."""
    acc = 0
    for c in reversed(P.coeffs):
        acc = acc * q + c
    return acc


def qpoly_parse(text: str) -> QPolynomial:
    """Parse compact sums like 'q^6+2q^2+2q+1' or '-q^3+q-2'."""
    s = text.replace(" ", "").replace("-", "+-")
    terms = [t for t in s.split("+") if t]
    poly = QPolynomial()
    for t in terms:
        sign = 1
        if t.startswith("-"):
            sign = -1
            t = t[1:]
        if "q" in t:
            coeff_s, _, rest = t.partition("q")
            coeff = int(coeff_s) if coeff_s else 1
            if rest.startswith("^"):
                deg = int(rest[1:])
            elif rest == "":
                deg = 1
            else:
                raise ValueError(f"cannot parse term {t!r} in {text!r}")
        else:
            coeff = int(t)
            deg = 0
        poly = poly + QPolynomial.monomial(sign * coeff, deg)
    return poly
