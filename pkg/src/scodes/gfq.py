"""
Exact arithmetic in GF(p^e) for any prime power, plus extension towers.

Field elements are encoded as integers in [0, q) whose base-p digits are the
coefficients of the residue polynomial in the basis {1, x, ..., x^(e-1)}.
For e = 1 the encoding is the residue class mod p.  When q <= 2^16 the field
precomputes log/antilog tables for O(1) multiplication and inversion; above
that it falls back to polynomial arithmetic.

`ExtField` builds GF(q^m) on top of an existing `FieldSpec` GF(q), with
elements stored as coefficient tuples over the base field.  This is the
representation used for linearized-polynomial evaluation, where the
coefficient tuple doubles as the expansion of the element over GF(q).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional, Sequence

_TABLE_LIMIT = 1 << 16


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _trim(poly: Sequence[int]) -> tuple[int, ...]:
    """Drop trailing zero coefficients (highest degrees)."""
    deg = len(poly) - 1
    while deg >= 0 and poly[deg] == 0:
        deg -= 1
    return tuple(poly[: deg + 1])


class FieldSpec:
    """
    GF(p^e) with a fixed monic irreducible modulus of degree e over GF(p).

    Elements are plain ints in [0, q).  All operations take and return these
    int encodings; `element()` wraps one into a `Felt` for operator syntax.
    Instances are immutable after construction and safe to share.
    """

    def __init__(self, p: int, e: int, modulus: Optional[Sequence[int]] = None):
        if not is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        if e < 1:
            raise ValueError(f"extension degree must be >= 1, got {e}")
        self.p = p
        self.e = e
        self.q = p**e
        if modulus is None:
            modulus = _smallest_irreducible(p, e)
        else:
            modulus = tuple(c % p for c in modulus)
            modulus = _trim(modulus)
            if len(modulus) != e + 1:
                raise ValueError(f"modulus must have degree {e}")
            if modulus[-1] != 1:
                raise ValueError("modulus must be monic")
            if e > 1 and not _is_irreducible_mod_p(p, modulus):
                raise ValueError(f"modulus {list(modulus)} is reducible over GF({p})")
        self.modulus = tuple(modulus)
        self._exp: Optional[list[int]] = None
        self._log: Optional[list[int]] = None
        if 2 < self.q <= _TABLE_LIMIT:
            self._build_tables()

    # -- encoding ----------------------------------------------------------

    def coeffs(self, rep: int) -> tuple[int, ...]:
        """Base-p digits of rep, length e (low degree first)."""
        out = []
        for _ in range(self.e):
            out.append(rep % self.p)
            rep //= self.p
        return tuple(out)

    def from_coeffs(self, coeffs: Iterable[int]) -> int:
        rep = 0
        for c in reversed(list(coeffs)):
            rep = rep * self.p + (c % self.p)
        return rep

    # -- arithmetic --------------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        return self.from_coeffs(
            x + y for x, y in zip(self.coeffs(a), self.coeffs(b))
        )

    def neg(self, a: int) -> int:
        if self.e == 1:
            return (-a) % self.p
        if self.p == 2:
            return a
        return self.from_coeffs(-x for x in self.coeffs(a))

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self._exp is not None:
            return self._exp[self._log[a] + self._log[b]]
        if self.e == 1:
            return (a * b) % self.p
        return self._polymul_reduce(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero field element")
        if self._exp is not None:
            return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]
        if self.e == 1:
            return pow(a, self.p - 2, self.p)
        return self.pow(a, self.q - 2)

    def pow(self, a: int, k: int) -> int:
        if k < 0:
            return self.pow(self.inv(a), -k)
        if a == 0:
            return 1 if k == 0 else 0
        k %= self.q - 1
        result = 1
        base = a
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    def frobenius(self, a: int, i: int, base: int) -> int:
        """a^(base^i) where base = p^d is a subfield size (d | e)."""
        p, d = self.p, 0
        b = base
        while b > 1 and b % p == 0:
            b //= p
            d += 1
        if b != 1 or d == 0 or self.e % d != 0:
            raise ValueError(f"{base} is not a subfield size of GF({self.q})")
        if a == 0:
            return 0
        return self.pow(a, pow(base, i, self.q - 1))

    # -- helpers -----------------------------------------------------------

    def element(self, rep: int) -> "Felt":
        if not 0 <= rep < self.q:
            raise ValueError(f"element encoding {rep} out of range [0, {self.q})")
        return Felt(self, rep)

    @property
    def zero(self) -> "Felt":
        return Felt(self, 0)

    @property
    def one(self) -> "Felt":
        return Felt(self, 1)

    def elements(self):
        return (Felt(self, r) for r in range(self.q))

    def _polymul_reduce(self, a: int, b: int) -> int:
        p, e = self.p, self.e
        ca, cb = self.coeffs(a), self.coeffs(b)
        prod = [0] * (2 * e - 1)
        for i, x in enumerate(ca):
            if x:
                for j, y in enumerate(cb):
                    prod[i + j] = (prod[i + j] + x * y) % p
        # reduce modulo the monic modulus
        for deg in range(2 * e - 2, e - 1, -1):
            c = prod[deg]
            if c:
                prod[deg] = 0
                for j in range(self.e):
                    prod[deg - self.e + j] = (prod[deg - self.e + j] - c * self.modulus[j]) % p
        return self.from_coeffs(prod[:e])

    def _build_tables(self) -> None:
        # If g^i != 1 for 1 <= i < q-1 then g generates the (cyclic)
        # multiplicative group, since any proper order would divide q-1.
        q = self.q
        for g in range(2, q):
            exp = [1] * (2 * q)
            x = 1
            ok = True
            for i in range(1, q - 1):
                x = self._raw_mul(g, x)
                if x == 1:
                    ok = False
                    break
                exp[i] = x
            if ok:
                log = [0] * q
                for i in range(q - 1):
                    log[exp[i]] = i
                for i in range(q - 1, 2 * q):
                    exp[i] = exp[i - (q - 1)]
                self._exp, self._log = exp, log
                return
        raise RuntimeError(f"no generator found for GF({q})")  # pragma: no cover

    def _raw_mul(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a * b) % self.p
        return self._polymul_reduce(a, b)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FieldSpec)
            and self.p == other.p
            and self.e == other.e
            and self.modulus == other.modulus
        )

    def __hash__(self) -> int:
        return hash((self.p, self.e, self.modulus))

    def __repr__(self) -> str:
        if self.e == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.e})"


@dataclass(frozen=True)
class Felt:
    """A field element: a `FieldSpec` reference plus its int encoding."""

    field: FieldSpec
    rep: int

    def _check(self, other: "Felt") -> None:
        if self.field != other.field:
            raise ValueError("mixed-field arithmetic")

    def __add__(self, other: "Felt") -> "Felt":
        self._check(other)
        return Felt(self.field, self.field.add(self.rep, other.rep))

    def __sub__(self, other: "Felt") -> "Felt":
        self._check(other)
        return Felt(self.field, self.field.sub(self.rep, other.rep))

    def __mul__(self, other: "Felt") -> "Felt":
        self._check(other)
        return Felt(self.field, self.field.mul(self.rep, other.rep))

    def __neg__(self) -> "Felt":
        return Felt(self.field, self.field.neg(self.rep))

    def inv(self) -> "Felt":
        return Felt(self.field, self.field.inv(self.rep))

    def __pow__(self, k: int) -> "Felt":
        return Felt(self.field, self.field.pow(self.rep, k))

    def frobenius(self, i: int, base: Optional[int] = None) -> "Felt":
        base = self.field.p if base is None else base
        return Felt(self.field, self.field.frobenius(self.rep, i, base))

    def __bool__(self) -> bool:
        return self.rep != 0


def field_create(p: int, e: int, modulus: Optional[Sequence[int]] = None) -> FieldSpec:
    """GF(p^e); modulus defaults to the lexicographically smallest monic
    irreducible of degree e (coefficients compared low-degree-first)."""
    return FieldSpec(p, e, modulus)


@lru_cache(maxsize=None)
def GF(q: int) -> FieldSpec:
    """The default field of order q (q a prime power)."""
    p, e = _factor_prime_power(q)
    return FieldSpec(p, e)


def _factor_prime_power(q: int) -> tuple[int, int]:
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    for p in range(2, q + 1):
        if q % p == 0:
            e = 0
            m = q
            while m % p == 0:
                m //= p
                e += 1
            if m != 1:
                raise ValueError(f"{q} is not a prime power")
            return p, e
    raise ValueError(f"{q} is not a prime power")  # pragma: no cover


# -- polynomials over GF(p), coefficient tuples low-degree-first ------------


def _polydiv_mod_p(p: int, num: Sequence[int], den: Sequence[int]):
    num = list(num)
    dd = len(den) - 1
    inv_lead = pow(den[-1], p - 2, p)
    quot = [0] * max(1, len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        c = (num[i] * inv_lead) % p
        if c:
            quot[i - dd] = c
            for j in range(dd + 1):
                num[i - dd + j] = (num[i - dd + j] - c * den[j]) % p
    return quot, _trim(num)


def _is_irreducible_mod_p(p: int, poly: Sequence[int]) -> bool:
    """Trial division by all monic polynomials of degree <= deg/2."""
    deg = len(poly) - 1
    if deg == 1:
        return True
    if poly[0] == 0:  # divisible by x
        return False
    for d in range(1, deg // 2 + 1):
        for rep in range(p**d):
            cand = []
            r = rep
            for _ in range(d):
                cand.append(r % p)
                r //= p
            cand.append(1)
            _, rem = _polydiv_mod_p(p, poly, cand)
            if not rem:
                return False
    return True


@lru_cache(maxsize=None)
def _smallest_irreducible(p: int, e: int) -> tuple[int, ...]:
    if e == 1:
        return (0, 1)  # the polynomial x: arithmetic is plain mod p
    for rep in range(p**e):
        cand = []
        r = rep
        for _ in range(e):
            cand.append(r % p)
            r //= p
        cand.append(1)
        if _is_irreducible_mod_p(p, cand):
            return tuple(cand)
    raise RuntimeError(f"no irreducible of degree {e} over GF({p})")  # pragma: no cover


# -- extension fields over an arbitrary FieldSpec ----------------------------


def poly_mul(F: FieldSpec, a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    if not a or not b:
        return ()
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    prod[i + j] = F.add(prod[i + j], F.mul(x, y))
    return _trim(prod)


def poly_divmod(F: FieldSpec, num: Sequence[int], den: Sequence[int]):
    num = list(num)
    den = _trim(den)
    dd = len(den) - 1
    inv_lead = F.inv(den[-1])
    quot = [0] * max(1, len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        c = F.mul(num[i], inv_lead)
        if c:
            quot[i - dd] = c
            for j in range(dd + 1):
                num[i - dd + j] = F.sub(num[i - dd + j], F.mul(c, den[j]))
    return _trim(quot), _trim(num)


def poly_irreducible_over(F: FieldSpec, poly: Sequence[int]) -> bool:
    poly = _trim(poly)
    deg = len(poly) - 1
    if deg < 1:
        return False
    if deg == 1:
        return True
    if poly[0] == 0:
        return False
    for d in range(1, deg // 2 + 1):
        for rep in range(F.q**d):
            cand = []
            r = rep
            for _ in range(d):
                cand.append(r % F.q)
                r //= F.q
            cand.append(1)
            _, rem = poly_divmod(F, poly, cand)
            if not rem:
                return False
    return True


def find_irreducible_over(F: FieldSpec, degree: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of the given degree."""
    if degree == 1:
        return (0, 1)
    for rep in range(F.q**degree):
        cand = []
        r = rep
        for _ in range(degree):
            cand.append(r % F.q)
            r //= F.q
        cand.append(1)
        if poly_irreducible_over(F, cand):
            return tuple(cand)
    raise RuntimeError("no irreducible found")  # pragma: no cover


class ExtField:
    """
    GF(q^m) as polynomials over a base `FieldSpec` GF(q).

    Elements are tuples of m base-field encodings (low degree first); the
    tuple itself is the coordinate vector with respect to the polynomial
    basis (1, x, ..., x^(m-1)), which is what lifted matrix expansions use.
    """

    def __init__(self, base: FieldSpec, m: int, modulus: Optional[Sequence[int]] = None):
        if m < 1:
            raise ValueError("extension degree must be >= 1")
        self.base = base
        self.m = m
        self.size = base.q**m
        self.modulus = tuple(modulus) if modulus is not None else find_irreducible_over(base, m)
        if len(self.modulus) != m + 1 or self.modulus[-1] != 1:
            raise ValueError(f"modulus must be monic of degree {m}")
        self.zero = (0,) * m
        self.one = tuple([1] + [0] * (m - 1)) if m > 1 else (1,)

    def basis(self, i: int) -> tuple[int, ...]:
        """The basis monomial x^i, 0 <= i < m."""
        out = [0] * self.m
        out[i] = 1
        return tuple(out)

    def add(self, a, b):
        F = self.base
        return tuple(F.add(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        F = self.base
        return tuple(F.sub(x, y) for x, y in zip(a, b))

    def scal(self, c: int, a):
        F = self.base
        return tuple(F.mul(c, x) for x in a)

    def mul(self, a, b):
        prod = poly_mul(self.base, a, b)
        if len(prod) >= len(self.modulus):
            _, prod = poly_divmod(self.base, prod, self.modulus)
        return tuple(prod) + (0,) * (self.m - len(prod))

    def pow_int(self, a, k: int):
        result = self.one
        base = a
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    def frobenius_q(self, a):
        """a^q, the base-field Frobenius of the extension."""
        return self.pow_int(a, self.base.q)

    def elements(self):
        F = self.base
        for rep in range(self.size):
            coeffs = []
            r = rep
            for _ in range(self.m):
                coeffs.append(r % F.q)
                r //= F.q
            yield tuple(coeffs)
