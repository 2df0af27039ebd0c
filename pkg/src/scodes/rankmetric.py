"""
Rank-metric code machinery: maximum-size bounds, the evaluation-code
construction of linear MRD codes, rank distributions of additive MRD codes,
restricted-rank lower bounds, coset partitions, product and diagonal
combiners, sum-rank codes, and Ferrers-diagram rank-metric codes.

Explicit codes are materialized as tuples of matrices; constructions that
would exceed the materialization cap raise instead of thrashing.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Optional, Sequence

from .gfq import GF, ExtField, FieldSpec
from .provenance import BoundResult
from .qcombi import gauss_binomial
from .spaces import FerrersDiagram, MatGF, rank, rref

MATERIALIZE_CAP = 1 << 21


@dataclass(frozen=True)
class RankCode:
    """A set of m x n matrices over GF(q) with declared min rank distance d.

    rank_set, when present, is the set of ranks the words are allowed to
    take (checked by `validate`, relied on by the linkage-style
    constructions)."""

    field: FieldSpec
    m: int
    n: int
    d: int
    words: tuple[MatGF, ...]
    rank_set: Optional[frozenset[int]] = None

    def __len__(self) -> int:
        return len(self.words)

    def validate(self, exhaustive_pairs: bool = True) -> None:
        for w in self.words:
            if (w.rows, w.cols) != (self.m, self.n):
                raise ValueError("word shape mismatch")
            if self.rank_set is not None and rank(w) not in self.rank_set:
                raise ValueError("word rank outside declared rank set")
        if exhaustive_pairs and len(self.words) > 1:
            for a, b in itertools.combinations(self.words, 2):
                if rank_distance(a, b) < self.d:
                    raise ValueError("declared min rank distance violated")


def rank_distance(A: MatGF, B: MatGF) -> int:
    return rank(A.sub(B))


def mrd_size(q: int, m: int, n: int, d: int) -> int:
    """Largest possible cardinality of an (m x n, d) rank-metric code."""
    if min(m, n, d) < 1:
        raise ValueError("m, n, d must be >= 1")
    if d > min(m, n):
        return 1
    return q ** (max(m, n) * (min(m, n) - d + 1))


def _ext_elements_list(E: ExtField) -> list[tuple[int, ...]]:
    return list(E.elements())


def gabidulin(q: int, n: int, m: int, d: int, cap: int = MATERIALIZE_CAP) -> RankCode:
    """
    Linear MRD code of m x n matrices over GF(q) with min rank distance d,
    1 <= d <= m <= n.

    Words are the evaluations of the polynomials sum_j f_j z^(q^j) of
    q-degree <= m-d at the first m monomials of the polynomial basis of
    GF(q^n) over GF(q); each value's coefficient tuple is one matrix row.
    """
    if not (1 <= d <= m <= n):
        raise ValueError(f"need 1 <= d <= m <= n, got d={d} m={m} n={n}")
    base = GF(q)
    E = ExtField(base, n)
    k = m - d + 1
    size = q ** (n * k)
    if size > cap:
        raise ValueError(f"code size {size} exceeds materialization cap {cap}")
    pow_table = []
    for i in range(m):
        z = E.basis(i)
        row = [z]
        for _ in range(1, k):
            row.append(E.frobenius_q(row[-1]))
        pow_table.append(row)
    elements = _ext_elements_list(E)
    words = []
    for coeffs in itertools.product(elements, repeat=k):
        rows = []
        for i in range(m):
            acc = E.zero
            for j in range(k):
                if any(coeffs[j]):
                    acc = E.add(acc, E.mul(coeffs[j], pow_table[i][j]))
            rows.append(acc)
        words.append(MatGF(base, rows, n))
    return RankCode(base, m, n, d, tuple(words))


def rect_mrd(q: int, rows: int, cols: int, d: int, cap: int = MATERIALIZE_CAP) -> RankCode:
    """MRD code of a rows x cols rectangle, transposing when rows > cols.

    For d > min(rows, cols) the only possibility is a single word."""
    if d > min(rows, cols):
        zero = MatGF.zero(GF(q), rows, cols)
        return RankCode(GF(q), rows, cols, d, (zero,))
    if rows <= cols:
        return gabidulin(q, cols, rows, d, cap)
    inner = gabidulin(q, rows, cols, d, cap)
    words = tuple(w.transpose() for w in inner.words)
    return RankCode(inner.field, rows, cols, d, words)


def rank_distribution(q: int, m: int, n: int, d: int, r: int) -> int:
    """Number of words of rank r in an additive MRD (m x n, d) code."""
    lo, hi = min(m, n), max(m, n)
    if r == 0:
        return 1
    if r < 0 or r > lo:
        return 0
    if r < d:
        return 0
    total = 0
    for s in range(r - d + 1):
        term = (-1) ** s * q ** comb(s, 2) * gauss_binomial(r, s, q) * (q ** (hi * (r - d - s + 1)) - 1)
        total += term
    return gauss_binomial(lo, r, q) * total


def _ceil_frac(f: Fraction) -> int:
    return -((-f.numerator) // f.denominator)


def restricted_rank_lower_bound(q: int, m: int, n: int, d: int, R: Iterable[int]) -> BoundResult:
    """
    Best available lower bound on the size of an (m x n, d) rank-metric
    code whose word ranks lie in R: the additive-MRD rank-count, two
    pigeonhole/coset averages, and the exact constant-rank value when R is
    a singleton with d <= r+1.
    """
    R = sorted(set(R))
    candidates: list[BoundResult] = []

    direct = sum(rank_distribution(q, m, n, d, r) for r in R)
    candidates.append(BoundResult(direct, "restricted-rank:additive-count",
                                  "rank counts in an additive MRD code"))

    size_d = mrd_size(q, m, n, d)
    for dprime in range(1, d + 1):
        tally = sum(rank_distribution(q, m, n, dprime, r) for r in R)
        ratio = Fraction(size_d, mrd_size(q, m, n, dprime))
        val = _ceil_frac(ratio * tally)
        candidates.append(BoundResult(val, "restricted-rank:coset-average",
                                      f"pigeonhole over cosets, inner distance {dprime}"))
    for dprime in range(1, d):
        alpha = Fraction(mrd_size(q, m, n, dprime), size_d)
        if alpha <= 1:
            continue
        diff = sum(
            rank_distribution(q, m, n, dprime, r) - rank_distribution(q, m, n, d, r) for r in R
        )
        val = _ceil_frac(Fraction(diff) / (alpha - 1))
        candidates.append(BoundResult(val, "restricted-rank:nonzero-coset-average",
                                      f"pigeonhole excluding the zero coset, inner distance {dprime}"))

    if len(R) == 1:
        r = R[0]
        if 1 <= r <= min(m, n) and d <= r + 1:
            val = gauss_binomial(min(m, n), r, q)
            rule = "restricted-rank:constant-rank-exact" if d == r + 1 else "restricted-rank:constant-rank"
            candidates.append(BoundResult(val, rule, "constant-rank code value"))

    best = max(candidates, key=lambda b: b.value)
    return BoundResult(best.value, best.rule, best.citation, tuple(candidates))


def restricted_rank_code(q: int, m: int, n: int, d: int, R: Iterable[int], cap: int = MATERIALIZE_CAP) -> RankCode:
    """Materialize a rank-restricted code by filtering an explicit MRD code
    (size permitting); realizes the additive-count lower bound."""
    R = frozenset(R)
    base_code = rect_mrd(q, m, n, d, cap)
    words = tuple(w for w in base_code.words if rank(w) in R)
    return RankCode(base_code.field, m, n, d, words, rank_set=R)


def mrd_coset_partition(q: int, m: int, n: int, d: int, dprime: int, cap: int = MATERIALIZE_CAP) -> list[RankCode]:
    """
    Partition a distance-d linear MRD code of m x n matrices (m <= n) into
    cosets of its distance-d' subcode: each coset keeps min distance >= d',
    distinct cosets stay >= d apart, and the union is the whole code.
    """
    if not (1 <= d <= dprime <= m <= n):
        raise ValueError("need 1 <= d <= d' <= m <= n")
    base = GF(q)
    E = ExtField(base, n)
    k = m - d + 1
    kp = m - dprime + 1
    if q ** (n * k) > cap:
        raise ValueError("code too large to materialize")
    pow_table = []
    for i in range(m):
        z = E.basis(i)
        row = [z]
        for _ in range(1, k):
            row.append(E.frobenius_q(row[-1]))
        pow_table.append(row)

    def evaluate(coeffs):
        rows = []
        for i in range(m):
            acc = E.zero
            for j, c in enumerate(coeffs):
                if any(c):
                    acc = E.add(acc, E.mul(c, pow_table[i][j]))
            rows.append(acc)
        return MatGF(base, rows, n)

    elements = _ext_elements_list(E)
    zero = E.zero
    sub_words = [evaluate(c + (zero,) * (k - kp)) for c in itertools.product(elements, repeat=kp)]
    cosets = []
    for high in itertools.product(elements, repeat=k - kp):
        rep = evaluate((zero,) * kp + high)
        words = []
        for w in sub_words:
            F = base
            rows = [tuple(F.add(a, b) for a, b in zip(ra, rb)) for ra, rb in zip(rep.entries, w.entries)]
            words.append(MatGF(base, rows, n))
        cosets.append(RankCode(base, m, n, dprime, tuple(words)))
    return cosets


def product_rmc(codes: Sequence[RankCode], cap: int = MATERIALIZE_CAP) -> RankCode:
    """Horizontal concatenation of all word tuples; distance >= min d_i."""
    if not codes:
        raise ValueError("need at least one factor")
    k = codes[0].m
    field = codes[0].field
    if any(c.m != k or c.field != field for c in codes):
        raise ValueError("row count or field mismatch")
    total = 1
    for c in codes:
        total *= len(c)
    if total > cap:
        raise ValueError("product too large to materialize")
    d = min(c.d for c in codes)
    words = []
    for combo in itertools.product(*(c.words for c in codes)):
        entries = [sum((list(w.entries[i]) for w in combo), []) for i in range(k)]
        words.append(MatGF(field, entries, sum(c.n for c in codes)))
    return RankCode(field, k, sum(c.n for c in codes), d, tuple(words))


def diag_concat_rmc(M1: RankCode, M2: RankCode) -> RankCode:
    """Block-diagonal pairing by enumeration index; distance >= d1 + d2."""
    if M1.field != M2.field:
        raise ValueError("field mismatch")
    field = M1.field
    k, n = M1.m + M2.m, M1.n + M2.n
    words = []
    for a, b in zip(M1.words, M2.words):
        rows = [tuple(r) + (0,) * M2.n for r in a.entries]
        rows += [(0,) * M1.n + tuple(r) for r in b.entries]
        words.append(MatGF(field, rows, n))
    return RankCode(field, k, n, M1.d + M2.d, tuple(words))


# -- sum-rank codes ----------------------------------------------------------


@dataclass(frozen=True)
class SumRankCode:
    field: FieldSpec
    shapes: tuple[tuple[int, int], ...]
    d: int
    words: tuple[tuple[MatGF, ...], ...]
    rank_set: Optional[frozenset[int]] = None

    def __len__(self) -> int:
        return len(self.words)


def sum_rank(word: Sequence[MatGF]) -> int:
    return sum(rank(m) for m in word)


def sumrank_distance(x: Sequence[MatGF], y: Sequence[MatGF]) -> int:
    return sum(rank(a.sub(b)) for a, b in zip(x, y))


def _setsum(R1, R2):
    if R1 is None or R2 is None:
        return None
    return frozenset(a + b for a in R1 for b in R2)


def sumrank_product(M1: RankCode, M2: RankCode, d: int, cap: int = MATERIALIZE_CAP) -> SumRankCode:
    """All pairs (A, B); sum-rank distance >= min(d1, d2) >= d."""
    if min(M1.d, M2.d) < d:
        raise ValueError("factors do not support the requested distance")
    if len(M1) * len(M2) > cap:
        raise ValueError("product too large to materialize")
    words = tuple((a, b) for a in M1.words for b in M2.words)
    return SumRankCode(M1.field, ((M1.m, M1.n), (M2.m, M2.n)), d, words,
                       _setsum(M1.rank_set, M2.rank_set))


def sumrank_pair(M1: RankCode, M2: RankCode) -> SumRankCode:
    """Index-paired tuples; sum-rank distance >= d1 + d2."""
    words = tuple((a, b) for a, b in zip(M1.words, M2.words))
    return SumRankCode(M1.field, ((M1.m, M1.n), (M2.m, M2.n)), M1.d + M2.d, words,
                       _setsum(M1.rank_set, M2.rank_set))


def two_block_sumrank_code(q: int) -> SumRankCode:
    """
    A ((3x3, 3x3), distance-3) sum-rank code with all sum-ranks <= 3 and
    cardinality q^5 + q^4 + 2q^3 - q^2 - q, assembled from three pieces:

      * the zero tuple;
      * all rank-1 left blocks index-paired with the rank-2 words of an
        additive (3x3, 2) MRD code;
      * the q^3 - 1 invertible multiplication matrices paired with zero,
        topped up by (0, D) for a rank-3 word D of the same MRD code.

    The final word replaces the zero word that a plain product with the
    full multiplication-matrix code would duplicate; D's membership in the
    distance-2 MRD code keeps it >= 2 away from every rank-2 right block.
    """
    base = GF(q)
    zero3 = MatGF.zero(base, 3, 3)

    # rank-1 matrices: outer products of projective u with nonzero v
    rank_one = []
    vecs = [v for v in itertools.product(range(q), repeat=3) if any(v)]
    proj = [v for v in vecs if v[next(i for i, x in enumerate(v) if x)] == 1]
    for u in proj:
        for v in vecs:
            rows = [tuple(base.mul(a, b) for b in v) for a in u]
            rank_one.append(MatGF(base, rows, 3))
    left = RankCode(base, 3, 3, 1, tuple(rank_one), rank_set=frozenset({1}))

    mrd2 = gabidulin(q, 3, 3, 2)
    rank_two = tuple(w for w in mrd2.words if rank(w) == 2)
    right = RankCode(base, 3, 3, 2, rank_two, rank_set=frozenset({2}))
    assert len(left) == len(right)
    middle = sumrank_pair(left, right)

    mono = gabidulin(q, 3, 3, 3)
    invertible = tuple(w for w in mono.words if rank(w) == 3)
    d_word = next(w for w in mrd2.words if rank(w) == 3)

    words = [(zero3, zero3)]
    words.extend(middle.words)
    words.extend((w, zero3) for w in invertible)
    words.append((zero3, d_word))
    return SumRankCode(base, ((3, 3), (3, 3)), 3, tuple(words), frozenset({0, 1, 2, 3}))


# -- Ferrers-diagram rank-metric codes ---------------------------------------


@dataclass(frozen=True)
class FdrmCode:
    """Words are num_rows x num_cols matrices supported inside the
    (right-justified) diagram."""

    diagram: FerrersDiagram
    delta: int
    field: FieldSpec
    words: tuple[MatGF, ...]

    def __len__(self) -> int:
        return len(self.words)


def fdrm_upper_bound(F: FerrersDiagram, delta: int, q: int) -> int:
    """q to the minimum, over 0 <= i < delta, of the number of dots neither
    in the first i rows nor in the last delta-1-i columns."""
    if delta < 1:
        raise ValueError("delta must be >= 1")
    best = None
    for i in range(delta):
        trim = delta - 1 - i
        nu = sum(max(0, l - trim) for l in F.row_lengths[i:])
        best = nu if best is None else min(best, nu)
    return q**best


def _fillings_to_words(field: FieldSpec, F: FerrersDiagram, vectors: Iterable[Sequence[int]]) -> tuple[MatGF, ...]:
    cells = F.cells()
    k, m = F.num_rows, F.num_cols
    words = []
    for vec in vectors:
        rows = [[0] * m for _ in range(k)]
        for (i, j), x in zip(cells, vec):
            rows[i][j] = x
        words.append(MatGF(field, rows, m))
    return tuple(words)


def _span_vectors(field: FieldSpec, basis: Sequence[Sequence[int]]):
    q = field.q
    for coeffs in itertools.product(range(q), repeat=len(basis)):
        v = [0] * (len(basis[0]) if basis else 0)
        for c, b in zip(coeffs, basis):
            if c:
                for idx, x in enumerate(b):
                    if x:
                        v[idx] = field.add(v[idx], field.mul(c, x))
        yield v


def _fdrm_delta2(F: FerrersDiagram, q: int, cap: int) -> tuple[MatGF, ...]:
    """
    Distance-2 code meeting the dot-count bound: the kernel of one
    GF(q^t)-valued check, t = max(top row, last column).

    Cell (i, j) gets coefficient x^i * g_j in GF(q^t) with g_j = x^j; the
    g_j are independent over GF(q), so a rank-one filling u v^T maps to
    u * sum_j v_j g_j != 0 and is excluded, while the check is onto.
    """
    field = GF(q)
    cells = F.cells()
    nonzero_rows = sum(1 for l in F.row_lengths if l > 0)
    t = max(F.num_cols, nonzero_rows)
    E = ExtField(field, t)
    coeff = []
    for (i, j) in cells:
        coeff.append(E.mul(E.basis(i), E.basis(j)))
    # t x #dots system over GF(q)
    A = MatGF(field, [[c[s] for c in coeff] for s in range(t)], len(cells))
    Ech, pivots = rref(A)
    assert len(pivots) == t, "check map unexpectedly not onto"
    pivset = set(pivots)
    free = [j for j in range(len(cells)) if j not in pivset]
    if q ** len(free) > cap:
        raise ValueError("distance-2 diagram code too large to materialize")
    basis = []
    for f in free:
        v = [0] * len(cells)
        v[f] = 1
        for row, p in zip(Ech.entries, pivots):
            v[p] = field.neg(row[f])
        basis.append(v)
    return _fillings_to_words(field, F, _span_vectors(field, basis))


def _fdrm_rect_subcode(F: FerrersDiagram, delta: int, q: int, cap: int) -> tuple[MatGF, ...]:
    """MRD code on the best rectangular sub-diagram (top r rows times the
    r-th row length, right justified) -- the cheap all-purpose fallback."""
    field = GF(q)
    lengths = [l for l in F.row_lengths if l > 0]
    best = (1, 1, lengths[0] if lengths else 0)
    for r in range(1, len(lengths) + 1):
        width = lengths[r - 1]
        size = mrd_size(q, r, width, delta) if width else 1
        if size > best[0]:
            best = (size, r, width)
    _, r, width = best
    inner = rect_mrd(q, r, width, delta, cap)
    words = []
    for w in inner.words:
        rows = [(0,) * (F.num_cols - width) + tuple(row) for row in w.entries]
        rows += [(0,) * F.num_cols] * (F.num_rows - r)
        words.append(MatGF(field, rows, F.num_cols))
    return tuple(words)


def _fdrm_greedy(F: FerrersDiagram, delta: int, q: int, cap: int) -> tuple[MatGF, ...]:
    """Greedy linear span over the diagram cells; best-effort for small
    diagrams when no direct construction applies."""
    field = GF(q)
    dots = F.dot_count()
    if q**dots > 1 << 16:
        return _fdrm_rect_subcode(F, delta, q, cap)
    cells = F.cells()
    k, m = F.num_rows, F.num_cols

    def vec_rank(v):
        rows = [[0] * m for _ in range(k)]
        for (i, j), x in zip(cells, v):
            rows[i][j] = x
        return rank(MatGF(field, rows, m))

    basis: list[list[int]] = []
    span = [[0] * dots]
    for counter in range(1, q**dots):
        cand = []
        c = counter
        for _ in range(dots):
            cand.append(c % q)
            c //= q
        ok = True
        for s in span:
            for lam in range(1, q):
                w = [field.add(field.mul(lam, a), b) for a, b in zip(cand, s)]
                if vec_rank(w) < delta:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            basis.append(cand)
            new_span = list(span)
            for lam in range(1, q):
                scaled = [field.mul(lam, a) for a in cand]
                for s in span:
                    new_span.append([field.add(x, y) for x, y in zip(scaled, s)])
            span = new_span
            if len(span) > cap:
                break
    rect = _fdrm_rect_subcode(F, delta, q, cap)
    if len(rect) > len(span):
        return rect
    return _fillings_to_words(field, F, span)


def fdrm_construct(F: FerrersDiagram, delta: int, q: int, cap: int = MATERIALIZE_CAP) -> FdrmCode:
    """
    Construct a diagram-supported code with min rank distance >= delta.

    Meets the dot-count upper bound for delta = 1 (all fillings),
    rectangular diagrams (MRD, transposed as needed), and delta = 2
    (kernel-check construction); otherwise falls back to a greedy search
    over small diagrams and returns the best found.
    """
    field = GF(q)
    bound = fdrm_upper_bound(F, delta, q)
    effective = [l for l in F.row_lengths if l > 0]
    if bound == 1 or not effective:
        zero = MatGF.zero(field, F.num_rows, F.num_cols)
        return FdrmCode(F, delta, field, (zero,))
    if delta == 1:
        if q ** F.dot_count() > cap:
            raise ValueError("full diagram space too large to materialize")
        vectors = itertools.product(range(q), repeat=F.dot_count())
        return FdrmCode(F, delta, field, _fillings_to_words(field, F, vectors))
    if len(set(effective)) == 1:
        kk, mm = len(effective), effective[0]
        inner = rect_mrd(q, kk, mm, delta, cap)
        pad = F.num_rows - kk
        words = []
        for w in inner.words:
            rows = list(w.entries) + [(0,) * mm] * pad
            words.append(MatGF(field, rows, mm))
        return FdrmCode(F, delta, field, tuple(words))
    if delta == 2:
        return FdrmCode(F, delta, field, _fdrm_delta2(F, q, cap))
    return FdrmCode(F, delta, field, _fdrm_greedy(F, delta, q, cap))
