"""
Exact linear algebra over GF(q): matrices, reduced row echelon form,
subspaces with canonical generators, distances, duals, pivot vectors,
Ferrers diagrams, and deterministic Grassmannian enumeration.

A subspace's identity is its unique RREF generator matrix; equality and
hashing go through it.  Binary matrices additionally carry a bit-packed
row representation (bit j of a row int is column j) used by the fast rank
and distance paths; semantics are identical to the generic path.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence

from .gfq import GF, FieldSpec
from .qcombi import gauss_binomial

DEFAULT_ENUM_CAP = 10**7


class MatGF:
    """Immutable matrix over a FieldSpec; entries are int encodings."""

    __slots__ = ("field", "rows", "cols", "entries")

    def __init__(self, field: FieldSpec, entries: Sequence[Sequence[int]], cols: Optional[int] = None):
        rows = [tuple(r) for r in entries]
        if rows:
            cols = len(rows[0]) if cols is None else cols
            if any(len(r) != cols for r in rows):
                raise ValueError("ragged matrix")
        elif cols is None:
            cols = 0
        self.field = field
        self.rows = len(rows)
        self.cols = cols
        self.entries = tuple(rows)

    @classmethod
    def zero(cls, field: FieldSpec, rows: int, cols: int) -> "MatGF":
        return cls(field, [(0,) * cols] * rows, cols)

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "MatGF":
        return cls(field, [tuple(1 if i == j else 0 for j in range(n)) for i in range(n)], n)

    def __getitem__(self, ij) -> int:
        i, j = ij
        return self.entries[i][j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i]

    def transpose(self) -> "MatGF":
        return MatGF(self.field, list(zip(*self.entries)) if self.entries else [], self.rows)

    def hstack(self, other: "MatGF") -> "MatGF":
        if self.rows != other.rows:
            raise ValueError("row count mismatch")
        return MatGF(self.field, [a + b for a, b in zip(self.entries, other.entries)], self.cols + other.cols)

    def vstack(self, other: "MatGF") -> "MatGF":
        if self.cols != other.cols:
            raise ValueError("column count mismatch")
        return MatGF(self.field, self.entries + other.entries, self.cols)

    def sub(self, other: "MatGF") -> "MatGF":
        if (self.rows, self.cols) != (other.rows, other.cols) or self.field != other.field:
            raise ValueError("shape or field mismatch")
        F = self.field
        return MatGF(
            self.field,
            [tuple(F.sub(a, b) for a, b in zip(ra, rb)) for ra, rb in zip(self.entries, other.entries)],
            self.cols,
        )

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MatGF)
            and self.field == other.field
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self) -> int:
        return hash((self.field, self.cols, self.entries))

    def __repr__(self) -> str:
        body = "\n".join(" ".join(str(x) for x in r) for r in self.entries)
        return f"MatGF({self.field}, {self.rows}x{self.cols})\n{body}"


def rref(M: MatGF) -> tuple[MatGF, list[int]]:
    """Reduced row echelon form and pivot column indices (deterministic)."""
    F = M.field
    rows = [list(r) for r in M.entries]
    nrows, ncols = M.rows, M.cols
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        sel = None
        for i in range(r, nrows):
            if rows[i][c]:
                sel = i
                break
        if sel is None:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        inv = F.inv(rows[r][c])
        if inv != 1:
            rows[r] = [F.mul(inv, x) for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return MatGF(F, rows, ncols), pivots


def rank(M: MatGF) -> int:
    if M.field.q == 2:
        return _rank_bits([_pack_row(r) for r in M.entries])
    return len(rref(M)[1])


def _pack_row(row: Sequence[int]) -> int:
    word = 0
    for j, x in enumerate(row):
        if x:
            word |= 1 << j
    return word


def _unpack_row(word: int, ncols: int) -> tuple[int, ...]:
    return tuple((word >> j) & 1 for j in range(ncols))


def _rank_bits(words: Iterable[int]) -> int:
    basis: dict[int, int] = {}
    r = 0
    for w in words:
        while w:
            low = w & -w
            if low in basis:
                w ^= basis[low]
            else:
                basis[low] = w
                r += 1
                break
    return r


def _joint_rank_bits_capped(basis: dict[int, int], words: Iterable[int], base_rank: int, cap: int) -> int:
    """Rank of basis + words, stopping early once it reaches cap."""
    r = base_rank
    for w in words:
        while w:
            low = w & -w
            if low in basis:
                w ^= basis[low]
            else:
                basis[low] = w
                r += 1
                if r >= cap:
                    return r
                break
    return r


@dataclass(frozen=True)
class FerrersDiagram:
    """Right-justified dot diagram; row_lengths top to bottom (weakly
    decreasing when derived from a pivot vector)."""

    row_lengths: tuple[int, ...]

    @property
    def num_rows(self) -> int:
        return len(self.row_lengths)

    @property
    def num_cols(self) -> int:
        return max(self.row_lengths, default=0)

    def dot_count(self) -> int:
        return sum(self.row_lengths)

    def cells(self) -> list[tuple[int, int]]:
        """Dot coordinates (row, col) in the num_rows x num_cols bounding
        box; row i occupies the rightmost row_lengths[i] columns."""
        m = self.num_cols
        return [(i, j) for i, l in enumerate(self.row_lengths) for j in range(m - l, m)]

    def rectangular(self) -> bool:
        return len(set(self.row_lengths)) <= 1


class Subspace:
    """A k-subspace of GF(q)^n held by its canonical RREF generator."""

    __slots__ = ("field", "ambient_n", "k", "rref", "pivot", "_bits", "_hash")

    def __init__(self, field: FieldSpec, ambient_n: int, rref_rows: Sequence[Sequence[int]], pivots: Sequence[int]):
        self.field = field
        self.ambient_n = ambient_n
        self.k = len(rref_rows)
        self.rref = MatGF(field, rref_rows, ambient_n)
        self.pivot = tuple(1 if j in set(pivots) else 0 for j in range(ambient_n))
        if field.q == 2:
            self._bits = tuple(_pack_row(r) for r in rref_rows)
        else:
            self._bits = None
        self._hash = hash((field, ambient_n, self.rref.entries))

    @classmethod
    def from_matrix(cls, M: MatGF) -> "Subspace":
        E, pivots = rref(M)
        return cls(M.field, M.cols, E.entries[: len(pivots)], pivots)

    @classmethod
    def from_rref(cls, field: FieldSpec, ambient_n: int, rows: Sequence[Sequence[int]], pivots: Sequence[int]) -> "Subspace":
        """Trusted constructor: rows must already be in RREF."""
        return cls(field, ambient_n, rows, pivots)

    @classmethod
    def zero(cls, field: FieldSpec, ambient_n: int) -> "Subspace":
        return cls(field, ambient_n, [], [])

    @classmethod
    def full(cls, field: FieldSpec, ambient_n: int) -> "Subspace":
        eye = MatGF.identity(field, ambient_n)
        return cls(field, ambient_n, eye.entries, list(range(ambient_n)))

    def pivot_positions(self) -> tuple[int, ...]:
        return tuple(j for j, b in enumerate(self.pivot) if b)

    def contains_vector(self, vec: Sequence[int]) -> bool:
        F = self.field
        v = list(vec)
        for row, p in zip(self.rref.entries, self.pivot_positions()):
            if v[p]:
                c = v[p]
                v = [F.sub(x, F.mul(c, y)) for x, y in zip(v, row)]
        return not any(v)

    def vectors(self) -> Iterator[tuple[int, ...]]:
        """All q^k vectors of the subspace."""
        F = self.field
        for coeffs in itertools.product(range(F.q), repeat=self.k):
            v = [0] * self.ambient_n
            for c, row in zip(coeffs, self.rref.entries):
                if c:
                    for j, x in enumerate(row):
                        if x:
                            v[j] = F.add(v[j], F.mul(c, x))
            yield tuple(v)

    def points(self) -> Iterator[tuple[int, ...]]:
        """Canonical representatives (first nonzero coordinate 1) of the
        projective points of the subspace."""
        seen = set()
        F = self.field
        for v in self.vectors():
            if not any(v):
                continue
            lead = next(x for x in v if x)
            if lead != 1:
                inv = F.inv(lead)
                v = tuple(F.mul(inv, x) for x in v)
            if v not in seen:
                seen.add(v)
                yield v

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subspace)
            and self.field == other.field
            and self.ambient_n == other.ambient_n
            and self.rref.entries == other.rref.entries
        )

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Subspace(dim {self.k} of {self.field}^{self.ambient_n}, pivot {''.join(map(str, self.pivot))})"


def row_space(M: MatGF) -> Subspace:
    return Subspace.from_matrix(M)


def subspace_distance(U: Subspace, W: Subspace) -> int:
    """dim(U+W) - dim(U∩W) = 2 rank(stack) - dim U - dim W."""
    _check_same_ambient(U, W)
    return 2 * _stack_rank(U, W) - U.k - W.k


def subspace_distance_capped(U: Subspace, W: Subspace, cap_distance: int) -> int:
    """Like subspace_distance but may return early with any value
    >= cap_distance once the distance is known to reach it."""
    if U._bits is not None:
        cap_rank = (cap_distance + U.k + W.k + 1) // 2
        basis = {b & -b: b for b in U._bits}
        r = _joint_rank_bits_capped(basis, W._bits, U.k, cap_rank)
        return 2 * r - U.k - W.k
    return subspace_distance(U, W)


def injection_distance(U: Subspace, W: Subspace) -> int:
    _check_same_ambient(U, W)
    return _stack_rank(U, W) - min(U.k, W.k)


def _check_same_ambient(U: Subspace, W: Subspace) -> None:
    if U.ambient_n != W.ambient_n or U.field != W.field:
        raise ValueError("ambient space mismatch")


def _stack_rank(U: Subspace, W: Subspace) -> int:
    if U._bits is not None:
        basis = {b & -b: b for b in U._bits}
        return _joint_rank_bits_capped(basis, W._bits, U.k, 1 << 30)
    stacked = U.rref.vstack(W.rref)
    return rank(stacked)


def dual(U: Subspace) -> Subspace:
    """Orthogonal complement under the standard dot product."""
    F = U.field
    n = U.ambient_n
    if U.k == 0:
        return Subspace.full(F, n)
    # kernel of rref * x^T = 0: free columns parameterize solutions
    piv = U.pivot_positions()
    free = [j for j in range(n) if j not in set(piv)]
    rows = []
    for f in free:
        v = [0] * n
        v[f] = 1
        for row, p in zip(U.rref.entries, piv):
            v[p] = F.neg(row[f])
        rows.append(v)
    return Subspace.from_matrix(MatGF(F, rows, n))


def pivot_vector(U: Subspace) -> tuple[int, ...]:
    return U.pivot


def hamming_distance(v: Sequence[int], w: Sequence[int]) -> int:
    if len(v) != len(w):
        raise ValueError("length mismatch")
    return sum(1 for a, b in zip(v, w) if a != b)


def ferrers_of(v: Sequence[int]) -> FerrersDiagram:
    """Diagram of free entries: row per pivot, one dot per later zero."""
    n = len(v)
    zeros_after = 0
    lengths_rev = []
    for j in range(n - 1, -1, -1):
        if v[j]:
            lengths_rev.append(zeros_after)
        else:
            zeros_after += 1
    return FerrersDiagram(tuple(reversed(lengths_rev)))


def dot_count(F: FerrersDiagram) -> int:
    return F.dot_count()


def subspace_from_filling(field: FieldSpec, v: Sequence[int], filling: Sequence[Sequence[int]]) -> Subspace:
    """
    Build the subspace with pivot vector v whose free entries are given by
    a right-justified filling of the Ferrers diagram of v.

    `filling` is a num_rows x num_cols matrix (row lengths per the diagram,
    left cells outside the diagram ignored/zero).
    """
    n = len(v)
    diagram = ferrers_of(v)
    m = diagram.num_cols
    piv = [j for j, b in enumerate(v) if b]
    pivset = set(piv)
    rows = []
    for i, p in enumerate(piv):
        free_cols = [j for j in range(p + 1, n) if j not in pivset]
        li = diagram.row_lengths[i]
        assert len(free_cols) == li
        row = [0] * n
        row[p] = 1
        for idx, j in enumerate(free_cols):
            row[j] = filling[i][m - li + idx] if li else 0
        rows.append(row)
    return Subspace.from_rref(field, n, rows, piv)


def enumerate_grassmannian(q: int, n: int, k: int, cap: int = DEFAULT_ENUM_CAP) -> Iterator[Subspace]:
    """
    All k-subspaces of GF(q)^n, each exactly once, in canonical order:
    pivot supports in lexicographic order, then free entries counted base q.
    """
    total = gauss_binomial(n, k, q)
    if total > cap:
        raise ValueError(f"Grassmannian size {total} exceeds cap {cap}")
    field = GF(q)
    if k == 0:
        yield Subspace.zero(field, n)
        return
    for piv in itertools.combinations(range(n), k):
        pivset = set(piv)
        free_cells = []
        for i, p in enumerate(piv):
            for j in range(p + 1, n):
                if j not in pivset:
                    free_cells.append((i, j))
        f = len(free_cells)
        for counter in range(q**f):
            rows = [[0] * n for _ in range(k)]
            for i, p in enumerate(piv):
                rows[i][p] = 1
            c = counter
            for (i, j) in free_cells:
                rows[i][j] = c % q
                c //= q
            yield Subspace.from_rref(field, n, rows, piv)


def permute_columns(U: Subspace, perm: Sequence[int]) -> Subspace:
    """Apply a column permutation; perm[j] = image of column j (0-based)."""
    n = U.ambient_n
    if sorted(perm) != list(range(n)):
        raise ValueError("not a permutation of the columns")
    rows = []
    for row in U.rref.entries:
        new = [0] * n
        for j, x in enumerate(row):
            new[perm[j]] = x
        rows.append(new)
    return Subspace.from_matrix(MatGF(U.field, rows, n))
