"""
Explicit constant-dimension codes: lifting, the linkage family, the
multilevel (skeleton/diagram) construction, partial spreads, the coset
construction with packing inputs, block-inserting variants, and the
combination rules that glue subcodes together.

Every constructor materializes actual subspaces; declared distances are
meant to be re-checked independently (see scodes.verify).  Provenance is
recorded on each code so `combine` can match pairs of subcodes against the
structural compatibility rules.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

from .gfq import GF
from .qcombi import gauss_binomial
from .rankmetric import (
    RankCode,
    SumRankCode,
    fdrm_construct,
    fdrm_upper_bound,
    rank,
    rect_mrd,
)
from .spaces import (
    MatGF,
    Subspace,
    enumerate_grassmannian,
    ferrers_of,
    hamming_distance,
    subspace_from_filling,
)

WORD_CAP = 1 << 21


@dataclass(frozen=True)
class Cdc:
    """A constant-dimension code with its construction provenance."""

    q: int
    n: int
    k: int
    d: int
    words: tuple[Subspace, ...]
    provenance: tuple = ("explicit", ())

    def __len__(self) -> int:
        return len(self.words)

    @property
    def rule(self) -> str:
        return self.provenance[0]

    @property
    def params(self) -> dict:
        return dict(self.provenance[1])

    def check_shape(self) -> None:
        for w in self.words:
            if w.ambient_n != self.n or w.k != self.k:
                raise ValueError("codeword outside declared ambient/dimension")


def _mk(q, n, k, d, words, rule, **params) -> Cdc:
    words = tuple(words)
    if len(set(words)) != len(words):
        raise ValueError(f"{rule}: duplicate codewords produced")
    code = Cdc(q, n, k, d, words, (rule, tuple(sorted(params.items()))))
    code.check_shape()
    return code


@dataclass(frozen=True)
class SkeletonCode:
    """Binary constant-weight vectors steering the multilevel construction."""

    vectors: tuple[tuple[int, ...], ...]
    d: int

    def validate(self) -> None:
        for a, b in itertools.combinations(self.vectors, 2):
            if hamming_distance(a, b) < self.d:
                raise ValueError("skeleton distance violated")


@dataclass(frozen=True)
class DPacking:
    """Pairwise-disjoint subcodes, each of inner minimum distance >= d_inner.

    d_ambient is the guaranteed minimum distance between words of
    *different* parts (2 for packings of a full Grassmannian)."""

    q: int
    n: int
    k: int
    d_inner: int
    parts: tuple[tuple[Subspace, ...], ...]
    d_ambient: int = 2

    def __len__(self) -> int:
        return len(self.parts)

    def total_words(self) -> int:
        return sum(len(p) for p in self.parts)

    def validate_disjoint(self) -> None:
        seen: set[Subspace] = set()
        for part in self.parts:
            for w in part:
                if w in seen:
                    raise ValueError("packing parts are not disjoint")
                seen.add(w)


# -- lifting and the linkage family ------------------------------------------


def lift(M: MatGF) -> Subspace:
    """The row space of [I_k | M] in ambient k + cols."""
    k = M.rows
    eye = MatGF.identity(M.field, k)
    rows = [er + mr for er, mr in zip(eye.entries, M.entries)]
    return Subspace.from_rref(M.field, k + M.cols, rows, list(range(k)))


def lifted_mrd(q: int, n: int, k: int, d: int, cap: int = WORD_CAP) -> Cdc:
    """Lift a k x (n-k) MRD code of rank distance d/2."""
    _check_cdc_params(q, n, k, d)
    rmc = rect_mrd(q, k, n - k, d // 2, cap)
    return _mk(q, n, k, d, (lift(w) for w in rmc.words), "lifted_mrd", n1=k, n2=n - k)


def _check_cdc_params(q, n, k, d):
    if d % 2 or d < 2:
        raise ValueError("subspace distance must be a positive even integer")
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")


def _prefix_embed(U: Subspace, left_zeros: int, total: int) -> Subspace:
    rows = [(0,) * left_zeros + tuple(r) + (0,) * (total - left_zeros - U.ambient_n) for r in U.rref.entries]
    pivots = [left_zeros + p for p in U.pivot_positions()]
    return Subspace.from_rref(U.field, total, rows, pivots)


def single_codeword(q: int, n: int, k: int, d: int, position: str = "right") -> Cdc:
    """The one-word code spanned by unit vectors at the left or right end."""
    off = 0 if position == "left" else n - k
    U = Subspace.from_rref(
        GF(q), n,
        [tuple(1 if j == off + i else 0 for j in range(n)) for i in range(k)],
        list(range(off, off + k)),
    )
    return _mk(q, n, k, d, [U], "single", position=position)


def construction_d(C: Cdc, M: RankCode) -> Cdc:
    """Append every rank-code word to every codeword generator."""
    if M.m != C.k:
        raise ValueError("rank-code row count must equal codeword dimension")
    if 2 * M.d < C.d:
        raise ValueError(f"rank distance {M.d} too small for subspace distance {C.d}")
    n = C.n + M.n
    words = []
    for U in C.words:
        piv = U.pivot_positions()
        for w in M.words:
            rows = [tuple(r) + tuple(mr) for r, mr in zip(U.rref.entries, w.entries)]
            words.append(Subspace.from_rref(U.field, n, rows, piv))
    return _mk(C.q, n, C.k, C.d, words, "construction_d", n1=C.n, n2=M.n)


def linkage(C1: Cdc, C2: Cdc, M: RankCode) -> Cdc:
    """Prefix subcode C1 x M plus zero-prefixed C2."""
    if C1.k != C2.k or C1.q != C2.q:
        raise ValueError("component codes incompatible")
    if C2.n != M.n:
        raise ValueError("C2 ambient must match rank-code columns")
    d = min(C1.d, C2.d, 2 * M.d)
    first = construction_d(C1, M)
    n = C1.n + M.n
    words = list(first.words)
    words += [_prefix_embed(W, C1.n, n) for W in C2.words]
    return _mk(C1.q, n, C1.k, d, words, "linkage", n1=C1.n, n2=M.n)


def improved_linkage(C1: Cdc, C2: Cdc, M: RankCode) -> Cdc:
    """Like linkage but C2 lives in n2 + k - d/2 columns, overlapping the
    rank-code block by k - d/2."""
    k = C1.k
    d = min(C1.d, C2.d, 2 * M.d)
    if C2.n != M.n + k - d // 2:
        raise ValueError("C2 ambient must be n2 + k - d/2")
    prefix = C1.n - k + d // 2
    if prefix < 0:
        raise ValueError("zero prefix width underflow")
    n = C1.n + M.n
    words = list(construction_d(C1, M).words)
    words += [_prefix_embed(W, prefix, n) for W in C2.words]
    return _mk(C1.q, n, k, d, words, "improved_linkage", n1=C1.n, n2=M.n)


def generalized_linkage(C1: Cdc, C2: Cdc, M1: RankCode, M2: RankCode) -> Cdc:
    """Two mixed-prefix subcodes; M2's word ranks must stay <= k - d/2."""
    k = C1.k
    d = min(C1.d, C2.d, 2 * M1.d, 2 * M2.d)
    if C2.n != M1.n or C1.n != M2.n:
        raise ValueError("block widths inconsistent")
    limit = k - d // 2
    for w in M2.words:
        if rank(w) > limit:
            raise ValueError(f"left rank-code word of rank > {limit}")
    n = C1.n + C2.n
    words = list(construction_d(C1, M1).words)
    for W in C2.words:
        for w in M2.words:
            rows = [tuple(mr) + tuple(r) for mr, r in zip(w.entries, W.rref.entries)]
            words.append(Subspace.from_matrix(MatGF(W.field, rows, n)))
    return _mk(C1.q, n, k, d, words, "generalized_linkage",
               n1=C1.n, n2=C2.n, m2_max_rank=max((rank(w) for w in M2.words), default=0))


# -- multilevel construction ---------------------------------------------------


def echelon_ferrers(skeleton: SkeletonCode | Sequence[Sequence[int]], q: int, d: int,
                    cap: int = WORD_CAP) -> Cdc:
    """Union of lifted diagram codes, one per skeleton vector."""
    if isinstance(skeleton, SkeletonCode):
        vectors = skeleton.vectors
    else:
        vectors = tuple(tuple(v) for v in skeleton)
    # re-validate at the requested distance, whatever the skeleton declared
    skeleton = SkeletonCode(vectors, d)
    skeleton.validate()
    if not skeleton.vectors:
        raise ValueError("empty skeleton")
    n = len(skeleton.vectors[0])
    k = sum(skeleton.vectors[0])
    field = GF(q)
    words = []
    for v in skeleton.vectors:
        if len(v) != n or sum(v) != k:
            raise ValueError("skeleton vectors must share length and weight")
        code = fdrm_construct(ferrers_of(v), d // 2, q, cap)
        for w in code.words:
            words.append(subspace_from_filling(field, v, w.entries))
    return _mk(q, n, k, d, words, "echelon_ferrers",
               skeleton=tuple("".join(map(str, v)) for v in skeleton.vectors))


def skeleton_greedy(q: int, n: int, k: int, d: int) -> SkeletonCode:
    """
    Greedy skeleton: vectors considered in descending diagram-bound order
    (ties lexicographic), seeded with the all-left vector 1^k 0^(n-k).
    """
    seed = tuple([1] * k + [0] * (n - k))
    scored = []
    for support in itertools.combinations(range(n), k):
        v = tuple(1 if j in support else 0 for j in range(n))
        if v == seed:
            continue
        scored.append((-fdrm_upper_bound(ferrers_of(v), d // 2, q), v))
    scored.sort()
    chosen = [seed]
    for _, v in scored:
        if all(hamming_distance(v, u) >= d for u in chosen):
            chosen.append(v)
    return SkeletonCode(tuple(chosen), d)


def partial_spread(q: int, n: int, k: int, cap: int = WORD_CAP) -> Cdc:
    """
    Block-skeleton multilevel code with pairwise trivial intersections:
    cardinality (q^n - q^k (q^(n mod k) - 1) - 1) / (q^k - 1); a full
    spread when k divides n.
    """
    if k < 1 or 2 * k > n:
        raise ValueError("need 1 <= k <= n/2")
    t = n // k
    vectors = []
    for i in range(t):
        vectors.append(tuple(1 if i * k <= j < (i + 1) * k else 0 for j in range(n)))
    code = echelon_ferrers(SkeletonCode(tuple(vectors), 2 * k), q, 2 * k, cap)
    expected = (q**n - q**k * (q ** (n % k) - 1) - 1) // (q**k - 1)
    assert len(code) == expected, (len(code), expected)
    return Cdc(q, n, k, 2 * k, code.words, ("partial_spread", (("n", n), ("k", k))))


# -- parallelisms and the coset construction -----------------------------------


def find_parallelism(q: int, n: int, k: int) -> DPacking:
    """
    Partition of the full Grassmannian into spreads.  Built-in exact-cover
    backtracking handles (q, n, k) = (2, 4, 2); other parameters must be
    loaded from data files (see the CLI module).
    """
    if (q, n, k) != (2, 4, 2):
        raise ValueError(
            f"no built-in parallelism search for (q, n, k) = ({q}, {n}, {k}); load one from a data file"
        )
    lines = list(enumerate_grassmannian(q, n, k))
    spread_size = (q**n - 1) // (q**k - 1)
    point_sets = [frozenset(w.points()) for w in lines]
    all_points = sorted({p for ps in point_sets for p in ps})

    def spreads_using(first: int, available: list[int]):
        """All spreads (as index lists) containing `first`, generated once
        each by always branching on the least uncovered point."""
        out = []

        def grow(chosen, covered, cands):
            if len(chosen) == spread_size:
                out.append(list(chosen))
                return
            target = next((p for p in all_points if p not in covered), None)
            if target is None:
                return
            for i in cands:
                if target in point_sets[i]:
                    grow(chosen + [i], covered | point_sets[i],
                         [j for j in cands if point_sets[j].isdisjoint(point_sets[i])])

        grow([first], point_sets[first],
             [i for i in available if i != first and point_sets[i].isdisjoint(point_sets[first])])
        return out

    num_classes = gauss_binomial(n, k, q) // spread_size

    def solve(remaining: frozenset[int], acc: list[list[int]]):
        if not remaining:
            return acc
        first = min(remaining)
        avail = sorted(remaining)
        for spread in spreads_using(first, avail):
            if all(i in remaining for i in spread):
                res = solve(remaining - frozenset(spread), acc + [spread])
                if res is not None:
                    return res
        return None

    solution = solve(frozenset(range(len(lines))), [])
    if solution is None or len(solution) != num_classes:
        raise RuntimeError("parallelism search failed")  # pragma: no cover
    parts = tuple(tuple(lines[i] for i in idxs) for idxs in solution)
    return DPacking(q, n, k, 2 * k, parts, d_ambient=2)


def load_packing(q: int, n: int, k: int, d_inner: int, parts: Sequence[Sequence[Subspace]],
                 d_ambient: int = 2) -> DPacking:
    pk = DPacking(q, n, k, d_inner, tuple(tuple(p) for p in parts), d_ambient)
    pk.validate_disjoint()
    return pk


def _pivot_embedding(M: MatGF, G: Subspace, n2: int) -> tuple[tuple[int, ...], ...]:
    """Insert zero columns into M at the pivot positions of E(G)."""
    piv = set(G.pivot_positions())
    free = [j for j in range(n2) if j not in piv]
    rows = []
    for r in M.entries:
        row = [0] * n2
        for x, j in zip(r, free):
            row[j] = x
        rows.append(tuple(row))
    return tuple(rows)


def coset_construction(pack1: DPacking, pack2: DPacking, M: RankCode,
                       d1: int, d2: int) -> Cdc:
    """
    Stack matched packing parts with an embedded rank-code block:

        [ E(U1)  phi(M) ]
        [   0    E(U2)  ]

    using the pivot-column embedding; distance d1 + d2.
    """
    if len(pack1) != len(pack2):
        raise ValueError("packings must have the same number of parts")
    d = d1 + d2
    if pack1.d_inner < d or pack2.d_inner < d:
        raise ValueError("packing inner distance below d1 + d2")
    if pack1.d_ambient < d1 or pack2.d_ambient < d2:
        raise ValueError("ambient packing distance below the declared split")
    n1, n2 = pack1.n, pack2.n
    k1, k2 = pack1.k, pack2.k
    if (M.m, M.n) != (k1, n2 - k2):
        raise ValueError(f"rank code must be {k1} x {n2 - k2}")
    if 2 * M.d < d:
        raise ValueError("rank distance too small")
    field = GF(pack1.q)
    n = n1 + n2
    words = []
    for part1, part2 in zip(pack1.parts, pack2.parts):
        for U1 in part1:
            for U2 in part2:
                for Mw in M.words:
                    top_right = _pivot_embedding(Mw, U2, n2)
                    rows = [tuple(r) + tr for r, tr in zip(U1.rref.entries, top_right)]
                    rows += [(0,) * n1 + tuple(r) for r in U2.rref.entries]
                    piv = list(U1.pivot_positions()) + [n1 + p for p in U2.pivot_positions()]
                    words.append(Subspace.from_rref(field, n, rows, piv))
    max_rank = max((rank(w) for w in M.words), default=0)
    return _mk(pack1.q, n, k1 + k2, d, words, "coset",
               n1=n1, n2=n2, d1=d1, d2=d2, k1=k1, k2=k2, rmc_max_rank=max_rank)


def mirrored_coset_construction(pack1: DPacking, pack2: DPacking, M: RankCode,
                                d1: int, d2: int) -> Cdc:
    """
    Column-block mirror of the coset construction:

        [ E(U1)    0   ]
        [ phi(M) E(U2) ]

    with the rank block now under the first packing's columns.  Mixing its
    output with standard coset subcodes is refused by `combine` unless
    brute-force certification is requested (pivot-block bookkeeping alone
    cannot separate them).
    """
    if len(pack1) != len(pack2):
        raise ValueError("packings must have the same number of parts")
    d = d1 + d2
    if pack1.d_inner < d or pack2.d_inner < d:
        raise ValueError("packing inner distance below d1 + d2")
    n1, n2 = pack1.n, pack2.n
    k1, k2 = pack1.k, pack2.k
    if (M.m, M.n) != (k2, n1 - k1):
        raise ValueError(f"rank code must be {k2} x {n1 - k1}")
    if 2 * M.d < d:
        raise ValueError("rank distance too small")
    field = GF(pack1.q)
    n = n1 + n2
    words = []
    for part1, part2 in zip(pack1.parts, pack2.parts):
        for U1 in part1:
            for U2 in part2:
                for Mw in M.words:
                    bottom_left = _pivot_embedding(Mw, U1, n1)
                    rows = [tuple(r) + (0,) * n2 for r in U1.rref.entries]
                    rows += [bl + tuple(r) for bl, r in zip(bottom_left, U2.rref.entries)]
                    words.append(Subspace.from_matrix(MatGF(field, rows, n)))
    max_rank = max((rank(w) for w in M.words), default=0)
    return _mk(pack1.q, n, k1 + k2, d, words, "mirrored_coset",
               n1=n1, n2=n2, d1=d1, d2=d2, k1=k1, k2=k2, rmc_max_rank=max_rank)


# -- block inserting ------------------------------------------------------------


def block_inserting_I(dims: tuple[int, int, int, int], d1: int, d2: int,
                      C1: Cdc, C2: Cdc, M3: RankCode, M4: RankCode,
                      pack1: Sequence[RankCode], pack2: Sequence[RankCode]) -> Cdc:
    """
    Two-row-block generator with matched rank-code packings:

        [ G1  M1   0  M3 ]
        [ 0   M4  G2  M2 ]

    M1 parts run over pack1, M2 parts over pack2 (equal length, index
    matched); M3 and M4 are rank-bounded by k_i - d/2.
    """
    n1, n2, n3, n4 = dims
    d = d1 + d2
    k1, k2 = C1.k, C2.k
    if len(pack1) != len(pack2):
        raise ValueError("packings must be index matched")
    if (M3.m, M3.n) != (k1, n4) or (M4.m, M4.n) != (k2, n2):
        raise ValueError("M3/M4 shapes inconsistent with the layout")
    for w in M3.words:
        if rank(w) > k1 - d // 2:
            raise ValueError("M3 rank restriction violated")
    for w in M4.words:
        if rank(w) > k2 - d // 2:
            raise ValueError("M4 rank restriction violated")
    field = GF(C1.q)
    n = n1 + n2 + n3 + n4
    words = []
    for P1, P2 in zip(pack1, pack2):
        if (P1.m, P1.n) != (k1, n2) or (P2.m, P2.n) != (k2, n4):
            raise ValueError("packed rank-code shapes inconsistent")
        for U1 in C1.words:
            for M1w in P1.words:
                for M3w in M3.words:
                    top = [
                        tuple(g) + tuple(m1) + (0,) * n3 + tuple(m3)
                        for g, m1, m3 in zip(U1.rref.entries, M1w.entries, M3w.entries)
                    ]
                    for U2 in C2.words:
                        for M4w in M4.words:
                            for M2w in P2.words:
                                bottom = [
                                    (0,) * n1 + tuple(m4) + tuple(g) + tuple(m2)
                                    for m4, g, m2 in zip(M4w.entries, U2.rref.entries, M2w.entries)
                                ]
                                words.append(Subspace.from_matrix(MatGF(field, top + bottom, n)))
    return _mk(C1.q, n, k1 + k2, d, words, "block_inserting_I",
               n1=n1, n2=n2, n3=n3, n4=n4, d1=d1, d2=d2, k1=k1, k2=k2)


def block_inserting_II(dims: tuple[int, int, int, int], d: int,
                       M: SumRankCode, C1: Cdc, C2: Cdc) -> Cdc:
    """
    Sum-rank-driven two-block generator:

        [ M1  G1  0   0  ]
        [ 0   0   M2  G2 ]

    with (M1, M2) running over a sum-rank code of distance >= d/2 whose
    sum-ranks stay <= k1 + k2 - d/2.
    """
    n1, n2, n3, n4 = dims
    k1, k2 = C1.k, C2.k
    if M.shapes != ((k1, n1), (k2, n3)):
        raise ValueError("sum-rank shapes inconsistent with the layout")
    if 2 * M.d < d:
        raise ValueError("sum-rank distance too small")
    from .rankmetric import sum_rank

    for w in M.words:
        if sum_rank(w) > k1 + k2 - d // 2:
            raise ValueError("sum-rank restriction violated")
    field = GF(C1.q)
    n = n1 + n2 + n3 + n4
    words = []
    for (M1w, M2w) in M.words:
        for U1 in C1.words:
            top = [
                tuple(m1) + tuple(g) + (0,) * (n3 + n4)
                for m1, g in zip(M1w.entries, U1.rref.entries)
            ]
            for U2 in C2.words:
                bottom = [
                    (0,) * (n1 + n2) + tuple(m2) + tuple(g)
                    for m2, g in zip(M2w.entries, U2.rref.entries)
                ]
                words.append(Subspace.from_matrix(MatGF(field, top + bottom, n)))
    return _mk(C1.q, n, k1 + k2, d, words, "block_inserting_II",
               n1=n1, n2=n2, n3=n3, n4=n4, k1=k1, k2=k2)


# -- combining subcodes ----------------------------------------------------------


def _pivot_structure(C: Cdc) -> set[tuple[int, ...]]:
    return {w.pivot for w in C.words}


def _structure_distance(A: Cdc, B: Cdc) -> int:
    sa, sb = _pivot_structure(A), _pivot_structure(B)
    return min(hamming_distance(a, b) for a in sa for b in sb)


def _lemma_certificate(A: Cdc, B: Cdc, d: int) -> Optional[str]:
    """Structural cross-distance certificate, trying both orientations."""
    return _lemma_oriented(A, B, d) or _lemma_oriented(B, A, d)


def _lemma_oriented(A: Cdc, B: Cdc, d: int) -> Optional[str]:
    ra, rb = A.rule, B.rule
    pa, pb = A.params, B.params
    if "coset" in ra and "coset" in rb and ra != rb:
        # mixing mirrored and standard coset subcodes is unsound in general
        return None
    if ra in ("construction_d", "lifted_mrd") and rb == "coset":
        if (
            pa.get("n1") == pb["n1"]
            and pb["k1"] + pb["k2"] == A.k
            and pb["d1"] + pb["d2"] == d
            and pb["k2"] >= d // 2
        ):
            return "construction-d + coset"
    if ra in ("construction_d", "lifted_mrd") and rb == "mirrored_coset":
        if (
            pa.get("n1") == pb["n1"]
            and pb["k1"] + pb["k2"] == A.k
            and pb["d1"] + pb["d2"] == d
            and pb["k2"] - pb["rmc_max_rank"] >= d // 2
        ):
            return "construction-d + mirrored coset"
    if ra == "coset" and rb == "coset":
        if (
            pa["n1"] == pb["n1"]
            and abs(pa["k1"] - pb["k1"]) + abs(pa["k2"] - pb["k2"]) >= d
        ):
            return "coset + coset"
    if ra == "generalized_linkage" and rb == "coset":
        if (
            pa["n1"] == pb["n1"]
            and pb["k2"] >= d // 2
            and pb["k1"] - pb["rmc_max_rank"] >= d // 2
        ):
            return "generalized linkage + coset"
    if ra == "generalized_linkage" and rb == "block_inserting_I":
        if pa["n1"] == pb["n1"] + pb["n2"] and pa["n2"] == pb["n3"] + pb["n4"]:
            return "generalized linkage + block inserting I"
    if ra == "generalized_linkage" and rb == "block_inserting_II":
        if (
            pa["n1"] == pb["n1"] + pb["n2"]
            and pa["n2"] == pb["n3"] + pb["n4"]
            and pb["k1"] >= d // 2
            and pb["k2"] >= d // 2
        ):
            return "generalized linkage + block inserting II"
    if ra == "block_inserting_I" and rb == "block_inserting_II":
        if all(pa[x] == pb[x] for x in ("n1", "n2", "n3", "n4")):
            return "block inserting I + II"
    return None


def combine(subcodes: Sequence[Cdc], certify: str = "auto",
            brute_cap: int = 2_000_000) -> Cdc:
    """
    Union of subcodes with cross-distance certification per pair: a known
    structural rule, then the pivot-structure Hamming bound, then brute
    force over all cross pairs (within brute_cap products).

    certify='brute' forces the brute-force check for every pair;
    'lemma' refuses pairs with no structural certificate.
    """
    if not subcodes:
        raise ValueError("nothing to combine")
    if len(subcodes) == 1:
        return subcodes[0]
    q, n, k = subcodes[0].q, subcodes[0].n, subcodes[0].k
    d = min(c.d for c in subcodes)
    for c in subcodes:
        if (c.q, c.n, c.k) != (q, n, k):
            raise ValueError("subcodes live in different spaces")
    certificates = []
    from .spaces import subspace_distance_capped

    for A, B in itertools.combinations(subcodes, 2):
        how = None
        mixed_coset = {A.rule, B.rule} == {"coset", "mirrored_coset"}
        if certify != "brute" and mixed_coset:
            raise ValueError(
                "mixing mirrored and standard coset subcodes needs certify='brute' "
                "(the structural bookkeeping for this pair is unsound)"
            )
        if certify != "brute":
            how = _lemma_certificate(A, B, d)
            if how is None and _structure_distance(A, B) >= d:
                how = "pivot-structure Hamming distance"
        if how is None or certify == "brute":
            if len(A.words) * len(B.words) > brute_cap:
                raise ValueError(
                    f"no structural certificate for {A.rule} + {B.rule} and cross product too large to brute force"
                )
            for u in A.words:
                for w in B.words:
                    if subspace_distance_capped(u, w, d) < d:
                        raise ValueError(f"cross distance violation between {A.rule} and {B.rule}")
            how = "brute force"
        certificates.append(how)
    words = []
    seen = set()
    for c in subcodes:
        for w in c.words:
            if w in seen:
                raise ValueError("subcodes overlap")
            seen.add(w)
            words.append(w)
    return _mk(q, n, k, d, words, "combine",
               pieces=tuple(c.rule for c in subcodes), certificates=tuple(certificates))


def auto_cdc(q: int, n: int, d: int, k: int, cap: int = WORD_CAP) -> Cdc:
    """Best materializable code for the parameters, used for component
    codes: a single word when forced, a partial spread at maximum
    distance, otherwise greedy multilevel."""
    _check_cdc_params(q, n, k, d)
    if d > 2 * min(k, n - k):
        return single_codeword(q, n, k, d, position="left")
    if d == 2 * k and 2 * k <= n:
        return partial_spread(q, n, k, cap)
    return echelon_ferrers(skeleton_greedy(q, n, k, d), q, d, cap)
