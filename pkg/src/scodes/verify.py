"""
Independent brute-force verification of emitted codes: exact or sampled
minimum subspace distance with witness pairs, point-coverage checks for
partial spreads, pivot structures, and an exhaustive optimum search for
tiny parameter sets.

Nothing here trusts construction-time declarations; distances are
recomputed from generator matrices.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Optional, Sequence

from .constructions import Cdc
from .qcombi import gauss_int
from .spaces import Subspace, enumerate_grassmannian, subspace_distance, subspace_distance_capped

INFINITE = "infinite"
DEFAULT_PAIR_CAP = 20000


@dataclass
class VerificationReport:
    code_size: int
    declared_d: Optional[int]
    min_distance: object  # int or the string "infinite"
    mode: str  # "exact" | "sampled"
    certifies: bool
    witness: Optional[tuple[int, int]] = None
    histogram: Optional[dict[int, int]] = None
    constant_dimension: bool = True
    pivot_structure: frozenset = frozenset()
    seed: Optional[int] = None

    def ok(self) -> bool:
        if self.declared_d is None:
            return True
        if self.min_distance == INFINITE:
            return True
        return self.min_distance >= self.declared_d


def min_distance(C: Cdc, mode: str = "exact", sample_count: int = 20000,
                 seed: int = 0, cap: int = DEFAULT_PAIR_CAP,
                 histogram: bool = False) -> VerificationReport:
    """
    Minimum pairwise subspace distance of a code.

    Exact mode scans all pairs (with early exit per pair once a pair can
    no longer lower the current minimum) and certifies the result; sampled
    mode draws seeded random pairs and is explicitly non-certifying.
    """
    words = list(C.words)
    dims = {w.k for w in words}
    const_dim = len(dims) <= 1
    piv = frozenset(w.pivot for w in words)
    if len(words) < 2:
        return VerificationReport(len(words), C.d, INFINITE, "exact", True,
                                  constant_dimension=const_dim, pivot_structure=piv)

    if mode == "sampled":
        rng = random.Random(seed)
        best = None
        witness = None
        m = len(words)
        for _ in range(sample_count):
            i = rng.randrange(m)
            j = rng.randrange(m - 1)
            if j >= i:
                j += 1
            dist = subspace_distance(words[i], words[j])
            if best is None or dist < best:
                best, witness = dist, (i, j)
        return VerificationReport(m, C.d, best, "sampled", False, witness,
                                  constant_dimension=const_dim, pivot_structure=piv, seed=seed)

    if mode != "exact":
        raise ValueError(f"unknown mode {mode!r}")
    n_pairs = len(words) * (len(words) - 1) // 2
    if n_pairs > cap * (cap - 1) // 2:
        raise ValueError(f"{n_pairs} pairs exceed the exact-mode cap; raise cap or sample")

    hist: dict[int, int] = {}
    best = None
    witness = None
    if histogram:
        for i, j in itertools.combinations(range(len(words)), 2):
            dist = subspace_distance(words[i], words[j])
            hist[dist] = hist.get(dist, 0) + 1
            if best is None or dist < best:
                best, witness = dist, (i, j)
    else:
        for i, j in itertools.combinations(range(len(words)), 2):
            cur = best if best is not None else 1 << 30
            dist = subspace_distance_capped(words[i], words[j], cur)
            if dist < cur:
                best, witness = dist, (i, j)
        # early-exit distances at or above the reported min are not recorded
    return VerificationReport(len(words), C.d, best, "exact", True, witness,
                              hist or None, const_dim, piv)


def is_partial_spread(C: Cdc) -> tuple[bool, dict]:
    """Every point covered at most once?  Returns the full coverage map."""
    coverage: dict[tuple, int] = {}
    for w in C.words:
        for p in w.points():
            coverage[p] = coverage.get(p, 0) + 1
    ok = all(v <= 1 for v in coverage.values())
    return ok, coverage


def spread_summary(C: Cdc) -> dict:
    ok, coverage = is_partial_spread(C)
    total_points = gauss_int(C.n, C.q)
    covered = sum(1 for v in coverage.values() if v >= 1)
    return {
        "is_partial_spread": ok,
        "points_covered": covered,
        "holes": total_points - covered,
        "max_multiplicity": max(coverage.values(), default=0),
    }


def pivot_structure(C: Cdc) -> frozenset:
    return frozenset(w.pivot for w in C.words)


def max_code_exhaustive(q: int, n: int, k: int, d: int) -> int:
    """
    Exhaustively computed maximum size of a code in the Grassmannian with
    pairwise distance >= d (branch and bound).  Only intended for tiny
    parameters; used as an independent optimality oracle.
    """
    words = list(enumerate_grassmannian(q, n, k))
    if d >= 2 * k:
        return _max_partial_spread(q, n, k, words)
    m = len(words)
    compat = []
    for i in range(m):
        row = set()
        for j in range(i + 1, m):
            if subspace_distance_capped(words[i], words[j], d) >= d:
                row.add(j)
        compat.append(row)
    best = 0

    def grow(cands: set[int], size: int):
        nonlocal best
        if size + len(cands) <= best:
            return
        if not cands:
            best = max(best, size)
            return
        rest = set(cands)
        while rest:
            if size + len(rest) <= best:
                return
            i = min(rest)
            rest.discard(i)
            grow(rest & compat[i], size + 1)

    grow(set(range(m)), 0)
    return best


def _max_partial_spread(q: int, n: int, k: int, words: Sequence[Subspace]) -> int:
    """Branch over the lowest uncovered point: either a chosen word covers
    it or it is declared a hole.  Point sets are bitmasks."""
    point_list = sorted({p for w in words for p in w.points()})
    point_index = {p: i for i, p in enumerate(point_list)}
    word_masks = []
    for w in words:
        mask = 0
        for p in w.points():
            mask |= 1 << point_index[p]
        word_masks.append(mask)
    by_point: dict[int, list[int]] = {}
    for wi, mask in enumerate(word_masks):
        m = mask
        while m:
            low = m & -m
            by_point.setdefault(low.bit_length() - 1, []).append(wi)
            m ^= low
    total_points = len(point_list)
    full = (1 << total_points) - 1
    per_word = gauss_int(k, q)
    best = 0

    def grow(done: int, used_count: int):
        # done = covered-or-banned mask; banned contributes no words
        nonlocal best
        remaining = total_points - bin(done).count("1")
        if used_count + remaining // per_word <= best:
            return
        if done == full:
            best = max(best, used_count)
            return
        p = (~done & (done + 1)).bit_length() - 1  # lowest unresolved point
        for wi in by_point[p]:
            mask = word_masks[wi]
            if mask & done:
                continue
            grow(done | mask, used_count + 1)
        grow(done | (1 << p), used_count)

    grow(0, 0)
    return best
