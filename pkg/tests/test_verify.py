import itertools

import pytest

from scodes.constructions import Cdc, lifted_mrd, partial_spread, single_codeword
from scodes.gfq import GF
from scodes.spaces import MatGF, Subspace, enumerate_grassmannian, subspace_distance
from scodes.verify import (
    is_partial_spread,
    max_code_exhaustive,
    min_distance,
    pivot_structure,
    spread_summary,
)

F2 = GF(2)


def test_min_distance_exact_with_witness():
    code = lifted_mrd(2, 6, 3, 4)
    rep = min_distance(code, "exact")
    assert rep.min_distance == 4
    assert rep.certifies and rep.mode == "exact"
    i, j = rep.witness
    assert subspace_distance(code.words[i], code.words[j]) == 4
    assert rep.ok()


def test_min_distance_histogram():
    code = partial_spread(2, 6, 3)
    rep = min_distance(code, "exact", histogram=True)
    assert rep.min_distance == 6
    assert sum(rep.histogram.values()) == 9 * 8 // 2
    assert set(rep.histogram) == {6}


def test_min_distance_singleton_infinite():
    code = single_codeword(2, 5, 2, 4)
    rep = min_distance(code)
    assert rep.min_distance == "infinite"
    assert rep.ok()


def test_full_grassmannian_min_two():
    words = tuple(enumerate_grassmannian(2, 4, 2))
    code = Cdc(2, 4, 2, 2, words)
    rep = min_distance(code, "exact")
    assert rep.min_distance == 2


def test_min_distance_sampled_not_certifying():
    code = partial_spread(2, 8, 2)
    rep = min_distance(code, "sampled", sample_count=500, seed=42)
    assert not rep.certifies
    assert rep.mode == "sampled"
    assert rep.seed == 42
    assert rep.min_distance >= 4
    rep2 = min_distance(code, "sampled", sample_count=500, seed=42)
    assert rep2.min_distance == rep.min_distance  # deterministic per seed


def test_min_distance_cap():
    code = partial_spread(2, 8, 2)
    with pytest.raises(ValueError):
        min_distance(code, "exact", cap=10)


def test_detects_distance_violation():
    words = tuple(itertools.islice(enumerate_grassmannian(2, 4, 2), 6))
    bad = Cdc(2, 4, 2, 4, words)
    rep = min_distance(bad, "exact")
    assert rep.min_distance == 2
    assert not rep.ok()


def test_is_partial_spread_positive_and_negative():
    ok, cov = is_partial_spread(partial_spread(2, 7, 3))
    assert ok and len(cov) == 119
    planes = [
        Subspace.from_matrix(MatGF(F2, [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]])),
        Subspace.from_matrix(MatGF(F2, [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1]])),
    ]
    bad = Cdc(2, 4, 3, 2, tuple(planes))
    ok, cov = is_partial_spread(bad)
    assert not ok
    shared = [p for p, mult in cov.items() if mult > 1]
    assert (1, 0, 0, 0) in shared


def test_spread_summary_full():
    s = spread_summary(partial_spread(2, 6, 3))
    assert s == {"is_partial_spread": True, "points_covered": 63, "holes": 0,
                 "max_multiplicity": 1}


def test_pivot_structure():
    code = lifted_mrd(2, 7, 3, 4)
    assert pivot_structure(code) == frozenset({(1, 1, 1, 0, 0, 0, 0)})


def test_max_code_exhaustive_general_distance():
    # d < 2k branch: the full Grassmannian at distance 2
    assert max_code_exhaustive(2, 4, 2, 2) == 35
    assert max_code_exhaustive(2, 4, 2, 4) == 5


def test_histogram_pair_count_random_code():
    import random

    rng = random.Random(0)
    words = rng.sample(list(enumerate_grassmannian(2, 5, 2)), 12)
    code = Cdc(2, 5, 2, 2, tuple(words))
    rep = min_distance(code, "exact", histogram=True)
    assert sum(rep.histogram.values()) == 12 * 11 // 2
    # histogram minimum agrees with the capped scan
    rep2 = min_distance(code, "exact")
    assert rep2.min_distance == rep.min_distance
