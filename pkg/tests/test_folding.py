import itertools
import random
from functools import lru_cache

import pytest
from hypothesis import given, strategies as st

import minrank as mr
from minrank.folding import _canonical_key, candidate_from_json
from minrank.weyl import compose

import oracles


@lru_cache(maxsize=None)
def rs_of(letter, rank):
    return mr.build_root_system(mr.build_dynkin(letter, rank))


def fold_of(letter, rank, pairs):
    diagram = mr.build_dynkin(letter, rank)
    return diagram, mr.FoldingInvolution.from_pairs(diagram, pairs)


def doubled(letter, rank):
    single = mr.build_dynkin(letter, rank)
    diagram = mr.disjoint_union(single, single)
    mapping = tuple(list(range(rank, 2 * rank)) + list(range(rank)))
    return diagram, mr.FoldingInvolution(mapping)


def test_involution_constructor_validates():
    with pytest.raises(ValueError):
        mr.FoldingInvolution((1, 2, 0))
    with pytest.raises(ValueError):
        mr.FoldingInvolution((0, 0, 2))
    diagram = mr.build_dynkin("A", 3)
    with pytest.raises(ValueError):
        mr.FoldingInvolution.from_pairs(diagram, [("1", "1")])
    with pytest.raises(ValueError):
        mr.FoldingInvolution.from_pairs(diagram, [("1", "9")])


def test_involution_orbits_and_cycles():
    _, sigma = fold_of("A", 3, [("1", "3")])
    assert sigma.two_cycles == ((0, 2),)
    assert sigma.orbits == ((0, 2), (1,))
    assert not sigma.is_identity
    assert mr.FoldingInvolution.identity(mr.build_dynkin("A", 3)).is_identity


def test_restriction_map_a3():
    diagram, sigma = fold_of("A", 3, [("1", "3")])
    rho = mr.restriction_map(diagram, sigma)
    assert rho.orbits == ((0, 2), (1,))
    assert rho.project((1, 1, 0)) == (1, 1)
    assert rho.project((0, 1, 1)) == (1, 1)
    assert len(rho.image_roots) == 8
    sizes = sorted(len(v) for v in rho.fibers.values())
    assert sizes == [1, 1, 1, 1, 2, 2, 2, 2]


def test_restriction_map_rejects_bad_involutions():
    diagram, sigma = fold_of("A", 2, [("1", "2")])
    with pytest.raises(ValueError):
        mr.restriction_map(diagram, sigma)
    diagram, sigma = fold_of("C", 4, [("1", "3"), ("2", "4")])
    with pytest.raises(ValueError):
        mr.restriction_map(diagram, sigma)


def test_folded_simple_system_a3_gives_c2_with_black_paired_vertex():
    diagram, sigma = fold_of("A", 3, [("1", "3")])
    colored = mr.folded_simple_system(mr.restriction_map(diagram, sigma))
    assert colored.diagram.type_label == "C2"
    assert colored.diagram.cartan == ((2, -1), (-2, 2))
    assert colored.black == ("1",)


def test_folded_simple_system_b3_gives_g2():
    diagram, sigma = fold_of("B", 3, [("1", "3")])
    colored = mr.folded_simple_system(mr.restriction_map(diagram, sigma))
    assert colored.diagram.type_label == "G2"
    assert colored.black == ("1",)


def test_validate_identity_candidate():
    diagram = mr.build_dynkin("A", 2)
    report = mr.validate_candidate(diagram, mr.FoldingInvolution.identity(diagram))
    assert report.ok
    assert report.failed_check is None
    assert "identity pair" in report.tags
    pair = report.pair
    assert pair.family == "identity"
    assert pair.h_colored.black == ()
    assert pair.h_colored.diagram.cartan == diagram.cartan


def test_validate_diagonal_candidate():
    diagram, swap = doubled("A", 2)
    report = mr.validate_candidate(diagram, swap)
    assert report.ok
    assert "diagonal pair" in report.tags
    assert report.pair.family == "diagonal"
    assert report.pair.h_colored.diagram.type_label == "A2"
    assert report.pair.h_colored.black == ("1", "2")


@pytest.mark.parametrize(
    "letter,rank,pairs,failed_check,tag",
    [
        ("A", 2, [("1", "2")], "a", "nonorthogonal_pair"),
        ("C", 4, [("1", "3"), ("2", "4")], "b", "fiber_size_3"),
        ("A", 4, [("1", "3")], "c", "image_not_root_system"),
        ("B", 4, [("1", "3")], "c", "image_not_root_system"),
    ],
)
def test_validate_failure_tags(letter, rank, pairs, failed_check, tag):
    diagram, sigma = fold_of(letter, rank, pairs)
    report = mr.validate_candidate(diagram, sigma)
    assert not report.ok
    assert report.failed_check == failed_check
    assert report.tag == tag
    assert report.pair is None


def test_validated_folds_and_embedded_orders():
    expectations = [
        ("A", 3, [("1", "3")], "C2", 8),
        ("B", 3, [("1", "3")], "G2", 12),
        ("A", 5, [("1", "5"), ("2", "4")], "C3", 48),
        ("D", 4, [("3", "4")], "B3", 48),
    ]
    for letter, rank, pairs, h_label, order in expectations:
        diagram, sigma = fold_of(letter, rank, pairs)
        report = mr.validate_candidate(diagram, sigma)
        assert report.ok, (letter, rank, report.failed_check)
        pair = report.pair
        assert pair.h_colored.diagram.type_label == h_label
        W = mr.generate_weyl(rs_of(letter, rank))
        sub, gens = mr.embed_weyl(pair, W)
        assert sub.order == order
        assert len(gens) == pair.h_colored.diagram.rank


def test_embedded_generators_satisfy_folded_braid_relations():
    diagram, sigma = fold_of("B", 3, [("1", "3")])
    pair = mr.validate_candidate(diagram, sigma).pair
    W = mr.generate_weyl(rs_of("B", 3))
    _, gens = mr.embed_weyl(pair, W)
    h_cartan = pair.h_colored.diagram.cartan
    ms = {0: 2, 1: 3, 2: 4, 3: 6}
    for i, j in itertools.combinations(range(len(gens)), 2):
        m = ms[h_cartan[i][j] * h_cartan[j][i]]
        w = W.identity
        for _ in range(m):
            w = W.product(w, W.product(gens[i], gens[j]))
        assert w == W.identity


def test_embed_weyl_rejects_mismatched_group():
    diagram, sigma = fold_of("A", 3, [("1", "3")])
    pair = mr.validate_candidate(diagram, sigma).pair
    wrong = mr.generate_weyl(rs_of("B", 3))
    with pytest.raises(ValueError):
        mr.embed_weyl(pair, wrong)


def test_classify_rank_1():
    pairs = mr.classify(1)
    assert len(pairs) == 2
    labels = [(p.g_diagram.type_label, p.family) for p in pairs]
    assert labels == [("A1", "identity"), ("A1+A1", "diagonal")]


def test_classify_rank_3_connected_folds():
    pairs = mr.classify(3)
    nontrivial = [
        p
        for p in pairs
        if p.family not in ("identity", "diagonal")
    ]
    found = {(p.g_diagram.type_label, p.h_colored.diagram.type_label) for p in nontrivial}
    assert found == {("A3", "C2"), ("B3", "G2")}
    families = {p.family for p in nontrivial}
    assert families == {"A2n-1_Cn", "B3_G2"}


def test_classify_deduplicates_d4_folds():
    pairs = [p for p in mr.classify(4) if p.family == "Dn_Bn-1"]
    assert len(pairs) == 1
    assert pairs[0].g_diagram.type_label == "D4"


def test_classify_is_sorted_and_stable():
    first = mr.classify(3)
    second = mr.classify(3)
    assert mr.classification_to_json(first) == mr.classification_to_json(second)


def test_decompose_splits_a_product_fold():
    g = mr.disjoint_union(mr.build_dynkin("A", 3), mr.build_dynkin("B", 3))
    sigma = mr.FoldingInvolution.from_pairs(g, [("1", "3"), ("4", "6")])
    report = mr.validate_candidate(g, sigma)
    assert report.ok
    assert report.pair.family == "product"
    factors = mr.decompose(report.pair)
    assert [f.g_diagram.type_label for f in factors] == ["A3", "B3"]
    assert [f.h_colored.diagram.type_label for f in factors] == ["C2", "G2"]
    assert [f.family for f in factors] == ["A2n-1_Cn", "B3_G2"]


def test_decompose_identity_product():
    g = mr.disjoint_union(mr.build_dynkin("A", 2), mr.build_dynkin("A", 2))
    report = mr.validate_candidate(g, mr.FoldingInvolution.identity(g))
    factors = mr.decompose(report.pair)
    assert len(factors) == 2
    assert all(f.family == "identity" for f in factors)


def test_decompose_connected_pair_is_a_singleton():
    diagram, sigma = fold_of("A", 3, [("1", "3")])
    pair = mr.validate_candidate(diagram, sigma).pair
    factors = mr.decompose(pair)
    assert len(factors) == 1
    assert factors[0].g_diagram == pair.g_diagram


def test_pair_json_roundtrip():
    diagram, sigma = fold_of("B", 3, [("1", "3")])
    pair = mr.validate_candidate(diagram, sigma).pair
    obj = mr.pair_to_json(pair)
    assert obj["g"]["type"] == "B3"
    assert obj["h"]["type"] == "G2"
    assert obj["sigma"] == [["1", "3"]]
    assert obj["black"] == ["1"]
    g2, sigma2 = candidate_from_json(obj)
    assert g2 == diagram
    assert sigma2 == sigma


def test_candidate_from_json_validates_shape():
    with pytest.raises(ValueError):
        candidate_from_json({"g": {"type": "A3"}})


def test_rank2_table_matches_the_seven_row_pattern():
    rows = mr.rank2_table()
    got = [(r.row, r.verdict, r.tag) for r in rows]
    assert got == [
        (1, "rejected", "wh_stability"),
        (2, "diagonal", "diagonal_pair"),
        (3, "rejected", "wh_stability"),
        (4, "accepted", None),
        (5, "rejected", "fiber_size_3"),
        (6, "rejected", "long_short_stability"),
        (7, "accepted", None),
    ]
    assert [r.posited_h for r in rows] == ["C2", "C2", "C2", "C2", "G2", "G2", "G2"]


def test_rank2_table_accepted_rows_carry_the_standard_folds():
    rows = mr.rank2_table()
    assert rows[3].g.type_label == "A3"
    assert rows[3].posited_black == ("1",)
    assert rows[6].g.type_label == "B3"
    assert rows[6].posited_black == ("1",)


def fiber_sizes_along_orbit(pair, W, sub):
    rho = pair.rho
    sizes = {}
    for image, fiber in rho.fibers.items():
        sizes[image] = len(fiber)
    return sizes


@pytest.mark.parametrize("label", ["A3_C2", "B3_G2", "D4_B3", "A5_C3"])
def test_fiber_size_is_constant_on_wh_orbits(label, classified6):
    gl, hl = label.split("_")
    pair = next(
        p
        for p in classified6
        if p.g_diagram.type_label == gl and p.h_colored.diagram.type_label == hl
    )
    W = mr.generate_weyl(rs_of(gl[0], int(gl[1])))
    sub, _ = mr.embed_weyl(pair, W)
    rho = pair.rho
    roots = mr.build_root_system(pair.g_diagram).roots
    for perm in sub.perms:
        for idx, beta in enumerate(roots):
            image = rho.project(beta)
            moved = rho.project(roots[perm[idx]])
            assert len(rho.fibers[image]) == len(rho.fibers[moved])


def relabel(diagram, sigma, perm):
    n = diagram.rank
    inv = [0] * n
    for i, j in enumerate(perm):
        inv[j] = i
    cartan = tuple(
        tuple(diagram.cartan[perm[i]][perm[j]] for j in range(n)) for i in range(n)
    )
    mapping = tuple(inv[sigma.mapping[perm[i]]] for i in range(n))
    relabeled = mr.DynkinDiagram(diagram.type_label, cartan, diagram.vertices)
    return relabeled, mr.FoldingInvolution(mapping)


@given(st.randoms(use_true_random=False))
def test_canonical_key_is_relabel_invariant(rnd):
    """Vertex renumbering does not change the dedup key."""
    diagram, sigma = fold_of("A", 3, [("1", "3")])
    perm = list(range(3))
    rnd.shuffle(perm)
    other, other_sigma = relabel(diagram, sigma, tuple(perm))
    assert _canonical_key(diagram.cartan, sigma.mapping) == _canonical_key(
        other.cartan, other_sigma.mapping
    )
    report = mr.validate_candidate(other, other_sigma)
    assert report.ok
    assert report.pair.h_colored.diagram.type_label == "C2"
