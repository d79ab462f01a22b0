import itertools

import pytest

from conftest import NOT_SHARP_A, NOT_SHARP_B, brute_cover_table
from tnexp.covers import (
    build_cover_table,
    check_trivial_containment,
    cover_exponent,
    min_product_cover,
)
from tnexp.trees import (
    Permutation,
    all_permutations,
    build_ht,
    build_tt,
    doad_family,
    enumerate_shapes,
    mask_from_leaves,
    parse_tree,
)


# ---------------------------------------------------------------------------
# cover tables against the brute-force oracle

def test_table_matches_brute_force_all_small_trees():
    for n in range(2, 6):
        for t in enumerate_shapes(n):
            table = build_cover_table(t)
            brute = brute_cover_table(t)
            for mask in range(1 << n):
                assert table.count(mask) == brute[mask]


def test_table_spot_values():
    ht2 = build_cover_table(build_ht(2))
    assert ht2.count(mask_from_leaves([2, 3])) == 2
    assert ht2.count(mask_from_leaves([1, 3])) == 2
    assert ht2.count(0) == 0
    tt8 = build_cover_table(build_tt(8))
    # interval touching neither end: only singletons fit inside it
    assert tt8.count(mask_from_leaves(range(2, 8))) == 6
    assert tt8.count(mask_from_leaves([1, 8])) == 2


def test_table_invariants():
    for t in enumerate_shapes(6):
        table = build_cover_table(t)
        fam = doad_family(t)
        full = t.full_mask
        half = t.n // 2
        for mask in range(1, full + 1):
            n_s = table.count(mask)
            assert n_s >= 1
            assert (n_s == 1) == (mask in fam)
            assert n_s <= bin(mask).count("1")
            if mask != full:
                assert min(n_s, table.count(full ^ mask)) <= half


def test_witness_decompositions():
    for t in enumerate_shapes(5):
        table = build_cover_table(t)
        fam = doad_family(t)
        for mask in range(1, t.full_mask + 1):
            wit = table.witness(mask)
            assert len(wit) == table.count(mask)
            union = 0
            for vid, kind, m in wit:
                assert m in fam
                assert (vid, kind) in fam.witnesses[m]
                assert union & m == 0  # pairwise disjoint
                union |= m
            assert union == mask
            assert table.witness(mask) == wit  # deterministic


def test_table_cap():
    with pytest.raises(ValueError):
        build_cover_table(build_tt(25))


# ---------------------------------------------------------------------------
# cover exponent reports

def test_ht2_into_tt4_identity():
    rep = cover_exponent(build_ht(2), build_tt(4))
    assert rep.cover_bound == 1
    assert rep.naive_max == 1


def test_self_instances_are_one():
    for n in range(2, 7):
        for t in enumerate_shapes(n):
            assert cover_exponent(t, t).cover_bound == 1


def test_not_sharp_pair_is_one():
    rep = cover_exponent(parse_tree(NOT_SHARP_A), parse_tree(NOT_SHARP_B))
    assert rep.cover_bound == 1


def test_report_consistency():
    t, t2 = build_ht(3), build_tt(8)
    rep = cover_exponent(t, t2, with_witnesses=True)
    assert rep.cover_bound == 2
    assert rep.cover_bound == max(1, max(nc.value for nc in rep.per_node))
    assert rep.naive_max >= rep.cover_bound
    assert len(rep.per_node) == t2.n - 1
    table = build_cover_table(t)
    for nc in rep.per_node:
        side = nc.desc_set if nc.chosen == "desc" else nc.anti_set
        wit = rep.witnesses[nc.label]
        assert len(wit) == table.count(side)
    d = rep.to_dict()
    assert d["cover_bound"] == 2 and "witnesses" in d


def test_permuted_instances_match_per_node_minimum():
    # spot-check the permutation pullback against a direct recomputation
    t, t2 = build_ht(2), build_tt(4)
    table = build_cover_table(t)
    full = t.full_mask
    for perm in all_permutations(4):
        rep = cover_exponent(t, t2, perm, table=table)
        want = 1
        for w in t2.internal:
            if w == t2.root:
                continue
            d = perm.pullback(t2.desc_masks[w])
            want = max(want, min(table.count(d), table.count(full ^ d)))
        assert rep.cover_bound == want


def test_mirror_probe_symmetry():
    # mirroring only the target tree and post-composing the permutation
    # with the leaf reversal leaves every pulled-back node set unchanged
    for n in (4, 5):
        rev = Permutation(range(n, 0, -1))
        shapes = enumerate_shapes(n)
        perms = list(itertools.islice(all_permutations(n), 0, None, 5))
        for t, t2 in itertools.product(shapes, repeat=2):
            table = build_cover_table(t)
            for perm in perms:
                a = cover_exponent(t, t2, perm, table=table).cover_bound
                b = cover_exponent(t, t2.mirror(), rev.compose(perm),
                                   table=table).cover_bound
                assert a == b


def test_mirror_conjugation_invariance():
    for n in (4, 5):
        shapes = enumerate_shapes(n)
        rev = Permutation(range(n, 0, -1))
        perms = list(itertools.islice(all_permutations(n), 0, None, 7))
        for t, t2 in itertools.product(shapes, repeat=2):
            table = build_cover_table(t)
            m_table = build_cover_table(t.mirror())
            for perm in perms:
                conj = rev.compose(perm).compose(rev)
                a = cover_exponent(t, t2, perm, table=table).cover_bound
                b = cover_exponent(t.mirror(), t2.mirror(), conj, table=m_table).cover_bound
                assert a == b


def test_leaf_mismatch_rejected():
    with pytest.raises(ValueError):
        cover_exponent(build_ht(2), build_tt(8))
    with pytest.raises(ValueError):
        cover_exponent(build_ht(2), build_tt(4), Permutation.identity(3))


# ---------------------------------------------------------------------------
# weighted covers

def test_product_all_ones_weight():
    for t in enumerate_shapes(4):
        for mask in range(1, t.full_mask + 1):
            product, wit = min_product_cover(t, 1, mask)
            assert product == 1
            assert sum(m for *_, m in wit) == mask  # disjoint exact cover


def test_product_uniform_weight_matches_counts():
    for t in enumerate_shapes(5):
        table = build_cover_table(t)
        for mask in range(1, t.full_mask + 1):
            product, wit = min_product_cover(t, 2, mask)
            want = table.count(mask)
            if mask == t.full_mask:
                # two overlapping anti sets may beat a longer partition
                want = min(want, 2)
            assert product == 2 ** want
            assert len(wit) == want


def test_product_ht2_example():
    product, wit = min_product_cover(build_ht(2), 2, mask_from_leaves([2, 3]))
    assert product == 4
    assert len(wit) == 2


def test_product_single_doad_uses_cheapest_witness():
    t = build_ht(2)
    # {3,4} is both the descendant set of one node and the anti set of
    # another; with singletons priced out, the cheap anti witness wins
    f = [2] * t.size
    f[t.vertex_by_label("1")] = 5
    f[t.vertex_by_label("0")] = 3
    product, wit = min_product_cover(t, f, mask_from_leaves([3, 4]))
    assert product == 3
    assert len(wit) == 1
    assert wit[0][1] == "anti"


def test_product_full_set_overlapping_pair():
    # anti sets of two incomparable cheap leaves cover everything for 1*1,
    # beating every disjoint partition under these weights
    t = build_ht(2)
    f = [10] * t.size
    f[t.root] = 5
    f[t.leaf_vertex(1)] = 1
    f[t.leaf_vertex(3)] = 1
    product, wit = min_product_cover(t, f, t.full_mask)
    assert product == 1
    assert len(wit) == 2

    # brute force over all covers of up to three doad sets
    fam = doad_family(t)
    weight = {m: min(f[v] for v, _ in fam.witnesses[m]) for m in fam.masks}
    best = min(
        (weight[a] * weight[b] * weight[c]
         for a, b, c in itertools.combinations_with_replacement(fam.masks, 3)
         if a | b | c == t.full_mask),
        default=None)
    assert product <= best


def test_product_matches_brute_force_random_weights():
    import numpy as np
    rng = np.random.default_rng(0)
    for n in (3, 4):
        for t in enumerate_shapes(n):
            fam = doad_family(t)
            full = t.full_mask
            for _ in range(10):
                f = [int(x) for x in rng.integers(1, 9, size=t.size)]
                weight = {m: min(f[v] for v, _ in fam.witnesses[m])
                          for m in fam.masks}
                for mask in range(1, full + 1):
                    best = None
                    for k in range(1, 5):
                        for combo in itertools.combinations_with_replacement(fam.masks, k):
                            u = 0
                            for m in combo:
                                u |= m
                            if u == mask:
                                p = 1
                                for m in combo:
                                    p *= weight[m]
                                best = p if best is None else min(best, p)
                    got, _ = min_product_cover(t, f, mask)
                    assert got == best


def test_product_rejects_bad_weights():
    t = build_ht(2)
    with pytest.raises(ValueError):
        min_product_cover(t, 0, 1)
    with pytest.raises(ValueError):
        min_product_cover(t, [1] * (t.size - 1), 1)


# ---------------------------------------------------------------------------
# trivial containment

def test_all_ones_network_trivially_contained():
    for t, t2 in itertools.product(enumerate_shapes(5), repeat=2):
        rep = check_trivial_containment(t, 1, t2, 1)
        assert rep.ok


def test_trivial_containment_ht2_tt4():
    rep = check_trivial_containment(build_ht(2), 2, build_tt(4), 2)
    assert rep.ok
    assert rep.sets_used >= 1
    assert rep.to_dict()["holds_for_all_r"] is True


def test_trivial_containment_violation_reports_node():
    t, t2 = build_ht(2), build_tt(4)
    f2 = [2] * t2.size
    # the node with descendant set {1,2,3} needs product 2 on its best side
    f2[t2.vertex_by_label("00")] = 1
    rep = check_trivial_containment(t, 2, t2, f2)
    assert not rep.ok
    assert "00" in rep.violations
