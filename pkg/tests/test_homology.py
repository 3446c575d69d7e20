from fractions import Fraction

import pytest

from annkh.bracket import state_sum, max_annular_degree
from annkh.diagram import analyze, make_diagram
from annkh.families import (
    annular_closure,
    braid_tangle,
    cable,
    disjoint_union,
    essential_unknot,
    necklace,
    split_union,
    trivial_unknot,
)
from annkh.homology import (
    collapse_lk,
    homology_dims,
    match_up_to_l_shift,
    max_nonzero_k,
    max_nonzero_k_scan,
    rank_inequality_check,
    split_shift,
    ss_pages,
    tensor_dims,
    weight_groups,
)

F = Fraction

TRIVIAL_DIMS = {(0, 1, 0): 1, (0, -1, 0): 1}
ESSENTIAL_DIMS = {(0, 1, 1): 1, (0, -1, -1): 1}
NECKLACE1_DIMS = {
    (-2, -5, 0): 1,
    (-1, -5, -2): 1,
    (-1, -3, 0): 1,
    (-1, -1, 2): 1,
    (0, -3, -2): 1,
    (0, -1, 0): 2,
    (0, 1, 2): 1,
}
HOPF_DIMS = {
    (0, 0, -2): 1,
    (0, 2, 0): 1,
    (0, 4, 2): 1,
    (1, 4, 0): 1,
    (2, 4, 0): 1,
    (2, 6, 0): 1,
}


def test_unknot_baselines():
    assert homology_dims(trivial_unknot()) == TRIVIAL_DIMS
    assert homology_dims(essential_unknot()) == ESSENTIAL_DIMS


def test_necklace1_dims_both_fields(necklace1):
    assert homology_dims(necklace1, field="gf2") == NECKLACE1_DIMS
    assert homology_dims(necklace1, field="rat") == NECKLACE1_DIMS


def test_hopf_dims(hopf):
    assert homology_dims(hopf, field="rat") == HOPF_DIMS


def test_unique_generator_in_top_annular_grading(necklace1):
    """The all-1's all-plus class sits alone in its (j, k) slot, which keeps
    the extremal annular degree visible in both homology and the bracket."""
    dims = homology_dims(necklace1)
    kmax = max_nonzero_k(dims)
    top = {(i, j): v for (i, j, k), v in dims.items() if k == kmax}
    jtop = max(j for _, j in top)
    assert sum(v for (_i, j), v in top.items() if j == jtop) == 1
    assert kmax == max_annular_degree(state_sum(necklace1))


def test_scan_agrees_with_full_table(small_corpus):
    for d in small_corpus[:10]:
        if d.n_crossings > 6:
            continue
        dims = homology_dims(d, field="gf2")
        assert max_nonzero_k_scan(d, field="gf2") == max_nonzero_k(dims)


def test_scan_on_crossingless_diagrams():
    d = make_diagram(free_circles=[1, 1, 0])
    assert max_nonzero_k_scan(d) == 2


def test_kunneth_for_disjoint_unions(necklace1):
    two = disjoint_union(necklace1, essential_unknot(), annular=True)
    expect = tensor_dims(homology_dims(necklace1, field="rat"), ESSENTIAL_DIMS)
    assert homology_dims(two, field="rat") == expect


def test_reidemeister_one(positive_kink, negative_kink):
    for d in (positive_kink, negative_kink):
        assert homology_dims(d, field="gf2") == ESSENTIAL_DIMS


def test_reidemeister_two():
    wiggled = annular_closure(braid_tangle([1, -1], 2))
    flat = annular_closure(braid_tangle([], 2))
    assert homology_dims(wiggled, field="gf2") == homology_dims(flat, field="gf2")


def test_reidemeister_three():
    left = annular_closure(braid_tangle([1, 2, 1], 3))
    right = annular_closure(braid_tangle([2, 1, 2], 3))
    assert homology_dims(left, field="gf2") == homology_dims(right, field="gf2")


def test_sign_assignment_independence(hopf, necklace1):
    for d in (hopf, necklace1):
        for field in ("gf2", "rat"):
            assert homology_dims(d, field=field, sign_mode=0) == homology_dims(
                d, field=field, sign_mode=1
            )


def test_hopf_spectral_sequence(hopf):
    rep = ss_pages(hopf, [F(0), F(1)])
    assert rep.stabilized_at == 2
    assert rep.b_value == 1
    assert rep.einf_lk() == {(-4, 2): 1, (-2, 0): 2, (0, -2): 1}
    # E1 equals the annular homology regraded by (l, g2, k)
    dims = homology_dims(hopf, field="rat")
    n = hopf.n_crossings
    e1 = {}
    for (i, j, k), v in dims.items():
        key = (i - j, j - n, k)
        e1[key] = e1.get(key, 0) + v
    assert rep.page_lgk(1) == e1


def test_page_sizes_weakly_decrease(hopf):
    rep = ss_pages(hopf, [F(0), F(1)])
    sizes = [sum(rep.pages[r].values()) for r in sorted(rep.pages)]
    assert all(a >= b for a, b in zip(sizes, sizes[1:]))
    assert sum(rep.einf.values()) == sizes[-1]


def test_limit_is_split_homology_up_to_shift(hopf):
    rep = ss_pages(hopf, [F(0), F(1)])
    groups = weight_groups(hopf, [F(0), F(1)])
    t = split_shift(hopf, groups)
    target = collapse_lk(homology_dims(split_union(hopf, groups), field="rat"))
    assert match_up_to_l_shift(rep.einf_lk(), target) == t
    assert t == 2


def test_equal_weights_stabilize_immediately(hopf):
    rep = ss_pages(hopf, [F(3), F(3)])
    assert rep.stabilized_at == 1
    assert rep.b_value == 0


def test_split_diagrams_have_b_zero(necklace2):
    sp = split_union(necklace2, [[0], [1]])
    rep = ss_pages(sp, [F(0), F(1)])
    assert rep.b_value == 0
    assert rep.stabilized_at == 1


def test_rank_inequality_on_fixtures(hopf, necklace2):
    cable2 = cable(necklace(1), 0, 2)
    for d in (hopf, necklace2, cable2):
        nc = analyze(d).n_components
        rep = rank_inequality_check(d, [F(c) for c in range(nc)])
        assert rep.passed
        assert all(ok for *_rest, ok in rep.rows)


def test_cable_shift_is_twice_total_linking():
    d = cable(necklace(1), 0, 2)
    groups = weight_groups(d, [F(0), F(1)])
    assert split_shift(d, groups) == -4


def test_match_up_to_l_shift_rejects_mismatch():
    a = {(0, 0): 1}
    b = {(0, 0): 2}
    assert match_up_to_l_shift(a, b) is None
    assert match_up_to_l_shift({(1, 0): 1}, {(5, 0): 1}) == 4
