"""Acceptance gate: one test per release criterion, each printing a single
PASS/FAIL line with its wall-clock time against the stated budget."""

import time
from fractions import Fraction

import pytest

from annkh.bracket import (
    euler_characteristic,
    max_annular_degree,
    state_sum,
    wrap_report,
)
from annkh.chain import build_complex
from annkh.cube import all_ones_report
from annkh.diagram import analyze
from annkh.families import (
    annular_closure,
    braid_tangle,
    cable,
    cable_all,
    disjoint_union,
    essential_unknot,
    necklace,
    split_union,
    trivial_unknot,
    whitehead_double,
)
from annkh.homology import (
    homology_dims,
    match_up_to_l_shift,
    max_nonzero_k,
    max_nonzero_k_scan,
    rank_inequality_check,
    split_shift,
    ss_pages,
    weight_groups,
)
from conftest import corpus, integer_weights, rational_weights

F = Fraction

FULL = ("d0", "dm")
BS = ("b0", "bm")
ANN = ("d0",)
ANN_BS = ("b0",)

CENSUS_PAIRS = ((1, 1), (2, 1), (3, 1), (1, 2), (2, 2), (1, 3))


def _verdict(capsys, num: int, name: str, ok: bool, t0: float, budget: float):
    elapsed = time.perf_counter() - t0
    status = "PASS" if (ok and elapsed < budget) else "FAIL"
    with capsys.disabled():
        print(f"\n[PRIMARY] criterion {num} ({name}): {status} "
              f"[{elapsed:.1f}s of {budget:.0f}s]")
    assert ok, f"criterion {num} ({name}) failed"
    assert elapsed < budget, f"criterion {num} exceeded {budget}s"


def _relations_hold(cx) -> bool:
    """All five identities at once; single applications are tabulated so each
    composition only walks cached dicts."""
    n = len(cx.gens)
    full = [cx.apply(FULL, g) for g in range(n)]
    bs = [cx.apply(BS, g) for g in range(n)]
    ann = [cx.apply(ANN, g) for g in range(n)]
    annbs = [cx.apply(ANN_BS, g) for g in range(n)]
    gf2 = cx.field == "gf2"

    def vanishes(*legs) -> bool:
        # legs: (outer_table, inner_table) pairs whose composites must sum to 0
        for g in range(n):
            acc = {}
            for outer, inner in legs:
                for h, v in inner[g].items():
                    for h2, v2 in outer[h].items():
                        acc[h2] = acc.get(h2, 0) + v * v2
            if any((v & 1 if gf2 else v) for v in acc.values()):
                return False
        return True

    return (
        vanishes((full, full))
        and vanishes((bs, bs))
        and vanishes((full, bs), (bs, full))
        and vanishes((ann, ann))
        and vanishes((ann, annbs), (annbs, ann))
    )


def _necklace_cable(n: int, m: int, word=()):
    base = necklace(n)
    if m == 1 and not word:
        return base
    inserts = [braid_tangle(word, m) if word else None] * analyze(base).n_components
    return cable_all(base, m, inserts)


@pytest.fixture(scope="module")
def acceptance_corpus():
    return corpus(200, seed=2024, max_letters=8)


def test_criterion_1_unknot_baselines(capsys):
    t0 = time.perf_counter()
    ok = homology_dims(trivial_unknot()) == {(0, 1, 0): 1, (0, -1, 0): 1}
    ok = ok and homology_dims(essential_unknot()) == {
        (0, 1, 1): 1,
        (0, -1, -1): 1,
    }
    _verdict(capsys, 1, "unknot baselines", ok, t0, 1.0)


def test_criterion_2_differential_relations(capsys, acceptance_corpus):
    t0 = time.perf_counter()
    ok = True
    for d in acceptance_corpus:
        for field in ("gf2", "rat"):
            w = integer_weights(d) if field == "gf2" else rational_weights(d)
            if not _relations_hold(build_complex(d, field, w)):
                ok = False
                break
        if not ok:
            break
    _verdict(capsys, 2, "differential relations", ok, t0, 120.0)


def test_criterion_3_euler_bracket_agreement(capsys, acceptance_corpus):
    t0 = time.perf_counter()
    ok = True
    for d in acceptance_corpus:
        poly = state_sum(d)
        euler = euler_characteristic(d)
        if max_annular_degree(euler) != max_annular_degree(poly):
            ok = False
            break
        alt = {}
        for (i, j, k), v in homology_dims(d, field="gf2").items():
            key = (j, k)
            alt[key] = alt.get(key, 0) + (v if i % 2 == 0 else -v)
        alt = {key: v for key, v in alt.items() if v}
        if alt != euler:
            ok = False
            break
    _verdict(capsys, 3, "euler and bracket agree", ok, t0, 120.0)


def test_criterion_4_all_ones_census(capsys):
    t0 = time.perf_counter()
    ok = True
    for n, m in CENSUS_PAIRS:
        rep = all_ones_report(_necklace_cable(n, m))
        ok = ok and rep.essential_count == 2 * m
        ok = ok and rep.trivial_count == n * m
        ok = ok and rep.adequate
    _verdict(capsys, 4, "all-ones circle census", ok, t0, 10.0)


def test_criterion_5_top_degree_equals_twice_multiplicity(capsys):
    t0 = time.perf_counter()
    ok = True
    instances = [(_necklace_cable(n, m), 2 * m) for n, m in CENSUS_PAIRS]
    for word in ((1,), (-1,), (1, 1)):
        instances.append((_necklace_cable(1, 2, word), 4))
    for d, expect in instances:
        ok = ok and d.n_crossings <= 18
        ok = ok and max_annular_degree(state_sum(d)) == expect
        ok = ok and max_nonzero_k_scan(d, field="gf2") == expect
    _verdict(capsys, 5, "top annular degree is 2m", ok, t0, 900.0)


def test_criterion_6_doubled_necklace_verified(capsys):
    t0 = time.perf_counter()
    doubled = whitehead_double(necklace(1))
    recabled = cable(doubled, 0, 1)
    ok = True
    for d in (doubled, recabled):
        rep = wrap_report(d, use_homology=True, field="gf2")
        ok = ok and rep.status == "VERIFIED"
        ok = ok and rep.wrap_upper_bound == 4
        ok = ok and rep.minus_adequately_wrapped
        ok = ok and rep.bracket_max_degree == 4
        ok = ok and rep.akh_max_k == 4
    _verdict(capsys, 6, "doubled clasp chain verified at 4", ok, t0, 300.0)


def test_criterion_7_top_sector_of_clasp_chains(capsys):
    t0 = time.perf_counter()
    ok = True
    for n in (1, 2):
        dims = homology_dims(necklace(n), field="gf2")
        ok = ok and any(k == 2 and v for (_i, _j, k), v in dims.items())
        ok = ok and max_nonzero_k(dims) == 2
    _verdict(capsys, 7, "clasp chains top out at k = 2", ok, t0, 120.0)


def test_criterion_8_splitting_convergence(capsys, hopf):
    t0 = time.perf_counter()
    ok = True
    fixtures = [hopf, cable(necklace(1), 0, 2)]
    for d in fixtures:
        weights = [F(0), F(1)]
        rep = ss_pages(d, weights)
        dims = homology_dims(d, field="rat")
        e1 = {}
        for (i, j, k), v in dims.items():
            key = (i - j, j - d.n_crossings, k)
            e1[key] = e1.get(key, 0) + v
        ok = ok and rep.page_lgk(1) == e1
        sizes = [sum(rep.pages[r].values()) for r in sorted(rep.pages)]
        ok = ok and all(a >= b for a, b in zip(sizes, sizes[1:]))
        groups = weight_groups(d, weights)
        t = split_shift(d, groups)
        target = homology_dims(split_union(d, groups), field="rat")
        target_lk = {}
        for (i, j, k), v in target.items():
            target_lk[(i - j, k)] = target_lk.get((i - j, k), 0) + v
        ok = ok and match_up_to_l_shift(rep.einf_lk(), target_lk) == t
    _verdict(capsys, 8, "splitting sequence converges", ok, t0, 300.0)


def test_criterion_9_rank_inequality(capsys, hopf):
    t0 = time.perf_counter()
    fixtures = [
        necklace(2),
        necklace(3),
        cable(necklace(1), 0, 2),
        hopf,
        annular_closure(braid_tangle([1, 1], 2), arc_weight=0),
    ]
    ok = True
    for d in fixtures:
        nc = analyze(d).n_components
        rep = rank_inequality_check(d, [F(c) for c in range(nc)])
        ok = ok and rep.passed
        ok = ok and all(lhs >= rhs for (_l, _k, lhs, rhs, _s) in rep.rows)
    _verdict(capsys, 9, "rank inequality per slot", ok, t0, 300.0)


def test_criterion_10_collapse_bound(capsys, hopf):
    t0 = time.perf_counter()
    splits = [
        split_union(necklace(2), [[0], [1]]),
        disjoint_union(essential_unknot(), trivial_unknot(), annular=True),
        split_union(hopf, [[0], [1]]),
    ]
    ok = True
    for d in splits:
        ok = ok and ss_pages(d, [F(0), F(1)]).b_value == 0
    ok = ok and ss_pages(hopf, [F(0), F(1)]).b_value <= 1
    _verdict(capsys, 10, "page collapse bound", ok, t0, 60.0)


def test_criterion_11_robustness(capsys, hopf, positive_kink, negative_kink):
    t0 = time.perf_counter()
    ok = True
    for d in (necklace(1), hopf, cable(necklace(1), 0, 2)):
        ok = ok and homology_dims(d, field="gf2", sign_mode=0) == homology_dims(
            d, field="gf2", sign_mode=1
        )
    pairs = [
        (positive_kink, essential_unknot()),
        (negative_kink, essential_unknot()),
        (
            annular_closure(braid_tangle([1, -1], 2)),
            annular_closure(braid_tangle([], 2)),
        ),
        (
            annular_closure(braid_tangle([1, 2, 1], 3)),
            annular_closure(braid_tangle([2, 1, 2], 3)),
        ),
    ]
    for left, right in pairs:
        ok = ok and homology_dims(left, field="gf2") == homology_dims(
            right, field="gf2"
        )
    _verdict(capsys, 11, "sign and move robustness", ok, t0, 120.0)
