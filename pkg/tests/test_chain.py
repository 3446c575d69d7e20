import random
from fractions import Fraction

import pytest

from annkh.chain import (
    WeightError,
    build_complex,
    normalize_weights,
    solve_eta,
    transport_labels,
)
from annkh.cube import CapExceeded, smooth
from annkh.diagram import analyze
from conftest import integer_weights, random_braid_diagram, rational_weights

F = Fraction

FULL = ("d0", "dm")
BS = ("b0", "bm")
ANN = ("d0",)
ANN_BS = ("b0",)


def compose(cx, outer, inner, g):
    acc = {}
    for h, v in cx.apply(inner, g).items():
        for h2, v2 in cx.apply(outer, h).items():
            acc[h2] = acc.get(h2, 0) + v * v2
    if cx.field == "gf2":
        acc = {h: v & 1 for h, v in acc.items()}
    return {h: v for h, v in acc.items() if v}


def anticommutator(cx, a, b, g):
    acc = compose(cx, a, b, g)
    for h, v in compose(cx, b, a, g).items():
        acc[h] = acc.get(h, 0) + v
    if cx.field == "gf2":
        acc = {h: v & 1 for h, v in acc.items()}
    return {h: v for h, v in acc.items() if v}


def test_transport_labels_on_merge_and_split(hopf):
    src = smooth(hopf, 0b00)
    dst = smooth(hopf, 0b01)
    moved = sum(
        len(transport_labels(src, dst, lab)) for lab in range(1 << src.n_circles)
    )
    assert moved > 0
    back = sum(
        len(transport_labels(dst, src, lab)) for lab in range(1 << dst.n_circles)
    )
    assert back > 0


def test_differential_relations_small(small_corpus):
    rng = random.Random(1)
    for d in small_corpus[:8]:
        for field in ("gf2", "rat"):
            w = integer_weights(d) if field == "gf2" else rational_weights(d)
            cx = build_complex(d, field, w)
            for g in range(len(cx.gens)):
                assert not compose(cx, FULL, FULL, g)
                assert not compose(cx, BS, BS, g)
                assert not anticommutator(cx, FULL, BS, g)
                assert not compose(cx, ANN, ANN, g)
                assert not anticommutator(cx, ANN, ANN_BS, g)
        rng.random()


def test_gradings_of_differential_terms(hopf):
    cx = build_complex(hopf, "rat", rational_weights(hopf))
    for g, (i, j, k) in enumerate(cx.grading):
        for h, _ in cx.apply(FULL, g).items():
            ih, jh, kh = cx.grading[h]
            assert ih == i + 1 and jh == j
            assert kh - k in (0, -2)
        for h, _ in cx.apply(BS, g).items():
            ih, jh, kh = cx.grading[h]
            assert ih == i - 1 and jh == j - 2
            assert (ih - jh) - (i - j) == 1  # both pieces raise l by one
        for h, _ in cx.apply(ANN, g).items():
            assert cx.grading[h][2] == k


def test_weight_normalization_gf2():
    from annkh.families import necklace

    d = necklace(2)
    assert normalize_weights(d, [0, 1], "gf2") == [0, 1]
    assert normalize_weights(d, [F(1, 3), F(2, 3)], "gf2") == [1, 0]
    with pytest.raises(WeightError):
        normalize_weights(d, [F(1, 2), F(1)], "gf2")
    with pytest.raises(WeightError):
        normalize_weights(d, [0], "gf2")


def test_eta_scaling_exists_for_fixtures(hopf, necklace2):
    for d in (hopf, necklace2):
        eta = solve_eta(d)
        assert len(eta) == d.n_crossings
        assert all(v != 0 for v in eta)


def test_perturbed_differential_squares_to_zero(hopf):
    cx = build_complex(hopf, "rat", [F(0), F(1)])
    parts = FULL + BS
    for g in range(len(cx.gens)):
        assert not compose(cx, parts, parts, g)


def test_equal_weights_kill_the_perturbation(hopf):
    cx = build_complex(hopf, "rat", [F(2), F(2)])
    for g in range(len(cx.gens)):
        assert not cx.apply(BS, g)


def test_build_complex_refuses_large_diagrams():
    from annkh.families import cable_all, necklace

    big = cable_all(necklace(1), 3)
    with pytest.raises(CapExceeded):
        build_complex(big, "gf2")


def test_generator_count_matches_state_circles(necklace1):
    cx = build_complex(necklace1, "gf2")
    expect = sum(
        1 << smooth(necklace1, s).n_circles for s in range(4)
    )
    assert len(cx.gens) == expect


def test_sign_modes_are_both_complexes(small_corpus):
    for d in small_corpus[:4]:
        for mode in (0, 1):
            cx = build_complex(d, "rat", None, sign_mode=mode)
            for g in range(len(cx.gens)):
                assert not compose(cx, FULL, FULL, g)
