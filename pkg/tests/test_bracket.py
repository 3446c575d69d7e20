import pytest

from annkh.bracket import (
    euler_characteristic,
    max_annular_degree,
    state_sum,
    wrap_report,
)
from annkh.cube import CapExceeded
from annkh.families import (
    disjoint_union,
    essential_unknot,
    necklace,
    trivial_unknot,
)
from annkh.homology import homology_dims


def test_unnormalized_circle_values():
    assert state_sum(trivial_unknot()) == {(2, 0): -1, (-2, 0): -1}
    assert state_sum(essential_unknot()) == {(0, 1): 1}


def test_kink_brackets(positive_kink, negative_kink):
    assert state_sum(positive_kink) == {(3, 1): -1}
    assert state_sum(negative_kink) == {(-3, 1): -1}


def test_necklace1_bracket(necklace1):
    assert state_sum(necklace1) == {
        (4, 0): -1,
        (0, 0): -1,
        (0, 2): 1,
        (-4, 2): -1,
    }
    assert max_annular_degree(state_sum(necklace1)) == 2


def test_bracket_multiplicative_on_disjoint_union(necklace1):
    two = disjoint_union(necklace1, essential_unknot(), annular=True)
    base = state_sum(necklace1)
    prod = {(a, z + 1): c for (a, z), c in base.items()}
    assert state_sum(two) == prod


def test_max_degree_bounded_by_wrap(small_corpus):
    for d in small_corpus:
        poly = state_sum(d)
        assert max_annular_degree(poly) <= d.wrap_upper_bound()
        parities = {z % 2 for _, z in poly}
        assert len(parities) <= 1  # z-degrees share the component parity


def test_euler_matches_alternating_homology_sum(hopf, necklace1):
    for d in (hopf, necklace1):
        chi = euler_characteristic(d)
        dims = homology_dims(d, field="gf2")
        alt = {}
        for (i, j, k), v in dims.items():
            key = (j, k)
            alt[key] = alt.get(key, 0) + (v if i % 2 == 0 else -v)
        alt = {key: v for key, v in alt.items() if v}
        assert alt == chi


def test_euler_max_lambda_equals_bracket_max_z(small_corpus):
    for d in small_corpus[:15]:
        assert max_annular_degree(euler_characteristic(d)) == max_annular_degree(
            state_sum(d)
        )


def test_state_sum_cap(necklace2):
    with pytest.raises(CapExceeded):
        state_sum(necklace2, cap=3)


def test_wrap_report_fields(necklace1, positive_kink):
    rep = wrap_report(necklace1, use_homology=True)
    assert rep.status == "VERIFIED"
    assert rep.wrap_upper_bound == 2
    assert rep.bracket_max_degree == 2
    assert rep.akh_max_k == 2
    assert rep.minus_adequately_wrapped

    kinked = wrap_report(positive_kink)
    assert kinked.status == "VERIFIED"
    assert kinked.wrap_upper_bound == 1
    assert not kinked.minus_adequately_wrapped
    assert kinked.akh_max_k is None


def test_empty_diagram_bracket():
    from annkh.diagram import make_diagram

    assert state_sum(make_diagram()) == {(0, 0): 1}


def test_protected_extremal_term(necklace1):
    """At the all-1's state the sum contributes A^(-n) times z^E with a unit
    coefficient that nothing else in that z-degree and A-degree can cancel."""
    poly = state_sum(necklace1)
    zmax = max_annular_degree(poly)
    amin = min(a for (a, z) in poly if z == zmax)
    assert poly[(amin, zmax)] in (1, -1)
