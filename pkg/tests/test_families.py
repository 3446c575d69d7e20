import pytest

from annkh.cube import all_ones_report
from annkh.diagram import analyze, linking_number, parse
from annkh.families import (
    FamilySpec,
    ValidationError,
    annular_closure,
    braid_tangle,
    build_family,
    cable,
    cable_all,
    connected_sum,
    disjoint_union,
    identity_tangle,
    necklace,
    split_union,
    stack,
    sublink,
    tangle_J,
    trivial_unknot,
    whitehead_double,
)


def test_necklace1_shape(necklace1):
    assert necklace1.serialize() == (
        "adt v1\nX: 1 5 2 1\nX: 3 2 5 3\nseam: 1 1, 3 -1\n"
    )


def test_necklace_chain_invariants():
    for n in (1, 2, 3):
        d = necklace(n)
        a = analyze(d)
        assert d.n_crossings == 2 * n
        assert a.n_components == n
        assert all(w == 0 for w in a.windings)
        assert all(s == -1 for s in a.signs)
        assert d.wrap_upper_bound() == 2


def test_necklace_neighbor_linking():
    # n = 2: the two circles clasp through both tangles
    assert linking_number(necklace(2), 0, 1) == -2
    d = necklace(3)
    assert all(
        linking_number(d, a, b) == -1 for a in range(3) for b in range(a + 1, 3)
    )


def test_braid_closure_hopf(hopf):
    assert set(hopf.crossings) == {(2, 4, 3, 1), (4, 2, 1, 3)}
    assert analyze(hopf).signs == (1, 1)


def test_braid_tangle_rejects_bad_letters():
    with pytest.raises(ValidationError):
        braid_tangle([2], 2)


def test_stack_identity_is_neutral():
    t = braid_tangle([1, -1], 2)
    both = stack(identity_tangle(2), t)
    d1 = annular_closure(both)
    d2 = annular_closure(t)
    assert analyze(d1).n_components == analyze(d2).n_components
    assert d1.n_crossings == d2.n_crossings


def test_closed_loops_inside_tangles_are_kept():
    clasp = tangle_J()
    two = stack(clasp, clasp)
    d = annular_closure(two)
    assert d == necklace(2)


def test_cable_copies_inherit_linking():
    d2 = cable(necklace(1), 0, 2)
    assert d2.n_crossings == 8
    assert analyze(d2).n_components == 2
    assert linking_number(d2, 0, 1) == -2  # writhe of the core
    rep = all_ones_report(d2)
    assert (rep.essential_count, rep.trivial_count) == (4, 2)
    assert rep.adequate and rep.wrapped


def test_cable_all_census():
    d = cable_all(necklace(2), 2)
    assert d.n_crossings == 16
    rep = all_ones_report(d)
    assert (rep.essential_count, rep.trivial_count) == (4, 4)
    assert rep.adequate


def test_cable_with_braid_insert_merges_strands():
    d = cable(necklace(1), 0, 2, insert=braid_tangle([1], 2))
    a = analyze(d)
    assert d.n_crossings == 9
    assert a.n_components == 1  # one transposition joins the two copies


def test_whitehead_double_clasp_sign():
    base = necklace(1)
    for cs in (1, -1):
        d = whitehead_double(base, 0, clasp_sign=cs)
        a = analyze(d)
        assert d.n_crossings == 10
        assert a.n_components == 1
        assert a.signs[-2:] == (cs, cs)
    cert = whitehead_double(base, 0, clasp_sign=-1)
    rep = all_ones_report(cert)
    assert rep.adequate and rep.wrapped
    assert rep.essential_count == 4


def test_sublink_keeps_component_geometry():
    d2 = cable(necklace(1), 0, 2)
    part = sublink(d2, [0])
    a = analyze(part)
    assert a.n_components == 1
    assert a.windings == (0,)
    assert part.n_crossings == 2  # each copy keeps its self-crossings


def test_split_union_breaks_all_linking():
    d = necklace(2)
    sp = split_union(d, [[0], [1]])
    a = analyze(sp)
    assert a.n_components == 2
    assert total_linking(sp) == 0


def total_linking(d):
    from annkh.diagram import total_pairwise_linking

    return total_pairwise_linking(d)


def test_disjoint_union_annular_vs_planar(necklace1):
    ann = disjoint_union(necklace1, necklace1, annular=True)
    assert analyze(ann).n_components == 2
    assert ann.wrap_upper_bound() == 4


def test_connected_sum_adds_crossings(necklace1):
    local = annular_closure(braid_tangle([1, 1], 2), arc_weight=0)
    cs = connected_sum(necklace1, local)
    a = analyze(cs)
    assert cs.n_crossings == 4
    assert a.n_components == 2
    assert cs.wrap_upper_bound() == 2


def test_build_family_deterministic():
    s = FamilySpec(family="cable", n=2, m=2)
    assert build_family(s).serialize() == build_family(s).serialize()


def test_build_family_whitehead_defaults():
    d = build_family(FamilySpec(family="whitehead", n=1))
    rep = all_ones_report(d)
    assert d.n_crossings == 10
    assert rep.adequate and rep.wrapped


def test_build_family_rejects_unknown():
    with pytest.raises(ValidationError):
        build_family(FamilySpec(family="torus"))


def test_family_round_trips_through_text():
    d = build_family(FamilySpec(family="cable", n=1, m=2, braids=((1, 1),)))
    back = parse(d.serialize())
    assert back.canonical_hash() == d.canonical_hash()
    assert back.serialize() == d.serialize()
