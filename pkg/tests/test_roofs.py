import pytest

from deltasite import fixtures
from deltasite.categories import FiniteCategory, Morphism
from deltasite.errors import ClosureError, PreconditionError
from deltasite.roofs import (Roof, RoofCategory, build_structural_roof_topology,
                             verify_roof_category)
from deltasite.sites import CoveringFamily, verify_grothendieck

from conftest import chain_category, disc


def test_identity_roof_has_identity_base():
    rc = RoofCategory(chain_category(3))
    r = rc.identity_roof("A")
    assert r == Roof("A", "id:A", "A")


def test_identity_roof_is_two_sided_unit():
    rc = RoofCategory(chain_category(3))
    f = rc.roof_of("f01")
    assert rc.compose(rc.identity_roof("A"), f) == f
    assert rc.compose(f, rc.identity_roof("B")) == f


def test_apex_depends_only_on_source():
    model = fixtures.four_events_model()
    rc = RoofCategory(model.category)
    apex_id = rc.materialize(rc.identity_roof("empty"))[0]
    apex_f = rc.materialize(rc.roof_of("i:empty>e_ab"))[0]
    assert apex_id.levels == apex_f.levels
    assert apex_id.faces == apex_f.faces


def test_compose_requires_matching_endpoints():
    rc = RoofCategory(chain_category(3))
    with pytest.raises(PreconditionError):
        rc.compose(rc.roof_of("f12"), rc.roof_of("f01"))


def test_compose_base_is_composite_of_bases_exhaustively():
    for builder in (lambda: chain_category(4),):
        rc = RoofCategory(builder())
        frag = rc.fragment
        roofs = list(rc.roofs.values())
        for r1 in roofs:
            for r2 in roofs:
                if r1.target != r2.source:
                    continue
                assert rc.compose(r1, r2).base == frag.compose(r2.base, r1.base)


def test_triple_composites_agree_both_ways():
    rc = RoofCategory(chain_category(4))
    roofs = list(rc.roofs.values())
    checked = 0
    for r1 in roofs:
        for r2 in roofs:
            if r1.target != r2.source:
                continue
            for r3 in roofs:
                if r2.target != r3.source:
                    continue
                assert rc.compose(rc.compose(r1, r2), r3) == \
                    rc.compose(r1, rc.compose(r2, r3))
                checked += 1
    assert checked > 0


def test_verify_single_chain_passes():
    report = verify_roof_category(RoofCategory(chain_category(3)))
    assert report.passed
    assert any(check == "associativity" for check, _, _ in report.records)


def test_verify_raises_closure_error_naming_the_pair():
    objs = {o: None for o in "ABC"}
    morphisms = [Morphism("f", "A", "B"), Morphism("g", "B", "C")]
    cat = FiniteCategory(objs, morphisms, {})  # no composite declared
    with pytest.raises(ClosureError, match=r"\(g, f\)"):
        verify_roof_category(RoofCategory(cat))


def test_verify_commutative_square_enumerates_all_triples():
    # square: A -> B, A -> C, B -> D, C -> D with agreeing diagonal
    objs = {o: None for o in "ABCD"}
    morphisms = [Morphism("ab", "A", "B"), Morphism("ac", "A", "C"),
                 Morphism("bd", "B", "D"), Morphism("cd", "C", "D"),
                 Morphism("ad", "A", "D")]
    comp = {("bd", "ab"): "ad", ("cd", "ac"): "ad"}
    cat = FiniteCategory(objs, morphisms, comp)
    report = verify_roof_category(RoofCategory(cat))
    assert report.passed
    assert len(cat.objects) == 4


def test_roof_functoriality_records_present():
    report = verify_roof_category(RoofCategory(chain_category(3)))
    assert any(check == "base-functorial" for check, _, _ in report.records)


def test_roof_equality_is_canonical_by_base():
    rc = RoofCategory(chain_category(3))
    assert rc.roof_of("f01") == Roof("A", "f01", "B")
    assert rc.roof_of("f01") != rc.roof_of("f02")


def test_apex_cardinality_matches_cone_sum():
    model = fixtures.six_events_model()
    rc = RoofCategory(model.category)
    from deltasite.categories import forward_cone
    for obj in rc.objects():
        apex = rc.apex_event(obj)
        a0 = len(model.category.event(obj).simplices(0))
        cone_sum = sum(len(model.category.event(b).simplices(0))
                       for b in forward_cone(model.category, obj))
        assert len(apex.simplices(0)) == a0 * cone_sum


def test_roof_legs_cohere():
    model = fixtures.four_events_model()
    rc = RoofCategory(model.category)
    roof = rc.roof_of("i:e_a>e_ab")
    apex, p1, pi_b = rc.materialize(roof)
    base_map = model.category.morphism("i:e_a>e_ab").event_map
    for s in apex.simplices(0):
        assert pi_b.apply(0, s) == base_map.apply(0, p1.apply(0, s))


# -- structural roof topology ------------------------------------------------------

def test_iso_base_roof_covers():
    model = fixtures.four_events_model()
    site = build_structural_roof_topology(RoofCategory(model.category))
    assert site.is_covering(CoveringFamily("e_a", ("id:e_a",)))


def test_non_mono_base_excluded():
    big = disc("big", [], vertices=["x", "y"])
    one = disc("one", [], vertices=["z"])
    from deltasite.events import EventMap
    squash = EventMap("squash", big, one, {0: {"x": "z", "y": "z"}})
    cat = FiniteCategory({"big": big, "one": one},
                         [Morphism("squash", "big", "one", squash)], {})
    site = build_structural_roof_topology(RoofCategory(cat))
    assert "squash" not in site.valid["one"]


def test_structural_roof_site_verifies_on_fixtures():
    for name, builder in fixtures.PASSING_FIXTURES.items():
        model = builder()
        site = build_structural_roof_topology(RoofCategory(model.category))
        assert verify_grothendieck(site).passed, name


def test_roof_axioms_pass_on_all_fixture_fragments():
    for name, builder in fixtures.ALL_FIXTURES.items():
        model = builder()
        assert verify_roof_category(RoofCategory(model.category)).passed, name
