import itertools
from fractions import Fraction

from deltasite import fixtures
from deltasite.categories import (FiniteCategory, Morphism,
                                  connected_components)
from deltasite.events import EventMap, discrete_event, empty_event
from deltasite.filtration import (FilteredSigmaAlgebra, FramedIndex,
                                  MultiArrow, OperadFragment,
                                  ProbabilityMeasure)
from deltasite.sites import (CoveringFamily, build_tau_operadic,
                             build_tau_P, build_tau_structural,
                             verify_filtered, verify_grothendieck)

GROUND = frozenset("abc")


def chain_model():
    """Four nested events on one level: empty < a < ab < abc."""
    subsets = [frozenset(), frozenset("a"), frozenset("ab"), frozenset("abc")]
    events, maps, morphisms = {}, {}, []
    for s in subsets:
        name = "empty" if not s else "e_" + "".join(sorted(s))
        events[name] = (discrete_event(name, sorted(s), s, GROUND) if s
                        else empty_event(GROUND))
    names = ["empty", "e_a", "e_ab", "e_abc"]
    comp = {}
    for i, src in enumerate(names):
        for j, tgt in enumerate(names):
            if i < j:
                nm = f"i:{src}>{tgt}"
                maps[nm] = EventMap(nm, events[src], events[tgt],
                                    {0: {a: a for a in events[src].atoms}}
                                    if events[src].atoms else {})
                morphisms.append(Morphism(nm, src, tgt, maps[nm]))
    for i in range(4):
        for j in range(i + 1, 4):
            for k in range(j + 1, 4):
                comp[(f"i:{names[j]}>{names[k]}", f"i:{names[i]}>{names[j]}")] = \
                    f"i:{names[i]}>{names[k]}"
    cat = FiniteCategory(events, morphisms, comp)
    idx = FramedIndex([0])
    F = FilteredSigmaAlgebra(idx, events, {idx.points[0]: names})
    P = ProbabilityMeasure({"a": Fraction(1, 3), "b": Fraction(1, 3),
                            "c": Fraction(1, 3)})
    return cat, F, P, idx


# -- operadic topology -------------------------------------------------------------

def test_operadic_without_generators_has_only_isomorphism_covers():
    cat, F, P, idx = chain_model()
    site = build_tau_operadic(F, cat).site_at(idx.points[0])
    for obj, valid in site.valid.items():
        assert valid == frozenset([f"id:{obj}"])


def test_operadic_single_generator_covers_with_each_input():
    cat, F, P, idx = chain_model()
    gen = MultiArrow("g", ("e_a", "e_ab"), "e_abc", idx.points[0])
    F2 = FilteredSigmaAlgebra(idx, dict(F.events),
                              {idx.points[0]: sorted(F.level(idx.points[0]))},
                              OperadFragment([gen]))
    site = build_tau_operadic(F2, cat).site_at(idx.points[0])
    assert "i:e_a>e_abc" in site.valid["e_abc"]
    assert "i:e_ab>e_abc" in site.valid["e_abc"]
    assert "i:empty>e_abc" not in site.valid["e_abc"]


def test_operadic_coverings_match_generator_scan_oracle():
    model = fixtures.four_events_model()
    filtered = build_tau_operadic(model.filtration, model.category)
    for p in model.filtration.index:
        site = filtered.site_at(p)
        comp = connected_components(site.category)
        witnessed = set()
        for g in model.filtration.operad:
            if model.filtration.index.le(g.at, p):
                for inp in g.inputs:
                    witnessed.add((inp, g.output))
        for name in sorted(site.category.morphisms):
            m = site.category.morphisms[name]
            expected = (site.category.is_isomorphism(name)
                        or (comp.same_component(m.source, m.target)
                            and (m.source, m.target) in witnessed))
            assert (name in site.valid[m.target]) == expected


# -- probability topology -----------------------------------------------------------

def test_probability_isomorphisms_always_cover():
    cat, F, P, idx = chain_model()
    site = build_tau_P(F, P, cat).site_at(idx.points[0])
    for obj in cat.objects:
        assert site.is_covering(CoveringFamily(obj, (f"id:{obj}",)))


def test_probability_excludes_measure_increasing_arrows():
    idx = FramedIndex([0])
    P = ProbabilityMeasure({"a": 0.5, "b": 0.25, "c": 0.25})
    big = discrete_event("big", ["x", "y"], ["a", "b"], GROUND)
    small = discrete_event("small", ["z"], ["a"], GROUND)
    up = EventMap("up", small, big, {0: {"z": "x"}})
    cat = FiniteCategory({"big": big, "small": small},
                         [Morphism("up", "small", "big", up)], {})
    F = FilteredSigmaAlgebra(idx, {"big": big, "small": small},
                             {idx.points[0]: ["big", "small"]})
    site = build_tau_P(F, P, cat).site_at(idx.points[0])
    assert "up" in site.valid["big"]           # P rises along the arrow: covers
    # the reverse arrow lowers P at the target: excluded
    down = EventMap("down", big, small, {0: {"x": "z", "y": "z"}},
                    atom_map={"a": "a", "b": "a"})
    cat2 = FiniteCategory({"big": big, "small": small},
                          [Morphism("down", "big", "small", down)], {})
    site2 = build_tau_P(F, P, cat2).site_at(idx.points[0])
    assert "down" not in site2.valid["small"]


def test_probability_chain_matches_filter_oracle():
    cat, F, P, idx = chain_model()
    site = build_tau_P(F, P, cat).site_at(idx.points[0])
    comp = connected_components(cat)
    for name in sorted(cat.morphisms):
        m = cat.morphisms[name]
        expected = (comp.same_component(m.source, m.target)
                    and P(cat.event(m.source)) <= P(cat.event(m.target)))
        assert (name in site.valid[m.target]) == (expected or cat.is_isomorphism(name))


# -- structural topology ---------------------------------------------------------------

def test_structural_identity_family_covers():
    model = fixtures.four_events_model()
    site = build_tau_structural(model.category)
    assert site.is_covering(CoveringFamily("e_ab", ("id:e_ab",)))


def test_structural_excludes_non_mono():
    big = discrete_event("big", ["x", "y"], ["a", "b"], GROUND)
    one = discrete_event("one", ["z"], ["a", "b"], GROUND)
    squash = EventMap("squash", big, one, {0: {"x": "z", "y": "z"}})
    inc = EventMap("inc", one, big, {0: {"z": "x"}})
    cat = FiniteCategory({"big": big, "one": one},
                         [Morphism("squash", "big", "one", squash),
                          Morphism("inc", "one", "big", inc)],
                         {("squash", "inc"): "id:one"})
    site = build_tau_structural(cat)
    assert "squash" not in site.valid["one"]
    assert "inc" in site.valid["big"]
    assert not site.is_covering(CoveringFamily("one", ("squash",)))
    # a family mixing a mono with a non-mono is not a covering family
    assert not site.is_covering(CoveringFamily("one", ("id:one", "squash")))


def test_structural_coverings_equal_mono_filter_oracle():
    model = fixtures.six_events_model()
    site = build_tau_structural(model.category)
    from deltasite.events import is_monomorphism
    for name in sorted(model.category.morphisms):
        m = model.category.morphisms[name]
        if model.category.is_identity(name):
            expected = True
        else:
            expected = is_monomorphism(m.event_map)
        assert (name in site.valid[m.target]) == expected


# -- axiom verification ---------------------------------------------------------------

def test_verify_passes_on_hand_built_four_event_site():
    model = fixtures.four_events_model()
    report = verify_filtered(build_tau_P(model.filtration, model.measure,
                                         model.category))
    assert report.passed
    assert any(r.check_id == "base-change" for r in report.records)
    assert any(r.check_id == "composition" for r in report.records)


def test_verify_trivial_site_passes():
    cat, F, P, idx = chain_model()
    site = build_tau_operadic(F, cat).site_at(idx.points[0])  # iso covers only
    assert verify_grothendieck(site).passed


def test_verify_names_omitted_base_change_instance():
    model = fixtures.defect_operad_gap_model()
    report = verify_filtered(build_tau_operadic(model.filtration, model.category))
    assert not report.passed
    failures = {r.instance for r in report.failures()}
    assert "level (1,1): (i:e_a>e_ab, i:e_b>e_ab)" in failures


def test_verify_reports_missing_pullback_with_cospan():
    model = fixtures.defect_missing_pullback_model()
    report = verify_grothendieck(build_tau_structural(model.category))
    assert not report.passed
    bad = [r for r in report.failures() if "missing pullback" in r.witness]
    assert any("(i:e_ab>e_abc, i:e_c>e_abc)" == r.instance for r in bad)


def test_probability_verification_asserts_measure_chain():
    model = fixtures.four_events_model()
    report = verify_filtered(build_tau_P(model.filtration, model.measure,
                                         model.category))
    chains = [r for r in report.records
              if r.check_id == "base-change" and "P=" in r.witness]
    assert chains, "base-change instances must carry the measure chain"
    for r in chains:
        assert r.status == "pass"
    # the composition axiom carries its transitivity chain on every instance
    comp_chains = [r for r in report.records
                   if r.check_id == "composition" and "P chain" in r.witness]
    assert comp_chains and all(r.status == "pass" for r in comp_chains)


def test_filtered_verification_checks_level_monotonicity():
    model = fixtures.four_events_model()
    report = verify_filtered(build_tau_P(model.filtration, model.measure,
                                         model.category))
    assert any(r.check_id == "level-monotone" for r in report.records)


def test_is_covering_accepts_any_nonempty_valid_family():
    model = fixtures.four_events_model()
    site = build_tau_structural(model.category)
    valid = sorted(site.valid["e_ab"])
    assert len(valid) >= 2
    for r in (1, 2):
        for combo in itertools.combinations(valid, r):
            assert site.is_covering(CoveringFamily("e_ab", combo))
    assert not site.is_covering(CoveringFamily("e_ab", ()))


def test_all_bundled_passing_fixtures_verify_everywhere():
    for name, builder in fixtures.PASSING_FIXTURES.items():
        model = builder()
        assert model.category.check_axioms() == [], name
        assert verify_grothendieck(build_tau_structural(model.category)).passed, name
        assert verify_filtered(build_tau_P(model.filtration, model.measure,
                                           model.category)).passed, name
        assert verify_filtered(build_tau_operadic(model.filtration,
                                                  model.category)).passed, name
