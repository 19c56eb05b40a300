import pytest

from deltasite.categories import FiniteCategory, Morphism, PullbackSquare
from deltasite.events import EventMap, discrete_event
from deltasite.sites import CoveringFamily, GrothendieckSite


GROUND = frozenset(["a", "b", "c", "d"])


def disc(name, atoms, vertices=None, ground=GROUND):
    """Discrete event whose vertices default to its atoms."""
    return discrete_event(name, vertices if vertices is not None else atoms,
                          atoms, ground)


def chain_category(n=3, with_event=False):
    """A -> B -> C ... with all composites present; objects carry no events
    unless asked (used for pure reachability and roof tests)."""
    names = [chr(ord("A") + i) for i in range(n)]
    objects = {nm: (disc(nm, []) if with_event else None) for nm in names}
    morphisms = []
    comp = {}
    for i in range(n):
        for j in range(i + 1, n):
            morphisms.append(Morphism(f"f{i}{j}", names[i], names[j]))
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                comp[(f"f{j}{k}", f"f{i}{j}")] = f"f{i}{k}"
    return FiniteCategory(objects, morphisms, comp)


def overlap_site():
    """U covered by two subobjects V1, V2 with declared intersection W; the
    one multi-member covering family used by the gluing tests."""
    g3 = frozenset("abc")
    top = discrete_event("U", ["a", "b", "c"], g3, g3)
    v1 = discrete_event("V1", ["a", "b"], ["a", "b"], g3)
    v2 = discrete_event("V2", ["b", "c"], ["b", "c"], g3)
    w = discrete_event("W", ["b"], ["b"], g3)

    def inc(name, src, tgt):
        return EventMap(name, src, tgt, {0: {v: v for v in src.simplices(0)}})

    maps = {"f1": inc("f1", v1, top), "f2": inc("f2", v2, top),
            "g1": inc("g1", w, v1), "g2": inc("g2", w, v2),
            "h": inc("h", w, top)}
    morphisms = [Morphism(n, m.source.name, m.target.name, m)
                 for n, m in maps.items()]
    comp = {("f1", "g1"): "h", ("f2", "g2"): "h"}
    pullbacks = [PullbackSquare("f1", "f2", "W", "g1", "g2"),
                 PullbackSquare("f1", "f1", "V1", "id:V1", "id:V1"),
                 PullbackSquare("f2", "f2", "V2", "id:V2", "id:V2"),
                 PullbackSquare("h", "h", "W", "id:W", "id:W"),
                 PullbackSquare("f1", "h", "W", "g1", "id:W"),
                 PullbackSquare("f2", "h", "W", "g2", "id:W"),
                 PullbackSquare("g1", "g1", "W", "id:W", "id:W"),
                 PullbackSquare("g2", "g2", "W", "id:W", "id:W")]
    cat = FiniteCategory({"U": top, "V1": v1, "V2": v2, "W": w},
                         morphisms, comp, pullbacks)
    coverings = {"U": [CoveringFamily("U", ("f1", "f2"))],
                 "V1": [CoveringFamily("V1", ("id:V1",))],
                 "V2": [CoveringFamily("V2", ("id:V2",))],
                 "W": [CoveringFamily("W", ("id:W",))]}
    return GrothendieckSite(cat, coverings, label="overlap")


@pytest.fixture
def ground():
    return GROUND
