import pytest
from hypothesis import given, settings
from hypothesis import strategies as hst

from deltasite.categories import (FiniteCategory, Morphism, PullbackSquare,
                                  connected_components, forward_cone,
                                  minimal_outgoing)
from deltasite.errors import PreconditionError, StructuralError

from conftest import chain_category


def relation_category(n, pairs):
    """Category from a transitively closed relation on n objects: one
    morphism per related ordered pair, composite = the unique arrow."""
    objs = {f"o{i}": None for i in range(n)}
    rel = set(pairs)
    morphisms = [Morphism(f"m{i}_{j}", f"o{i}", f"o{j}") for i, j in sorted(rel)]
    comp = {}
    for (i, j) in rel:
        for (j2, k) in rel:
            if j == j2 and (i, k) in rel:
                comp[(f"m{j}_{k}", f"m{i}_{j}")] = f"m{i}_{k}"
    return FiniteCategory(objs, morphisms, comp)


def transitive_closure(n, edges):
    closed = set(edges)
    changed = True
    while changed:
        changed = False
        for (i, j) in list(closed):
            for (j2, k) in list(closed):
                if j == j2 and (i, k) not in closed and i != k:
                    closed.add((i, k))
                    changed = True
    return closed


# -- union-find oracle ---------------------------------------------------------

class UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb


def test_single_object_one_component():
    cat = relation_category(1, [])
    assert connected_components(cat).count == 1


def test_two_isolated_objects_two_components():
    cat = relation_category(2, [])
    parts = connected_components(cat)
    assert parts.count == 2
    assert not parts.same_component("o0", "o1")


@settings(max_examples=60)
@given(hst.integers(2, 7).flatmap(
    lambda n: hst.tuples(hst.just(n),
                         hst.sets(hst.tuples(hst.integers(0, n - 1),
                                             hst.integers(0, n - 1)).filter(
                             lambda p: p[0] != p[1]), max_size=10))))
def test_components_match_union_find_oracle(case):
    n, edges = case
    closed = transitive_closure(n, edges)
    cat = relation_category(n, closed)
    parts = connected_components(cat)
    uf = UnionFind([f"o{i}" for i in range(n)])
    for (i, j) in edges:
        uf.union(f"o{i}", f"o{j}")
    for i in range(n):
        for j in range(n):
            assert parts.same_component(f"o{i}", f"o{j}") == \
                (uf.find(f"o{i}") == uf.find(f"o{j}"))


# -- forward cones ------------------------------------------------------------------

def test_forward_cone_discrete_is_self():
    cat = relation_category(3, [])
    assert forward_cone(cat, "o0") == frozenset(["o0"])


def test_forward_cone_chain_includes_composite_targets():
    cat = chain_category(3)
    assert forward_cone(cat, "A") == frozenset(["A", "B", "C"])
    assert forward_cone(cat, "C") == frozenset(["C"])


def test_forward_cone_unknown_object():
    with pytest.raises(KeyError):
        forward_cone(chain_category(2), "Z")


@settings(max_examples=60)
@given(hst.integers(2, 6).flatmap(
    lambda n: hst.tuples(hst.just(n),
                         hst.sets(hst.tuples(hst.integers(0, n - 1),
                                             hst.integers(0, n - 1)).filter(
                             lambda p: p[0] < p[1]), max_size=8))))
def test_forward_cone_matches_warshall_oracle(case):
    n, edges = case
    closed = transitive_closure(n, edges)
    cat = relation_category(n, closed)
    # Warshall closure on the raw edge set, computed independently
    reach = [[i == j for j in range(n)] for i in range(n)]
    for (i, j) in edges:
        reach[i][j] = True
    for k in range(n):
        for i in range(n):
            for j in range(n):
                reach[i][j] = reach[i][j] or (reach[i][k] and reach[k][j])
    for i in range(n):
        assert forward_cone(cat, f"o{i}") == \
            frozenset(f"o{j}" for j in range(n) if reach[i][j])


def test_forward_cone_monotone():
    cat = chain_category(4)
    for a in cat.objects:
        for b in forward_cone(cat, a):
            assert forward_cone(cat, b) <= forward_cone(cat, a)


# -- minimal outgoing ------------------------------------------------------------------

def test_minimal_outgoing_chain_drops_the_composite():
    cat = chain_category(3)
    # enumeration oracle: f02 = f12 o f01 factors through B, f01 does not factor
    assert minimal_outgoing(cat, "A") == frozenset(["f01"])
    assert minimal_outgoing(cat, "B") == frozenset(["f12"])


def test_minimal_outgoing_single_arrow():
    cat = relation_category(2, [(0, 1)])
    assert minimal_outgoing(cat, "o0") == frozenset(["m0_1"])


def test_minimal_outgoing_discrete_excludes_identities():
    cat = relation_category(1, [])
    assert minimal_outgoing(cat, "o0") == frozenset()


def test_minimal_outgoing_literal_mode_cycle_empties():
    cat = relation_category(2, [(0, 1), (1, 0)])
    assert minimal_outgoing(cat, "o0", mode="literal") == frozenset()
    # no cycle through a third object: literal mode keeps everything outgoing
    chain = chain_category(3)
    assert minimal_outgoing(chain, "A", mode="literal") == frozenset(["f01", "f02"])


def test_minimal_outgoing_bad_mode():
    with pytest.raises(PreconditionError):
        minimal_outgoing(chain_category(2), "A", mode="quickest")


def test_minimal_outgoing_factorization_oracle():
    cat = chain_category(4)
    for obj in cat.objects:
        got = minimal_outgoing(cat, obj)
        # independent oracle: try every intermediate object and morphism pair
        expected = set()
        for name, m in cat.morphisms.items():
            if m.source != obj or cat.is_identity(name):
                continue
            factored = False
            for g_name, g in cat.morphisms.items():
                for h_name, h in cat.morphisms.items():
                    if cat.is_identity(g_name) or cat.is_identity(h_name):
                        continue
                    if (g.source == obj and g.target == h.source
                            and h.target == m.target
                            and g.target not in (obj, m.target)
                            and cat.composition.get((h_name, g_name)) == name):
                        factored = True
            if not factored:
                expected.add(name)
        assert got == expected


# -- axiom report ------------------------------------------------------------------

def test_check_axioms_passes_on_closed_chain():
    assert chain_category(4).check_axioms() == []


def test_check_axioms_flags_missing_composite():
    objs = {o: None for o in "ABC"}
    morphisms = [Morphism("f", "A", "B"), Morphism("g", "B", "C")]
    cat = FiniteCategory(objs, morphisms, {})
    assert any("composition undefined for (g, f)" in v for v in cat.check_axioms())


def test_check_axioms_flags_noncommuting_pullback():
    objs = {o: None for o in "PABC"}
    morphisms = [Morphism("f", "A", "C"), Morphism("g", "B", "C"),
                 Morphism("pa", "P", "A"), Morphism("pb", "P", "B"),
                 Morphism("u", "P", "C"), Morphism("v", "P", "C")]
    comp = {("f", "pa"): "u", ("g", "pb"): "v"}  # legs disagree
    cat = FiniteCategory(objs, morphisms, comp,
                         [PullbackSquare("f", "g", "P", "pa", "pb")])
    assert any("does not commute" in v for v in cat.check_axioms())


def test_constructor_rejects_bad_references():
    with pytest.raises(StructuralError):
        FiniteCategory({"A": None}, [Morphism("f", "A", "Z")])
    with pytest.raises(StructuralError):
        FiniteCategory({"A": None}, [], {("f", "g"): "h"})


def test_full_subcategory_restricts_tables():
    cat = chain_category(3)
    sub = cat.full_subcategory(["A", "B"])
    assert sorted(sub.objects) == ["A", "B"]
    assert "f01" in sub.morphisms and "f02" not in sub.morphisms
    assert sub.check_axioms() == []


def test_isomorphism_detection():
    objs = {"A": None, "B": None}
    morphisms = [Morphism("f", "A", "B"), Morphism("g", "B", "A")]
    comp = {("g", "f"): "id:A", ("f", "g"): "id:B"}
    cat = FiniteCategory(objs, morphisms, comp)
    assert cat.is_isomorphism("f") and cat.is_isomorphism("g")
    assert not chain_category(2).is_isomorphism("f01")
