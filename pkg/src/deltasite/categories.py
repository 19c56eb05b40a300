"""Finite categories: the computable fragment of the event category.

Objects are identifiers optionally bound to simplicial events; morphisms,
composition and declared pullbacks are explicit tables.  Axioms (unit laws,
associativity, totality of composition, commuting pullback squares) are
verified by enumeration, report-style, so that deliberately broken fragments
can be constructed for tests.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .errors import PreconditionError, StructuralError
from .events import EventMap, SimplicialEvent, identity_map, is_monomorphism


@dataclass(eq=False)
class Morphism:
    name: str
    source: str
    target: str
    event_map: EventMap | None = None

    def __repr__(self):
        return f"Morphism({self.name!r}: {self.source} -> {self.target})"


@dataclass(eq=False)
class PullbackSquare:
    """Declared pullback of the cospan (left: A -> C, right: B -> C)."""

    left: str
    right: str
    apex: str
    to_left_source: str
    to_right_source: str


class FiniteCategory:
    """Morphism/composition tables over identifier-named objects.

    Construction checks referential integrity and synthesizes identity
    morphisms (named ``id:<object>``) together with their unit composition
    rules.  Everything else -- totality and associativity of composition,
    pullback squares commuting -- is checked by `check_axioms`.
    """

    def __init__(self, objects, morphisms, composition=None, pullbacks=None):
        # objects: mapping object id -> SimplicialEvent | None
        self.objects: dict[str, SimplicialEvent | None] = dict(objects)
        self.morphisms: dict[str, Morphism] = {}
        self.identities: dict[str, str] = {}
        self.composition: dict[tuple[str, str], str] = {}
        self.pullbacks: dict[tuple[str, str], PullbackSquare] = {}

        for m in morphisms:
            if m.name in self.morphisms:
                raise StructuralError(f"duplicate morphism name {m.name!r}")
            for end in (m.source, m.target):
                if end not in self.objects:
                    raise StructuralError(f"morphism {m.name!r} references unknown object {end!r}")
            if m.event_map is not None:
                src_ev, tgt_ev = self.objects[m.source], self.objects[m.target]
                if src_ev is not None and m.event_map.source is not src_ev:
                    raise StructuralError(f"morphism {m.name!r}: event map source mismatch")
                if tgt_ev is not None and m.event_map.target is not tgt_ev:
                    raise StructuralError(f"morphism {m.name!r}: event map target mismatch")
            self.morphisms[m.name] = m

        for obj in self.objects:
            ident = f"id:{obj}"
            if ident in self.morphisms:
                raise StructuralError(f"morphism name {ident!r} is reserved for the identity")
            ev = self.objects[obj]
            emap = identity_map(ev, ident) if ev is not None else None
            self.morphisms[ident] = Morphism(ident, obj, obj, emap)
            self.identities[obj] = ident

        for (g, f), h in (composition or {}).items():
            for name in (g, f, h):
                if name not in self.morphisms:
                    raise StructuralError(f"composition rule references unknown morphism {name!r}")
            if self.morphisms[f].target != self.morphisms[g].source:
                raise StructuralError(f"composition rule ({g!r}, {f!r}) is not composable")
            if (self.morphisms[h].source != self.morphisms[f].source
                    or self.morphisms[h].target != self.morphisms[g].target):
                raise StructuralError(f"composite {h!r} has wrong endpoints for ({g!r}, {f!r})")
            self.composition[(g, f)] = h

        # unit rules: id o f = f = f o id
        for name, m in self.morphisms.items():
            self.composition.setdefault((self.identities[m.target], name), name)
            self.composition.setdefault((name, self.identities[m.source]), name)

        for sq in pullbacks or []:
            left, right = self.morphisms.get(sq.left), self.morphisms.get(sq.right)
            if left is None or right is None:
                raise StructuralError(f"pullback square references unknown morphism")
            if left.target != right.target:
                raise StructuralError(
                    f"pullback of ({sq.left!r}, {sq.right!r}): targets differ")
            if sq.apex not in self.objects:
                raise StructuralError(f"pullback apex {sq.apex!r} is not an object")
            for leg, want_tgt in ((sq.to_left_source, left.source),
                                  (sq.to_right_source, right.source)):
                lm = self.morphisms.get(leg)
                if lm is None or lm.source != sq.apex or lm.target != want_tgt:
                    raise StructuralError(
                        f"pullback of ({sq.left!r}, {sq.right!r}): bad leg {leg!r}")
            self.pullbacks[(sq.left, sq.right)] = sq

    # -- lookups ------------------------------------------------------------

    def morphism(self, name: str) -> Morphism:
        if name not in self.morphisms:
            raise KeyError(f"unknown morphism {name!r}")
        return self.morphisms[name]

    def event(self, obj: str) -> SimplicialEvent:
        if obj not in self.objects:
            raise KeyError(f"unknown object {obj!r}")
        ev = self.objects[obj]
        if ev is None:
            raise PreconditionError(f"object {obj!r} carries no simplicial event")
        return ev

    def is_identity(self, name: str) -> bool:
        return name in self.identities.values()

    def compose(self, g: str, f: str) -> str:
        """Name of g o f, or raise KeyError if the table lacks it."""
        return self.composition[(g, f)]

    def morphisms_into(self, obj: str):
        return [m for m in sorted(self.morphisms) if self.morphisms[m].target == obj]

    def morphisms_from(self, obj: str):
        return [m for m in sorted(self.morphisms) if self.morphisms[m].source == obj]

    def is_isomorphism(self, name: str) -> bool:
        m = self.morphism(name)
        if self.is_identity(name):
            return True
        for other, mo in self.morphisms.items():
            if mo.source == m.target and mo.target == m.source:
                if (self.composition.get((other, name)) == self.identities[m.source]
                        and self.composition.get((name, other)) == self.identities[m.target]):
                    return True
        return False

    def is_structural(self, name: str) -> bool:
        """Monomorphism test on the attached simplicial map."""
        m = self.morphism(name)
        if m.event_map is None:
            if self.is_identity(name):
                return True
            return False
        return is_monomorphism(m.event_map)

    def pullback_of(self, left: str, right: str) -> PullbackSquare | None:
        """Declared pullback of a cospan, resolving identity cospans
        canonically and the symmetric declaration with swapped legs."""
        lm, rm = self.morphism(left), self.morphism(right)
        if lm.target != rm.target:
            raise PreconditionError(f"({left!r}, {right!r}) is not a cospan")
        if self.is_identity(right):
            return PullbackSquare(left, right, lm.source,
                                  self.identities[lm.source], left)
        if self.is_identity(left):
            return PullbackSquare(left, right, rm.source,
                                  right, self.identities[rm.source])
        sq = self.pullbacks.get((left, right))
        if sq is not None:
            return sq
        sq = self.pullbacks.get((right, left))
        if sq is not None:
            return PullbackSquare(left, right, sq.apex,
                                  sq.to_right_source, sq.to_left_source)
        return None

    # -- axiom report ---------------------------------------------------------

    def check_axioms(self) -> list[str]:
        """Enumerate category axioms; returns a list of violations (empty = pass)."""
        bad = []
        for f in sorted(self.morphisms):
            for g in sorted(self.morphisms):
                if self.morphisms[f].target != self.morphisms[g].source:
                    continue
                if (g, f) not in self.composition:
                    bad.append(f"composition undefined for ({g}, {f})")
        for name, m in self.morphisms.items():
            if self.composition.get((self.identities[m.target], name)) != name:
                bad.append(f"left unit fails for {name}")
            if self.composition.get((name, self.identities[m.source])) != name:
                bad.append(f"right unit fails for {name}")
        for f in sorted(self.morphisms):
            for g in sorted(self.morphisms):
                if self.morphisms[f].target != self.morphisms[g].source:
                    continue
                gf = self.composition.get((g, f))
                if gf is None:
                    continue
                for h in sorted(self.morphisms):
                    if self.morphisms[g].target != self.morphisms[h].source:
                        continue
                    hg = self.composition.get((h, g))
                    left = self.composition.get((h, gf))
                    right = self.composition.get((hg, f)) if hg else None
                    if left is not None and right is not None and left != right:
                        bad.append(f"associativity fails on ({h}, {g}, {f})")
        for (l, r), sq in sorted(self.pullbacks.items()):
            via_left = self.composition.get((l, sq.to_left_source))
            via_right = self.composition.get((r, sq.to_right_source))
            if via_left is None or via_right is None or via_left != via_right:
                bad.append(f"declared pullback square ({l}, {r}) does not commute")
        return bad

    def full_subcategory(self, objs) -> "FiniteCategory":
        """Restriction to a subset of objects (morphisms with both ends inside)."""
        objs = set(objs)
        unknown = objs - set(self.objects)
        if unknown:
            raise KeyError(f"unknown objects {sorted(unknown)}")
        morphisms = [m for m in self.morphisms.values()
                     if m.source in objs and m.target in objs
                     and not self.is_identity(m.name)]
        keep = {m.name for m in morphisms} | {self.identities[o] for o in objs}
        comp = {(g, f): h for (g, f), h in self.composition.items()
                if g in keep and f in keep and h in keep}
        pulls = [sq for sq in self.pullbacks.values()
                 if {sq.left, sq.right, sq.to_left_source, sq.to_right_source} <= keep
                 and sq.apex in objs]
        return FiniteCategory({o: self.objects[o] for o in objs}, morphisms, comp, pulls)


@dataclass
class ComponentPartition:
    """Partition of objects under the zig-zag closure of 'a morphism exists'."""

    component_of: dict[str, str]

    def same_component(self, a: str, b: str) -> bool:
        return self.component_of[a] == self.component_of[b]

    def members(self, rep: str):
        return sorted(o for o, r in self.component_of.items() if r == rep)

    @property
    def count(self) -> int:
        return len(set(self.component_of.values()))


def connected_components(cat: FiniteCategory) -> ComponentPartition:
    """Breadth-first search on the undirected morphism graph."""
    neighbours: dict[str, set[str]] = {o: set() for o in cat.objects}
    for m in cat.morphisms.values():
        neighbours[m.source].add(m.target)
        neighbours[m.target].add(m.source)
    component_of: dict[str, str] = {}
    for start in sorted(cat.objects):
        if start in component_of:
            continue
        queue = deque([start])
        seen = {start}
        while queue:
            cur = queue.popleft()
            for nxt in neighbours[cur]:
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append(nxt)
        rep = min(seen)
        for o in seen:
            component_of[o] = rep
    return ComponentPartition(component_of)


def forward_cone(cat: FiniteCategory, obj: str) -> frozenset[str]:
    """Objects reachable by a single morphism (the table is composition
    closed, so this is the reachability cone); contains obj via its identity."""
    if obj not in cat.objects:
        raise KeyError(f"unknown object {obj!r}")
    return frozenset(m.target for m in cat.morphisms.values() if m.source == obj)


def minimal_outgoing(cat: FiniteCategory, obj: str, mode: str = "factor") -> frozenset[str]:
    """Non-identity morphisms out of obj that are minimal inside its component.

    mode="factor" (default): psi: obj -> b is excluded when it factors as a
    composite obj -> w -> b through some third object w.
    mode="literal": all non-identity outgoing morphisms, unless some third
    object w closes a cycle obj -> w -> obj, in which case the set is empty.
    """
    if obj not in cat.objects:
        raise KeyError(f"unknown object {obj!r}")
    if mode not in ("factor", "literal"):
        raise PreconditionError(f"unknown mode {mode!r}")
    comp = connected_components(cat)
    outgoing = [m for m in cat.morphisms.values()
                if m.source == obj and not cat.is_identity(m.name)
                and comp.same_component(obj, m.target)]
    if mode == "literal":
        for w in cat.objects:
            if w == obj or not comp.same_component(obj, w):
                continue
            there = any(m.source == obj and m.target == w for m in cat.morphisms.values())
            back = any(m.source == w and m.target == obj for m in cat.morphisms.values())
            if there and back:
                return frozenset()
        return frozenset(m.name for m in outgoing)

    minimal = set()
    for psi in outgoing:
        factors = False
        for g in cat.morphisms.values():
            if g.source != obj or cat.is_identity(g.name):
                continue
            w = g.target
            if w in (obj, psi.target):
                continue
            for h in cat.morphisms.values():
                if h.source != w or h.target != psi.target:
                    continue
                if cat.composition.get((h.name, g.name)) == psi.name:
                    factors = True
                    break
            if factors:
                break
        if not factors:
            minimal.add(psi.name)
    return frozenset(minimal)
