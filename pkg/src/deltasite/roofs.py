"""Time-independent event category whose morphisms are roof diagrams.

A roof A -> B stands over the apex A x <|(A), with <|(A) the forward cone of
A; its legs are the projection to A and the base composed with projection.
Composites simplify to the roof of the composed bases, so roofs are stored
canonically by (source, base, target) and apexes are materialized only for
reports and invariant checks.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .categories import FiniteCategory, forward_cone
from .errors import ClosureError, PreconditionError
from .events import (EventMap, SimplicialEvent, compose_event_maps,
                     coproduct_event, product_legs)
from .sites import CoveringFamily, GrothendieckSite


@dataclass(frozen=True)
class Roof:
    source: str
    base: str
    target: str

    def __repr__(self):
        return f"Roof({self.source} -[{self.base}]-> {self.target})"


class RoofCategory:
    """Roofs over a composition-closed fragment; one roof per base morphism."""

    def __init__(self, fragment: FiniteCategory):
        self.fragment = fragment
        self.roofs: dict[str, Roof] = {
            name: Roof(m.source, name, m.target)
            for name, m in fragment.morphisms.items()}

    def objects(self):
        return sorted(self.fragment.objects)

    def roof_of(self, base: str) -> Roof:
        if base not in self.roofs:
            raise KeyError(f"no morphism {base!r} in the fragment")
        return self.roofs[base]

    def identity_roof(self, obj: str) -> Roof:
        """Roof with base id_A and legs p1, pi_A over A x <|(A)."""
        if obj not in self.fragment.objects:
            raise KeyError(f"unknown object {obj!r}")
        return self.roof_of(self.fragment.identities[obj])

    def compose(self, r1: Roof, r2: Roof) -> Roof:
        """r2 after r1.  The mediating maps through the two lower apexes
        simplify to the roof of the composed bases, which is what is stored."""
        if r1.target != r2.source:
            raise PreconditionError(
                f"roofs not composable: {r1!r} then {r2!r}")
        try:
            base = self.fragment.compose(r2.base, r1.base)
        except KeyError:
            raise ClosureError(
                f"fragment is not composition closed: "
                f"({r2.base}, {r1.base}) has no composite") from None
        return self.roof_of(base)

    # -- apex materialization -------------------------------------------------

    def cone_event(self, obj: str) -> SimplicialEvent:
        """<|(A) as the coproduct of the events in the forward cone of A."""
        cone = sorted(forward_cone(self.fragment, obj))
        parts = [self.fragment.event(o) for o in cone]
        return coproduct_event(parts, name=f"cone({obj})",
                               ground_set=self.fragment.event(obj).ground_set)

    def apex_event(self, obj: str) -> SimplicialEvent:
        return self.materialize(self.identity_roof(obj))[0]

    def materialize(self, roof: Roof) -> tuple[SimplicialEvent, EventMap, EventMap]:
        """(apex A x <|(A), leg p1 to A, leg pi_B = base o p1 to B)."""
        a_event = self.fragment.event(roof.source)
        apex, p1, _ = product_legs(a_event, self.cone_event(roof.source),
                                   name=f"apex({roof.source})")
        base_map = self.fragment.morphism(roof.base).event_map
        if base_map is None:
            raise PreconditionError(
                f"base {roof.base!r} carries no event map; cannot materialize legs")
        pi_b = compose_event_maps(base_map, p1, name=f"pi:{roof.base}")
        return apex, p1, pi_b


@dataclass
class RoofAxiomReport:
    records: list[tuple[str, str, str]] = field(default_factory=list)  # (check, instance, status)

    @property
    def passed(self) -> bool:
        return all(status == "pass" for _, _, status in self.records)

    def add(self, check, instance, ok):
        self.records.append((check, instance, "pass" if ok else "fail"))

    def failures(self):
        return [r for r in self.records if r[2] != "pass"]


def verify_roof_category(rc: RoofCategory) -> RoofAxiomReport:
    """Unit laws and associativity over all composable roofs, plus
    functoriality of f |-> roof(f).  Raises ClosureError if the fragment
    lacks a needed composite."""
    report = RoofAxiomReport()
    frag = rc.fragment
    roofs = [rc.roofs[name] for name in sorted(rc.roofs)]

    for r in roofs:
        left = rc.compose(rc.identity_roof(r.source), r)
        right = rc.compose(r, rc.identity_roof(r.target))
        report.add("left-unit", repr(r), left == r)
        report.add("right-unit", repr(r), right == r)

    pairs = [(r1, r2) for r1 in roofs for r2 in roofs if r1.target == r2.source]
    for r1, r2 in pairs:
        composite = rc.compose(r1, r2)
        base = frag.compose(r2.base, r1.base)
        report.add("base-functorial", f"({r1.base}, {r2.base})",
                   composite == rc.roof_of(base))

    for r1, r2 in pairs:
        for r3 in roofs:
            if r2.target != r3.source:
                continue
            one = rc.compose(rc.compose(r1, r2), r3)
            two = rc.compose(r1, rc.compose(r2, r3))
            report.add("associativity", f"({r1.base}, {r2.base}, {r3.base})", one == two)
    return report


def build_structural_roof_topology(rc: RoofCategory) -> GrothendieckSite:
    """Coverings are roofs whose base is a monomorphism of simplicial sets.

    The resulting site lives over the underlying fragment (roofs are
    canonical in their bases), so the generic axiom verifier applies, with
    base change supplied by the fragment's declared pullbacks."""
    frag = rc.fragment
    coverings: dict[str, list[CoveringFamily]] = {o: [] for o in frag.objects}
    for name in sorted(rc.roofs):
        roof = rc.roofs[name]
        if frag.is_isomorphism(name) or frag.is_structural(name):
            coverings[roof.target].append(CoveringFamily(roof.target, (name,)))
    return GrothendieckSite(frag, coverings, label="structural-roof")
