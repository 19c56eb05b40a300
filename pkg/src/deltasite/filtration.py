"""Filtered sigma-algebras over a discretized framed index, with operad
generators and atom-generated probability measures.

The index is a finite rational grid with an (0,1]-fiber cut into m equal
steps; levels are event collections keyed by framed points and must grow
monotonically.  Closure laws and the operad action are verified by
report-style checks rather than enforced at construction, so that defective
inputs can be represented and diagnosed.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import PreconditionError, StructuralError
from .events import SimplicialEvent


@dataclass(frozen=True)
class FramedPoint:
    """Index point (t, k/m): base time t with fiber position k of m."""

    base: Fraction
    k: int

    def __repr__(self):
        return f"({self.base},{self.k})"


class FramedIndex:
    """Finite increasing base grid with an m-step fiber over each base time.

    Points are ordered lexicographically by (base, fiber position); the
    bundle projection q drops the fiber coordinate.
    """

    def __init__(self, base_times, m: int = 1):
        base = [Fraction(t) for t in base_times]
        if any(b >= a for b, a in zip(base, base[1:])):
            raise StructuralError("base times must be strictly increasing")
        if not base:
            raise StructuralError("framed index needs at least one base time")
        if m < 1:
            raise StructuralError("fiber resolution m must be >= 1")
        self.base_times = base
        self.m = m
        self.points = [FramedPoint(t, k) for t in base for k in range(1, m + 1)]
        self._order = {p: i for i, p in enumerate(self.points)}

    def q(self, point: FramedPoint) -> Fraction:
        """Bundle projection onto the base grid."""
        if point not in self._order:
            raise KeyError(f"unknown framed point {point!r}")
        return point.base

    def le(self, a: FramedPoint, b: FramedPoint) -> bool:
        return self._order[a] <= self._order[b]

    def __iter__(self):
        return iter(self.points)

    def __len__(self):
        return len(self.points)


@dataclass(frozen=True)
class MultiArrow:
    """Operad generator: a multi-input assembly of events, placed at an index."""

    name: str
    inputs: tuple[str, ...]
    output: str
    at: FramedPoint


class OperadFragment:
    def __init__(self, generators):
        self.generators: list[MultiArrow] = list(generators)
        names = [g.name for g in self.generators]
        if len(set(names)) != len(names):
            raise StructuralError("duplicate operad generator names")

    def at_or_before(self, index: FramedIndex, point: FramedPoint):
        """Generators available at `point`: those placed at u <= point.

        Availability is cumulative because later levels contain everything
        assembled earlier (the filtration is increasing)."""
        return [g for g in self.generators if index.le(g.at, point)]

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)


class FilteredSigmaAlgebra:
    """Event collections per framed point, monotone in the index order."""

    def __init__(self, index: FramedIndex, events, levels, operad: OperadFragment | None = None):
        # events: mapping event id -> SimplicialEvent; levels: mapping
        # FramedPoint -> iterable of event ids.
        self.index = index
        self.events: dict[str, SimplicialEvent] = dict(events)
        self.operad = operad or OperadFragment([])
        self.levels: dict[FramedPoint, frozenset[str]] = {}
        for p in index:
            if p not in levels:
                raise StructuralError(f"no level declared at framed point {p!r}")
            ids = frozenset(levels[p])
            missing = ids - set(self.events)
            if missing:
                raise StructuralError(f"level {p!r} references unknown events {sorted(missing)}")
            self.levels[p] = ids
        prev: frozenset[str] | None = None
        for p in index:
            if prev is not None and not prev <= self.levels[p]:
                raise StructuralError(
                    f"filtration not increasing at {p!r}: lost {sorted(prev - self.levels[p])}")
            prev = self.levels[p]
        for g in self.operad:
            if g.at not in self.levels:
                raise StructuralError(f"generator {g.name!r} placed at unknown point {g.at!r}")
            for ev in (*g.inputs, g.output):
                if ev not in self.events:
                    raise StructuralError(f"generator {g.name!r} references unknown event {ev!r}")

    @property
    def top_point(self) -> FramedPoint:
        """The finite stand-in for the colimit level."""
        return self.index.points[-1]

    def level(self, point: FramedPoint) -> frozenset[str]:
        if point not in self.levels:
            raise KeyError(f"unknown framed point {point!r}")
        return self.levels[point]

    def ground_set(self) -> frozenset[str]:
        grounds = {ev.ground_set for ev in self.events.values()}
        if len(grounds) > 1:
            raise StructuralError("events live over different ground sets")
        return next(iter(grounds)) if grounds else frozenset()


class ProbabilityMeasure:
    """Atom-generated measure: P(event) is the exact sum of atom weights."""

    def __init__(self, atom_weights, tol: float = 1e-9):
        self.atom_weights = {a: float(w) for a, w in atom_weights.items()}
        if any(w < 0 for w in self.atom_weights.values()):
            raise StructuralError("negative atom weight")
        total = math.fsum(self.atom_weights.values())
        if abs(total - 1.0) > tol:
            raise StructuralError(f"atom weights sum to {total}, not 1")

    @property
    def ground_set(self) -> frozenset[str]:
        return frozenset(self.atom_weights)

    def __call__(self, event) -> float:
        atoms = event.atoms if isinstance(event, SimplicialEvent) else frozenset(event)
        unknown = atoms - self.ground_set
        if unknown:
            raise KeyError(f"atoms {sorted(unknown)} carry no weight")
        return math.fsum(self.atom_weights[a] for a in sorted(atoms))


# -- closure / sub-homomorphism checks ---------------------------------------


@dataclass
class SigmaLevelReport:
    ground_set: frozenset[str]
    missing: list[tuple[frozenset[str], str]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.missing


def _atoms_of(e) -> frozenset[str]:
    return e.atoms if isinstance(e, SimplicialEvent) else frozenset(e)


def check_sigma_level(level, ground_set=None) -> SigmaLevelReport:
    """Saturate the level under complement and pairwise union and report
    every atom set in the closure that the level lacks.

    `level` is any iterable of events or atom sets; the ground set defaults
    to the events' common ground set.
    """
    sets = [_atoms_of(e) for e in level]
    if ground_set is None:
        grounds = {e.ground_set for e in level if isinstance(e, SimplicialEvent)}
        if len(grounds) != 1:
            raise PreconditionError("pass ground_set= when the level's events do not fix one")
        ground_set = next(iter(grounds))
    ground_set = frozenset(ground_set)
    for s in sets:
        if not s <= ground_set:
            raise PreconditionError(f"event atoms {sorted(s)} outside the ground set")

    present = set(sets)
    closure = set(present) or {frozenset()}
    reason: dict[frozenset[str], str] = {}
    changed = True
    while changed:
        changed = False
        for s in list(closure):
            c = ground_set - s
            if c not in closure:
                closure.add(c)
                reason[c] = f"complement of {{{','.join(sorted(s))}}}"
                changed = True
        for s in list(closure):
            for t in list(closure):
                u = s | t
                if u not in closure:
                    closure.add(u)
                    reason[u] = (f"union of {{{','.join(sorted(s))}}} "
                                 f"and {{{','.join(sorted(t))}}}")
                    changed = True
    report = SigmaLevelReport(ground_set)
    for s in sorted(closure - present, key=lambda x: (len(x), sorted(x))):
        report.missing.append((s, reason.get(s, "required")))
    return report


@dataclass
class SubHomReport:
    checked: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


def check_sub_homomorphism(P: ProbabilityMeasure, level, tol: float = 1e-12) -> SubHomReport:
    """Verify measure behaviour on assemblies: equality on disjoint unions,
    sub-additivity on all pairs and triples of level events."""
    sets = sorted({_atoms_of(e) for e in level}, key=lambda s: (len(s), sorted(s)))
    report = SubHomReport()

    def label(s):
        return "{" + ",".join(sorted(s)) + "}"

    from itertools import combinations

    for r in (2, 3):
        for combo in combinations(sets, r):
            union = frozenset().union(*combo)
            pu = P(union)
            total = math.fsum(P(s) for s in combo)
            report.checked += 1
            disjoint = sum(len(s) for s in combo) == len(union)
            if disjoint:
                if abs(pu - total) > tol:
                    report.failures.append(
                        f"P(disjoint union {'+'.join(map(label, combo))}) = {pu} != {total}")
            elif pu > total + tol:
                report.failures.append(
                    f"P(union {'+'.join(map(label, combo))}) = {pu} > {total}")
    return report


class LevelMeasure:
    """A measure restricted to one level: evaluation outside raises."""

    def __init__(self, P: ProbabilityMeasure, level_events):
        self.P = P
        self.level = {e.name if isinstance(e, SimplicialEvent) else e for e in level_events}
        self._events = {e.name: e for e in level_events if isinstance(e, SimplicialEvent)}

    def __call__(self, event) -> float:
        name = event.name if isinstance(event, SimplicialEvent) else event
        if name not in self.level:
            raise KeyError(f"event {name!r} is not measurable at this level")
        ev = event if isinstance(event, SimplicialEvent) else self._events[name]
        return self.P(ev)


def restrict_measure(P: ProbabilityMeasure, level_events) -> LevelMeasure:
    """P_t: the same atom weights, readable only on the level's events.

    Restriction never changes values, which is exactly the finite version of
    evaluation being colimit-consistent across levels."""
    return LevelMeasure(P, list(level_events))


def pushforward(P: ProbabilityMeasure, variable) -> dict[float, float]:
    """Distribution of a real variable on atoms: value -> P(preimage)."""
    missing = P.ground_set - set(variable)
    if missing:
        raise PreconditionError(f"variable undefined on atoms {sorted(missing)}")
    out: dict[float, float] = {}
    buckets: dict[float, list[str]] = {}
    for a in sorted(P.ground_set):
        buckets.setdefault(float(variable[a]), []).append(a)
    for v in sorted(buckets):
        out[v] = math.fsum(P.atom_weights[a] for a in buckets[v])
    return out


@dataclass
class OperadActionReport:
    violations: list[str] = field(default_factory=list)
    coverage: float = 1.0
    checked: int = 0

    @property
    def passed(self) -> bool:
        return not self.violations


def check_operad_action(F: FilteredSigmaAlgebra) -> OperadActionReport:
    """Every generator must act inside its own level: all inputs and the
    output measurable at the generator's index.  Also reports coverage: the
    fraction of (point, event) pairs whose event is assembled (is the output
    of a generator available at that point)."""
    report = OperadActionReport()
    for g in F.operad:
        level = F.level(g.at)
        report.checked += 1
        for ev in (*g.inputs, g.output):
            if ev not in level:
                report.violations.append(
                    f"generator {g.name!r} at {g.at!r}: event {ev!r} not in level")
    pairs = 0
    covered = 0
    for p in F.index:
        available = {g.output for g in F.operad.at_or_before(F.index, p)}
        for ev in sorted(F.level(p)):
            pairs += 1
            if ev in available:
                covered += 1
    report.coverage = covered / pairs if pairs else 1.0
    return report
