"""Finite truncated simplicial sets carrying atom subsets.

An event has two faces: a simplicial set (its structure) and a subset of a
finite ground set of atoms (its measure-theoretic content).  Both are finite
and validated by enumeration, so products, fiber products and monomorphism
tests are all exact.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field

from .errors import PreconditionError, StructuralError, TruncationNotice

# Default truncation dimension for constructions that can grow (products,
# terminal events).  Stored data may use any dimension.
DEFAULT_MAX_DIM = 2


@dataclass(eq=False)
class SimplicialEvent:
    """A truncated simplicial set over a fixed atom ground set.

    levels maps dimension -> set of simplex identifiers (plain strings).
    faces maps (dim, simplex, i) -> simplex at dim-1 and must be total for
    every stored simplex of dimension >= 1.  degeneracies maps
    (dim, simplex, i) -> simplex at dim+1 and may be partial: omitted entries
    mean the degenerate simplex is not materialized.  Simplicial identities
    are checked on every stored entry.
    """

    name: str
    levels: dict[int, frozenset[str]]
    faces: dict[tuple[int, str, int], str] = field(default_factory=dict)
    degeneracies: dict[tuple[int, str, int], str] = field(default_factory=dict)
    atoms: frozenset[str] = frozenset()
    ground_set: frozenset[str] = frozenset()

    def __post_init__(self):
        self.levels = {d: frozenset(s) for d, s in self.levels.items() if s}
        self.atoms = frozenset(self.atoms)
        self.ground_set = frozenset(self.ground_set)
        if not self.atoms <= self.ground_set:
            raise StructuralError(
                f"{self.name}: atoms {sorted(self.atoms - self.ground_set)} "
                "are not in the ground set")
        self._check_levels()
        self._check_identities()

    # -- validation -------------------------------------------------------

    def _check_levels(self):
        for d in self.levels:
            if d < 0:
                raise StructuralError(f"{self.name}: negative dimension {d}")
        for (d, x, i), y in self.faces.items():
            if x not in self.levels.get(d, frozenset()):
                raise StructuralError(f"{self.name}: face of unknown simplex {x!r} at dim {d}")
            if not 0 <= i <= d:
                raise StructuralError(f"{self.name}: face index {i} out of range for dim {d}")
            if y not in self.levels.get(d - 1, frozenset()):
                raise StructuralError(f"{self.name}: face target {y!r} missing at dim {d - 1}")
        for (d, x, i), y in self.degeneracies.items():
            if x not in self.levels.get(d, frozenset()):
                raise StructuralError(f"{self.name}: degeneracy of unknown simplex {x!r}")
            if not 0 <= i <= d:
                raise StructuralError(f"{self.name}: degeneracy index {i} out of range")
            if y not in self.levels.get(d + 1, frozenset()):
                raise StructuralError(f"{self.name}: degeneracy target {y!r} missing at dim {d + 1}")
        # faces must be total on simplices of dimension >= 1
        for d, simplices in self.levels.items():
            if d == 0:
                continue
            for x in simplices:
                for i in range(d + 1):
                    if (d, x, i) not in self.faces:
                        raise StructuralError(
                            f"{self.name}: missing face {i} of {x!r} at dim {d}")

    def _check_identities(self):
        """Enumerate the simplicial identities on all stored entries."""
        fc, dg = self.faces, self.degeneracies
        for d, simplices in sorted(self.levels.items()):
            for x in simplices:
                # d_i d_j = d_{j-1} d_i for i < j
                if d >= 2:
                    for j in range(d + 1):
                        for i in range(j):
                            left = fc[(d - 1, fc[(d, x, j)], i)]
                            right = fc[(d - 1, fc[(d, x, i)], j - 1)]
                            if left != right:
                                raise StructuralError(
                                    f"{self.name}: d_{i} d_{j} != d_{j-1} d_{i} on {x!r}")
                # s_i s_j = s_{j+1} s_i for i <= j (where stored)
                for j in range(d + 1):
                    sj = dg.get((d, x, j))
                    if sj is None:
                        continue
                    for i in range(j + 1):
                        si_sj = dg.get((d + 1, sj, i))
                        si = dg.get((d, x, i))
                        sj1_si = dg.get((d + 1, si, j + 1)) if si is not None else None
                        if si_sj is not None and sj1_si is not None and si_sj != sj1_si:
                            raise StructuralError(
                                f"{self.name}: s_{i} s_{j} != s_{j+1} s_{i} on {x!r}")
                    # d_i s_j identities on the stored degenerate simplex
                    for i in range(d + 2):
                        target = fc.get((d + 1, sj, i))
                        if target is None:
                            raise StructuralError(
                                f"{self.name}: degenerate simplex {sj!r} lacks face {i}")
                        if i in (j, j + 1):
                            if target != x:
                                raise StructuralError(
                                    f"{self.name}: d_{i} s_{j} != id on {x!r}")
                        elif i < j:
                            expect = dg.get((d - 1, fc[(d, x, i)], j - 1))
                            if expect is not None and target != expect:
                                raise StructuralError(
                                    f"{self.name}: d_{i} s_{j} != s_{j-1} d_{i} on {x!r}")
                        else:  # i > j + 1
                            expect = dg.get((d - 1, fc[(d, x, i - 1)], j))
                            if expect is not None and target != expect:
                                raise StructuralError(
                                    f"{self.name}: d_{i} s_{j} != s_{j} d_{i-1} on {x!r}")

    # -- accessors ---------------------------------------------------------

    def simplices(self, dim: int) -> frozenset[str]:
        return self.levels.get(dim, frozenset())

    @property
    def max_dim(self) -> int:
        return max(self.levels, default=-1)

    def face(self, dim: int, simplex: str, i: int) -> str:
        return self.faces[(dim, simplex, i)]

    def level_sizes(self) -> dict[int, int]:
        return {d: len(s) for d, s in sorted(self.levels.items())}

    def __repr__(self):
        return f"SimplicialEvent({self.name!r}, dims={sorted(self.levels)}, atoms={sorted(self.atoms)})"


@dataclass(eq=False)
class EventMap:
    """A map of events: per-dimension simplex functions commuting with all
    stored face and degeneracy maps, plus an atom-side witness.

    With atom_map omitted the atom condition is the inclusion
    atoms(source) <= atoms(target).
    """

    name: str
    source: SimplicialEvent
    target: SimplicialEvent
    level_maps: dict[int, dict[str, str]] = field(default_factory=dict)
    atom_map: dict[str, str] | None = None

    def __post_init__(self):
        self._check_total()
        self._check_commutes()
        self._check_atoms()

    def _check_total(self):
        for d, simplices in self.source.levels.items():
            lm = self.level_maps.get(d, {})
            for x in simplices:
                if x not in lm:
                    raise StructuralError(f"{self.name}: no image for {x!r} at dim {d}")
                if lm[x] not in self.target.simplices(d):
                    raise StructuralError(
                        f"{self.name}: image {lm[x]!r} not a dim-{d} simplex of target")

    def _check_commutes(self):
        for (d, x, i), y in self.source.faces.items():
            fx = self.level_maps[d][x]
            want = self.level_maps[d - 1][y]
            got = self.target.faces.get((d, fx, i))
            if got != want:
                raise StructuralError(
                    f"{self.name}: does not commute with face {i} of {x!r}")
        for (d, x, i), y in self.source.degeneracies.items():
            fx = self.level_maps[d][x]
            want = self.level_maps[d + 1][y]
            got = self.target.degeneracies.get((d, fx, i))
            if got != want:
                raise StructuralError(
                    f"{self.name}: does not commute with degeneracy {i} of {x!r}")

    def _check_atoms(self):
        if self.atom_map is None:
            if not self.source.atoms <= self.target.atoms:
                raise StructuralError(
                    f"{self.name}: atoms of source not included in atoms of target "
                    "(and no atom_map given)")
        else:
            for a in self.source.atoms:
                if a not in self.atom_map:
                    raise StructuralError(f"{self.name}: atom {a!r} has no image")
                if self.atom_map[a] not in self.target.atoms:
                    raise StructuralError(f"{self.name}: atom image {self.atom_map[a]!r} invalid")

    def apply(self, dim: int, simplex: str) -> str:
        return self.level_maps[dim][simplex]

    def __repr__(self):
        return f"EventMap({self.name!r}: {self.source.name} -> {self.target.name})"


# -- constructors -----------------------------------------------------------

def empty_event(ground_set, name: str = "empty") -> SimplicialEvent:
    return SimplicialEvent(name, {}, {}, {}, frozenset(), frozenset(ground_set))


def discrete_event(name, vertices, atoms, ground_set) -> SimplicialEvent:
    """Event with vertex set only (dimension 0)."""
    return SimplicialEvent(name, {0: frozenset(vertices)}, {}, {},
                           frozenset(atoms), frozenset(ground_set))


def point_event(ground_set, max_dim: int = DEFAULT_MAX_DIM, name: str = "pt") -> SimplicialEvent:
    """Terminal event: one simplex per dimension up to max_dim, full atoms.

    All faces and degeneracies hit the unique simplex of the adjacent
    dimension, so every simplicial identity holds trivially.
    """
    ids = {d: f"{name}{d}" for d in range(max_dim + 1)}
    levels = {d: frozenset([ids[d]]) for d in ids}
    faces = {(d, ids[d], i): ids[d - 1] for d in ids if d >= 1 for i in range(d + 1)}
    degens = {(d, ids[d], i): ids[d + 1] for d in ids if d + 1 <= max_dim for i in range(d + 1)}
    return SimplicialEvent(name, levels, faces, degens,
                           frozenset(ground_set), frozenset(ground_set))


def identity_map(event: SimplicialEvent, name: str | None = None) -> EventMap:
    lm = {d: {x: x for x in s} for d, s in event.levels.items()}
    return EventMap(name or f"id:{event.name}", event, event, lm)


def compose_event_maps(g: EventMap, f: EventMap, name: str | None = None) -> EventMap:
    """g after f.  Requires f.target is g.source."""
    if f.target is not g.source and f.target.name != g.source.name:
        raise PreconditionError(f"cannot compose {g.name} after {f.name}: endpoints differ")
    lm = {d: {x: g.level_maps[d][y] for x, y in m.items()}
          for d, m in f.level_maps.items()}
    return EventMap(name or f"{g.name}*{f.name}", f.source, g.target, lm)


def _pair(a: str, b: str) -> str:
    return f"({a},{b})"


# -- operations --------------------------------------------------------------

def is_monomorphism(f: EventMap) -> bool:
    """True iff every level map is injective."""
    for d, lm in f.level_maps.items():
        if len(set(lm.values())) != len(lm):
            return False
    return True


def product_legs(a: SimplicialEvent, b: SimplicialEvent, name=None,
                 max_dim=None) -> tuple[SimplicialEvent, EventMap, EventMap]:
    """Levelwise cartesian product with both projections.

    Faces and degeneracies are taken componentwise; a degeneracy of a pair
    exists only where both components carry one.  Atoms multiply as joint
    occurrence: atoms(a) & atoms(b).  Dimensions beyond max_dim are dropped
    with a TruncationNotice.
    """
    if a.ground_set != b.ground_set:
        raise PreconditionError(
            f"product of events over different ground sets: {a.name}, {b.name}")
    name = name or f"({a.name}x{b.name})"
    dims = sorted(set(a.levels) & set(b.levels))
    if max_dim is not None and dims and dims[-1] > max_dim:
        warnings.warn(TruncationNotice(
            f"product {name} truncated at dimension {max_dim}"))
        dims = [d for d in dims if d <= max_dim]
    levels, faces, degens = {}, {}, {}
    pa_levels: dict[int, dict[str, str]] = {}
    pb_levels: dict[int, dict[str, str]] = {}
    for d in dims:
        ids = {}
        pa_levels[d], pb_levels[d] = {}, {}
        for x in sorted(a.simplices(d)):
            for y in sorted(b.simplices(d)):
                p = _pair(x, y)
                ids[p] = (x, y)
                pa_levels[d][p] = x
                pb_levels[d][p] = y
        levels[d] = frozenset(ids)
        for p, (x, y) in ids.items():
            if d >= 1 and d - 1 in dims:
                for i in range(d + 1):
                    faces[(d, p, i)] = _pair(a.faces[(d, x, i)], b.faces[(d, y, i)])
            for i in range(d + 1):
                sx = a.degeneracies.get((d, x, i))
                sy = b.degeneracies.get((d, y, i))
                if sx is not None and sy is not None and d + 1 in dims:
                    degens[(d, p, i)] = _pair(sx, sy)
    prod = SimplicialEvent(name, levels, faces, degens,
                           a.atoms & b.atoms, a.ground_set)
    pa = EventMap(f"{name}.p1", prod, a, pa_levels)
    pb = EventMap(f"{name}.p2", prod, b, pb_levels)
    return prod, pa, pb


def product(a: SimplicialEvent, b: SimplicialEvent, name=None, max_dim=None) -> SimplicialEvent:
    return product_legs(a, b, name=name, max_dim=max_dim)[0]


def fiber_product(f: EventMap, g: EventMap, name=None
                  ) -> tuple[SimplicialEvent, EventMap, EventMap]:
    """Levelwise pullback of the cospan f: A -> C <- B :g.

    Simplices are the pairs (x, y) with f(x) = g(y); faces and degeneracies
    are componentwise and stay inside the pullback because f and g commute
    with them.  Returns (P, projection to A, projection to B).
    """
    if f.target is not g.target and f.target.name != g.target.name:
        raise PreconditionError(
            f"fiber product needs a shared target: {f.name} ends at "
            f"{f.target.name}, {g.name} at {g.target.name}")
    a, b = f.source, g.source
    name = name or f"({a.name}x[{f.target.name}]{b.name})"
    dims = sorted(set(a.levels) & set(b.levels))
    levels, faces, degens = {}, {}, {}
    pa_levels: dict[int, dict[str, str]] = {}
    pb_levels: dict[int, dict[str, str]] = {}
    members: dict[int, set[tuple[str, str]]] = {}
    for d in dims:
        pa_levels[d], pb_levels[d] = {}, {}
        members[d] = set()
        chosen = set()
        for x in sorted(a.simplices(d)):
            for y in sorted(b.simplices(d)):
                if f.apply(d, x) == g.apply(d, y):
                    p = _pair(x, y)
                    chosen.add(p)
                    members[d].add((x, y))
                    pa_levels[d][p] = x
                    pb_levels[d][p] = y
        if chosen:
            levels[d] = frozenset(chosen)
    for d in list(levels):
        for (x, y) in members[d]:
            p = _pair(x, y)
            if d >= 1 and (d - 1) in levels:
                for i in range(d + 1):
                    faces[(d, p, i)] = _pair(a.faces[(d, x, i)], b.faces[(d, y, i)])
            for i in range(d + 1):
                sx = a.degeneracies.get((d, x, i))
                sy = b.degeneracies.get((d, y, i))
                if sx is not None and sy is not None and (sx, sy) in members.get(d + 1, set()):
                    degens[(d, p, i)] = _pair(sx, sy)
    pull = SimplicialEvent(name, levels, faces, degens,
                           a.atoms & b.atoms, a.ground_set)
    pa_levels = {d: m for d, m in pa_levels.items() if d in levels}
    pb_levels = {d: m for d, m in pb_levels.items() if d in levels}
    pa = EventMap(f"{name}.pA", pull, a, pa_levels)
    pb = EventMap(f"{name}.pB", pull, b, pb_levels)
    return pull, pa, pb


def coproduct_event(parts, name: str, ground_set=None) -> SimplicialEvent:
    """Disjoint union of events; simplex ids are tagged with the part name."""
    parts = list(parts)
    if ground_set is None:
        if not parts:
            raise PreconditionError("coproduct of no events needs an explicit ground set")
        ground_set = parts[0].ground_set
    levels: dict[int, set[str]] = {}
    faces, degens = {}, {}
    atoms: set[str] = set()
    for ev in parts:
        if ev.ground_set != frozenset(ground_set):
            raise PreconditionError("coproduct parts live over different ground sets")
        tag = ev.name
        for d, s in ev.levels.items():
            levels.setdefault(d, set()).update(f"{tag}.{x}" for x in s)
        for (d, x, i), y in ev.faces.items():
            faces[(d, f"{tag}.{x}", i)] = f"{tag}.{y}"
        for (d, x, i), y in ev.degeneracies.items():
            degens[(d, f"{tag}.{x}", i)] = f"{tag}.{y}"
        atoms |= ev.atoms
    return SimplicialEvent(name, {d: frozenset(s) for d, s in levels.items()},
                           faces, degens, frozenset(atoms), frozenset(ground_set))


def levelwise_isomorphic(a: SimplicialEvent, b: SimplicialEvent) -> bool:
    """Existence of a levelwise bijection commuting with faces/degeneracies.

    Brute-force search over per-level bijections; intended for the small
    events used in tests and reports, never identifier equality.
    """
    from itertools import permutations

    if a.level_sizes() != b.level_sizes() or a.atoms != b.atoms:
        return False
    dims = sorted(a.levels)
    if not dims:
        return True

    def extend(i, assignment):
        if i == len(dims):
            return True
        d = dims[i]
        xs = sorted(a.simplices(d))
        for perm in permutations(sorted(b.simplices(d))):
            trial = dict(assignment)
            trial.update({(d, x): y for x, y in zip(xs, perm)})
            ok = True
            for (dd, x, j), y in a.faces.items():
                if dd not in dims[: i + 1] or (dd - 1) not in dims[: i + 1]:
                    continue
                if (dd, x) in trial and (dd - 1, y) in trial:
                    if b.faces.get((dd, trial[(dd, x)], j)) != trial[(dd - 1, y)]:
                        ok = False
                        break
            if ok:
                for (dd, x, j), y in a.degeneracies.items():
                    if (dd, x) in trial and (dd + 1, y) in trial:
                        if b.degeneracies.get((dd, trial[(dd, x)], j)) != trial[(dd + 1, y)]:
                            ok = False
                            break
            if ok and extend(i + 1, trial):
                return True
        return False

    return extend(0, {})
