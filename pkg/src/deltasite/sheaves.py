"""Presheaves with finite value spaces, the gluing condition, boundary
differences along morphisms, and the transversal-cone containment check for
the filtered sheaf of Brownian values.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import product as iproduct
from numbers import Real

from .categories import FiniteCategory, minimal_outgoing
from .errors import PreconditionError, StructuralError, UnsupportedValueError
from .filtration import FramedIndex, FramedPoint
from .sites import GrothendieckSite
from .stochastic import normal_cdf, normal_samples


class Presheaf:
    """Contravariant finite-value assignment on a site.

    `spaces` maps each object to its finite value space; `restrictions` maps
    each morphism f: a -> b to a dict F(b) -> F(a).  Identity restrictions
    default to identity maps; functoriality is checked on every composable
    pair present in the composition table.
    """

    def __init__(self, site: GrothendieckSite, spaces, restrictions):
        self.site = site
        cat = site.category
        self.spaces: dict[str, tuple] = {}
        for obj in sorted(cat.objects):
            if obj not in spaces:
                raise StructuralError(f"presheaf has no value space at {obj!r}")
            self.spaces[obj] = tuple(spaces[obj])
        self.restrictions: dict[str, dict] = {}
        for name in sorted(cat.morphisms):
            m = cat.morphisms[name]
            if name in restrictions:
                rmap = dict(restrictions[name])
            elif cat.is_identity(name):
                rmap = {v: v for v in self.spaces[m.target]}
            else:
                raise StructuralError(f"presheaf lacks a restriction along {name!r}")
            for v in self.spaces[m.target]:
                if v not in rmap:
                    raise StructuralError(
                        f"restriction along {name!r} undefined on value {v!r}")
                if rmap[v] not in self.spaces[m.source]:
                    raise StructuralError(
                        f"restriction along {name!r} leaves the value space at {m.source!r}")
            self.restrictions[name] = rmap
        self._check_functorial()

    def _check_functorial(self):
        cat = self.site.category
        for (g, f), h in cat.composition.items():
            tgt = cat.morphisms[g].target
            for v in self.spaces[tgt]:
                via = self.restrictions[f][self.restrictions[g][v]]
                direct = self.restrictions[h][v]
                if via != direct:
                    raise StructuralError(
                        f"restrictions not functorial on ({g}, {f}): "
                        f"{v!r} -> {via!r} vs {direct!r}")

    def restrict(self, morphism: str, value):
        return self.restrictions[morphism][value]


def constant_presheaf(site: GrothendieckSite, values=(0.0,)) -> Presheaf:
    values = tuple(values)
    spaces = {obj: values for obj in site.category.objects}
    restrictions = {name: {v: v for v in values} for name in site.category.morphisms}
    return Presheaf(site, spaces, restrictions)


@dataclass
class GluingRecord:
    family: str
    status: str
    witness: str = ""


@dataclass
class SheafReport:
    records: list[GluingRecord] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.status == "pass" for r in self.records)

    def failures(self):
        return [r for r in self.records if r.status != "pass"]


def check_sheaf_condition(F: Presheaf) -> SheafReport:
    """Gluing over every stored covering family: sections over the target
    must biject with families over the sources that agree on all declared
    fiber products.  Undeclared overlaps are noted, not failed."""
    site = F.site
    cat = site.category
    report = SheafReport()
    for obj in sorted(cat.objects):
        for fam in site.families(obj):
            members = list(fam.morphisms)
            sources = [cat.morphisms[m].source for m in members]
            # compatibility constraints from declared pairwise pullbacks
            constraints = []
            for i in range(len(members)):
                for j in range(i, len(members)):
                    sq = cat.pullback_of(members[i], members[j])
                    if sq is None:
                        report.notes.append(
                            f"{fam!r}: overlap of ({members[i]}, {members[j]}) undeclared")
                        continue
                    constraints.append((i, j, sq.to_left_source, sq.to_right_source))
            matching = []
            for combo in iproduct(*(F.spaces[s] for s in sources)):
                ok = True
                for i, j, li, lj in constraints:
                    if F.restrict(li, combo[i]) != F.restrict(lj, combo[j]):
                        ok = False
                        break
                if ok:
                    matching.append(combo)
            images = {}
            for s in F.spaces[obj]:
                images[s] = tuple(F.restrict(m, s) for m in members)
            injective = len(set(images.values())) == len(images)
            surjective = set(matching) <= set(images.values())
            missing = [c for c in matching if c not in set(images.values())]
            extra = not injective
            if injective and surjective:
                report.records.append(GluingRecord(repr(fam), "pass"))
            else:
                why = []
                if extra:
                    why.append("sections collide under restriction")
                if missing:
                    why.append(f"unglued matching family {missing[0]!r}")
                report.records.append(GluingRecord(repr(fam), "fail", "; ".join(why)))
    return report


# -- boundary differences ---------------------------------------------------------


def q_boundary(values, c, c_prime):
    """F(c') - F(c) for a functor given by its values.

    Works for real scalars and componentwise for dict-valued tables with
    equal key sets; anything else raises UnsupportedValueError.
    """
    try:
        fc, fc2 = values[c], values[c_prime]
    except (KeyError, TypeError) as exc:
        raise PreconditionError(f"no value at {c!r} or {c_prime!r}") from exc
    if isinstance(fc, Real) and isinstance(fc2, Real):
        return fc2 - fc
    if isinstance(fc, dict) and isinstance(fc2, dict):
        if set(fc) != set(fc2):
            raise UnsupportedValueError("tables with different keys cannot be subtracted")
        return {k: fc2[k] - fc[k] for k in fc}
    raise UnsupportedValueError(
        f"values of type {type(fc).__name__} do not support subtraction")


def q_quotient(values, c, c_prime):
    """Quotient-mode difference F(c')/F(c) for strictly positive scalars."""
    fc, fc2 = values[c], values[c_prime]
    if not (isinstance(fc, Real) and isinstance(fc2, Real)):
        raise UnsupportedValueError("quotient mode needs real scalar values")
    if fc <= 0 or fc2 <= 0:
        raise PreconditionError("quotient mode needs strictly positive values")
    return fc2 / fc


def d_psi(values, cat: FiniteCategory, psi: str, mode: str = "factor"):
    """Difference of a section along a minimal outgoing morphism.

    psi must belong to the minimal outgoing set of its source (no nontrivial
    factorization), otherwise the call is out of contract."""
    m = cat.morphism(psi)
    if psi not in minimal_outgoing(cat, m.source, mode=mode):
        raise PreconditionError(
            f"{psi!r} is not minimal outgoing from {m.source!r} (mode={mode})")
    return q_boundary(values, m.source, m.target)


# -- the filtered Brownian sheaf ------------------------------------------------------


@dataclass
class FilteredBrownianSheaf:
    """Per-level presheaves with cone geometry: sections one level ahead land
    in a cone of half-width kappa * sigma * sqrt(t' - t) around the apex."""

    index: FramedIndex
    levels: dict[FramedPoint, Presheaf]
    sigma: float
    kappa: float

    def __post_init__(self):
        if self.sigma < 0:
            raise PreconditionError("sigma must be nonnegative")
        if self.kappa <= 0:
            raise PreconditionError("kappa must be positive for a usable cone")
        for p in self.index:
            if p not in self.levels:
                raise StructuralError(f"no presheaf at framed point {p!r}")

    def cone_halfwidth(self, dt: float) -> float:
        return self.kappa * self.sigma * math.sqrt(dt)


@dataclass
class ConeReport:
    fraction: float
    expected: float
    stderr: float
    threshold: float
    n: int
    status: str
    witness: str = ""

    @property
    def passed(self) -> bool:
        return self.status == "pass"


def transversal_cone_check(sigma: float, kappa: float, t, t_prime,
                           n_paths: int = 10_000, seed: int = 0) -> ConeReport:
    """Sample transitions of a Brownian section from its apex at t to t' and
    measure the fraction landing in the closed cone of half-width
    kappa*sigma*sqrt(t'-t).

    Passes when the fraction is at least (2*Phi(kappa)-1) minus three
    binomial standard errors; kappa <= 0 fails by construction (the cone has
    empty interior).
    """
    t, t_prime = float(t), float(t_prime)
    if not t < t_prime:
        raise PreconditionError(f"need t < t', got {t} >= {t_prime}")
    if n_paths < 1:
        raise PreconditionError("need at least one sample")
    expected = 2.0 * normal_cdf(kappa) - 1.0 if kappa > 0 else 0.0
    if kappa <= 0:
        return ConeReport(0.0, expected, 0.0, 0.0, n_paths, "fail",
                          "cone has empty interior (kappa <= 0)")
    dt = t_prime - t
    half = kappa * sigma * math.sqrt(dt)
    draws = normal_samples(seed, n_paths) * (sigma * math.sqrt(dt))
    inside = int((abs(draws) <= half).sum())
    fraction = inside / n_paths
    stderr = math.sqrt(expected * (1.0 - expected) / n_paths)
    threshold = expected - 3.0 * stderr
    status = "pass" if fraction >= threshold else "fail"
    return ConeReport(fraction, expected, stderr, threshold, n_paths, status)


def sheaf_cone_check(sheaf: FilteredBrownianSheaf, t: FramedPoint, t_prime: FramedPoint,
                     n_paths: int = 10_000, seed: int = 0) -> ConeReport:
    """Cone check between two framed points of a Brownian sheaf, using the
    bundle projection for elapsed time."""
    return transversal_cone_check(sheaf.sigma, sheaf.kappa,
                                  float(sheaf.index.q(t)), float(sheaf.index.q(t_prime)),
                                  n_paths=n_paths, seed=seed)
