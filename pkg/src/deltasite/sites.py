"""Grothendieck topologies on finite event categories, verified by
enumeration.

A site stores, per object, the set of morphisms admitted as covers plus an
explicit list of generating covering families (singletons for the built
topologies; hand-made sites may store larger families).  Any nonempty family
all of whose members are admitted counts as a covering.  `verify_grothendieck`
checks the three covering axioms -- isomorphisms cover, stability under base
change, composition -- instance by instance and reports every failure.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .categories import (ComponentPartition, FiniteCategory,
                         connected_components)
from .errors import PreconditionError
from .events import product as event_product
from .filtration import (FilteredSigmaAlgebra, FramedPoint, ProbabilityMeasure)


@dataclass(frozen=True)
class CoveringFamily:
    target: str
    morphisms: tuple[str, ...]

    def __repr__(self):
        return f"{{{', '.join(self.morphisms)}}} -> {self.target}"


class GrothendieckSite:
    def __init__(self, category: FiniteCategory, coverings, label: str,
                 measure: ProbabilityMeasure | None = None):
        # coverings: mapping object -> iterable of CoveringFamily
        self.category = category
        self.label = label
        self.measure = measure
        self.coverings: dict[str, tuple[CoveringFamily, ...]] = {}
        self.valid: dict[str, frozenset[str]] = {}
        for obj in sorted(category.objects):
            fams = tuple(coverings.get(obj, ()))
            for fam in fams:
                if fam.target != obj:
                    raise PreconditionError(
                        f"family {fam!r} filed under wrong object {obj!r}")
                for m in fam.morphisms:
                    if category.morphism(m).target != obj:
                        raise PreconditionError(
                            f"covering morphism {m!r} does not end at {obj!r}")
            self.coverings[obj] = fams
            self.valid[obj] = frozenset(m for fam in fams for m in fam.morphisms)

    def is_covering(self, family: CoveringFamily) -> bool:
        """Nonempty families of admitted morphisms cover."""
        if not family.morphisms:
            return False
        return all(m in self.valid.get(family.target, frozenset())
                   for m in family.morphisms)

    def families(self, obj: str):
        return self.coverings.get(obj, ())


class FilteredSite:
    """A Grothendieck site per framed-index level."""

    def __init__(self, filtration: FilteredSigmaAlgebra,
                 levels: dict[FramedPoint, GrothendieckSite], label: str):
        self.filtration = filtration
        self.levels = levels
        self.label = label

    def site_at(self, point: FramedPoint) -> GrothendieckSite:
        return self.levels[point]

    def __iter__(self):
        return iter(self.filtration.index)


# -- builders -----------------------------------------------------------------


def _singleton_families(category: FiniteCategory, admit) -> dict[str, list[CoveringFamily]]:
    """One generating family per admitted morphism, isomorphisms always in."""
    out: dict[str, list[CoveringFamily]] = {o: [] for o in category.objects}
    for name in sorted(category.morphisms):
        m = category.morphisms[name]
        if category.is_isomorphism(name) or admit(m):
            out[m.target].append(CoveringFamily(m.target, (name,)))
    return out


def build_tau_operadic(F: FilteredSigmaAlgebra, category: FiniteCategory,
                       components: dict[FramedPoint, ComponentPartition] | None = None
                       ) -> FilteredSite:
    """Operadic topology: at level t a morphism w' -> w covers when w' and w
    share a connected component of the level and some operad generator
    available at t has w' among its inputs and output w."""
    levels: dict[FramedPoint, GrothendieckSite] = {}
    for p in F.index:
        level_cat = category.full_subcategory(F.level(p))
        comp = components[p] if components else connected_components(level_cat)
        witnessed = set()
        for g in F.operad.at_or_before(F.index, p):
            for inp in g.inputs:
                witnessed.add((inp, g.output))

        def admit(m, comp=comp, witnessed=witnessed):
            return (comp.same_component(m.source, m.target)
                    and (m.source, m.target) in witnessed)

        levels[p] = GrothendieckSite(level_cat, _singleton_families(level_cat, admit),
                                     label=f"operadic@{p!r}")
    return FilteredSite(F, levels, "operadic")


def build_tau_P(F: FilteredSigmaAlgebra, P: ProbabilityMeasure,
                category: FiniteCategory,
                components: dict[FramedPoint, ComponentPartition] | None = None
                ) -> FilteredSite:
    """Probability topology: w' -> w covers at level t when both lie in the
    same component of the level and P(w) >= P(w')."""
    levels: dict[FramedPoint, GrothendieckSite] = {}
    for p in F.index:
        level_cat = category.full_subcategory(F.level(p))
        comp = components[p] if components else connected_components(level_cat)

        def admit(m, comp=comp):
            return (comp.same_component(m.source, m.target)
                    and P(category.event(m.source)) <= P(category.event(m.target)))

        levels[p] = GrothendieckSite(level_cat, _singleton_families(level_cat, admit),
                                     label=f"probability@{p!r}", measure=P)
    return FilteredSite(F, levels, "probability")


def build_tau_structural(category: FiniteCategory) -> GrothendieckSite:
    """Structural topology: covers are families of monomorphisms of
    simplicial sets (the attached event maps, tested levelwise)."""
    return GrothendieckSite(
        category,
        _singleton_families(category, lambda m: category.is_structural(m.name)),
        label="structural")


# -- verification ---------------------------------------------------------------


@dataclass
class AxiomRecord:
    check_id: str
    instance: str
    status: str  # "pass" | "fail"
    witness: str = ""


@dataclass
class SiteAxiomReport:
    label: str
    records: list[AxiomRecord] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.status == "pass" for r in self.records)

    def failures(self):
        return [r for r in self.records if r.status != "pass"]

    def add(self, check_id, instance, ok, witness=""):
        self.records.append(AxiomRecord(check_id, instance, "pass" if ok else "fail", witness))

    def extend(self, other: "SiteAxiomReport"):
        self.records.extend(other.records)


def _measure_chain(site: GrothendieckSite, cover_src: str, gamma: str,
                   apex: str) -> tuple[bool, str]:
    """The inequality chain P(w_i x_w gamma) <= P(w_i x gamma) <= P(gamma),
    evaluated on atom sets (products intersect atoms)."""
    P = site.measure
    cat = site.category
    p_apex = P(cat.event(apex))
    prod = event_product(cat.event(cover_src), cat.event(gamma))
    p_prod = P(prod)
    p_gamma = P(cat.event(gamma))
    ok = p_apex <= p_prod <= p_gamma
    return ok, f"P={p_apex}<=P(product)={p_prod}<=P({gamma})={p_gamma}"


def verify_grothendieck(site: GrothendieckSite) -> SiteAxiomReport:
    """Exhaustive check of the three covering axioms on one site.

    (a) every isomorphism forms a covering family of its target;
    (b) base change: for each generating family {w_i -> w} and each arrow
        gamma -> w, the pulled-back family {w_i x_w gamma -> gamma} covers
        gamma (the pullback must be declared, except along identities);
    (c) composition: covers of covers compose to covers.
    For probability sites the measure inequality chain is asserted on every
    base-change and composition instance.
    """
    cat = site.category
    report = SiteAxiomReport(site.label)

    for name in sorted(cat.morphisms):
        if cat.is_isomorphism(name):
            fam = CoveringFamily(cat.morphisms[name].target, (name,))
            report.add("isomorphisms-cover", name, site.is_covering(fam))

    for obj in sorted(cat.objects):
        for fam in site.families(obj):
            for mi in fam.morphisms:
                src = cat.morphisms[mi].source
                for g in cat.morphisms_into(obj):
                    gamma = cat.morphisms[g].source
                    instance = f"({mi}, {g})"
                    sq = cat.pullback_of(mi, g)
                    if sq is None:
                        report.add("base-change", instance, False,
                                   f"missing pullback for cospan ({src} -> {obj} <- {gamma})")
                        continue
                    proj = sq.to_right_source
                    ok = site.is_covering(CoveringFamily(gamma, (proj,)))
                    witness = f"projection {proj}: {sq.apex} -> {gamma}"
                    if site.measure is not None:
                        chain_ok, chain = _measure_chain(site, src, gamma, sq.apex)
                        ok = ok and chain_ok
                        witness += "; " + chain
                    report.add("base-change", instance, ok, witness)

    for obj in sorted(cat.objects):
        for fam in site.families(obj):
            for mi in fam.morphisms:
                src = cat.morphisms[mi].source
                for fam2 in site.families(src):
                    for mij in fam2.morphisms:
                        instance = f"({mi}, {mij})"
                        comp = cat.composition.get((mi, mij))
                        if comp is None:
                            report.add("composition", instance, False,
                                       f"composite of {mi} after {mij} missing from the table")
                            continue
                        ok = site.is_covering(CoveringFamily(obj, (comp,)))
                        witness = f"composite {comp}"
                        if site.measure is not None:
                            P = site.measure
                            p_ij = P(cat.event(cat.morphisms[mij].source))
                            p_i = P(cat.event(src))
                            p_o = P(cat.event(obj))
                            chain_ok = p_ij <= p_i <= p_o
                            ok = ok and chain_ok
                            witness += f"; P chain {p_ij}<={p_i}<={p_o}"
                        report.add("composition", instance, ok, witness)

    return report


def verify_filtered(site: FilteredSite) -> SiteAxiomReport:
    """Per-level axiom verification plus level-monotonicity of validity:
    a cover at s whose data survives to t >= s must still cover at t."""
    report = SiteAxiomReport(site.label)
    points = list(site.filtration.index)
    for p in points:
        level_report = verify_grothendieck(site.site_at(p))
        for r in level_report.records:
            report.records.append(AxiomRecord(
                r.check_id, f"level {p!r}: {r.instance}", r.status, r.witness))
    for earlier, later in zip(points, points[1:]):
        s_site, t_site = site.site_at(earlier), site.site_at(later)
        for obj in sorted(s_site.valid):
            for m in sorted(s_site.valid[obj]):
                if obj in t_site.valid and m in t_site.category.morphisms:
                    report.add(
                        "level-monotone", f"{m} at {earlier!r}->{later!r}",
                        m in t_site.valid[obj],
                        "cover lost at later level" if m not in t_site.valid[obj] else "")
    return report
