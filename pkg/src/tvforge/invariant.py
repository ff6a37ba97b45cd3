"""End-to-end invariant pipelines: records, comparison, evaluation, radical.

The invariant of a manifold is the normal form of its spine's state sum
modulo the ideal basis; identical inputs produce byte-identical records.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import beideal
from .cache import Cache, hash_text
from .colours import RegisteredSystem
from .config import SystemConfig
from .groebner import (GroebnerBasis, ResourceLimits, buchberger,
                       is_groebner, normal_form, radical_member, reduce)
from .poly import (MonomialOrder, Polynomial, QuotientElement, QuotientPoint,
                   evaluate_at)
from .spine import Spine, build_spine
from .statesum import state_sum_detailed


class VertexCountError(ValueError):
    """Invariants need a spine with at least two true vertices."""


class ProvenanceMismatch(ValueError):
    """Basis provenance does not match the system it is used with."""


class MixedSystems(ValueError):
    pass


@dataclass(frozen=True)
class InvariantRecord:
    label: str
    spine_hash: str
    system: str
    basis_source: str
    normal_form: Polynomial
    deg_w: int
    deg_6j: int
    evaluations: tuple[tuple[str, str], ...] = ()

    def as_dict(self, order: MonomialOrder) -> dict:
        return {
            "label": self.label,
            "spine": self.spine_hash,
            "system": self.system,
            "basis": self.basis_source,
            "normal_form": self.normal_form.canonical_str(order),
            "deg_w": self.deg_w,
            "deg_6j": self.deg_6j,
            "evaluations": dict(self.evaluations),
        }


def weight_variable_names(rsys: RegisteredSystem) -> list[str]:
    names = []
    for f in rsys.system.strata_colours:
        wf = rsys.weight_factor(f)
        if wf.var_index is not None:
            names.append(rsys.registry.names[wf.var_index])
    return sorted(set(names))


def symbol_variable_names(rsys: RegisteredSystem) -> list[str]:
    return sorted(cls.name for cls in rsys.classes.values()
                  if cls.var_index is not None)


def compute_invariant(spine: Spine, rsys: RegisteredSystem,
                      gb: GroebnerBasis, label: str = "",
                      expected_source: str | None = None
                      ) -> InvariantRecord:
    """Normal-form record of one spine; the spine needs >= 2 true vertices."""
    if spine.vertex_count < 2:
        raise VertexCountError(
            f"{label or 'spine'}: {spine.vertex_count} true vertices; the "
            f"coset computed from a one-vertex spine is a different object")
    if gb.registry != rsys.registry:
        raise ProvenanceMismatch("basis registry differs from the system's")
    if expected_source is not None and gb.source != expected_source:
        raise ProvenanceMismatch(
            f"basis source {gb.source!r} != expected {expected_source!r}")
    poly, _ = state_sum_detailed(spine, rsys)
    nf = normal_form(poly, gb)
    return InvariantRecord(
        label=label,
        spine_hash=hash_text(str(spine.code)),
        system=rsys.system.name,
        basis_source=gb.source,
        normal_form=nf,
        deg_w=nf.degree_in(weight_variable_names(rsys)),
        deg_6j=nf.degree_in(symbol_variable_names(rsys)))


def compare_partition(records: Sequence[InvariantRecord]
                      ) -> list[list[str]]:
    """Partition labels by exact normal-form equality, first-seen order."""
    if records:
        sys0, basis0 = records[0].system, records[0].basis_source
        for r in records:
            if r.system != sys0 or r.basis_source != basis0:
                raise MixedSystems(
                    f"record {r.label!r} uses {r.system}/{r.basis_source}, "
                    f"expected {sys0}/{basis0}")
    classes: list[tuple[Polynomial, list[str]]] = []
    for r in records:
        for nf, labels in classes:
            if nf == r.normal_form:
                labels.append(r.label)
                break
        else:
            classes.append((r.normal_form, [r.label]))
    return [labels for _, labels in classes]


@dataclass(frozen=True)
class MultiplicativityResult:
    multiplicative: bool | None  # None when the check is degenerate
    sum_side: Polynomial | None
    product_side: Polynomial | None
    notice: str = ""


def multiplicativity_check(a: InvariantRecord, b: InvariantRecord,
                           ab: InvariantRecord, gb: GroebnerBasis,
                           rsys: RegisteredSystem) -> MultiplicativityResult:
    """Compare Nf(ab) with Nf(Nf(a) * Nf(b))."""
    for r in (a, b, ab):
        if r.system != a.system or r.basis_source != a.basis_source:
            raise MixedSystems("records come from different systems")
    if rsys.system.m == 1 and rsys.system.n == 1:
        return MultiplicativityResult(
            None, None, None,
            "degenerate one-colour system carries no test content")
    product = normal_form(a.normal_form * b.normal_form, gb)
    return MultiplicativityResult(product == ab.normal_form,
                                  ab.normal_form, product)


_verified_points: set[tuple] = set()


def epsilon_evaluate(record: InvariantRecord, point: QuotientPoint,
                     gb: GroebnerBasis) -> QuotientElement:
    """Evaluate the record's normal form at a point of the ideal's variety.

    The annihilation of the whole basis by the point is verified once per
    (basis, point) pair and cached.
    """
    key = (gb.source, point.content_key())
    if key not in _verified_points:
        alg = point.algebra
        for p in gb.polynomials:
            if not alg.is_zero(evaluate_at(p, point)):
                raise ValueError(
                    "evaluation point does not annihilate the basis: "
                    f"{p.canonical_str(gb.order)} is nonzero there")
        _verified_points.add(key)
    return evaluate_at(record.normal_form, point)


def degree_bound(record: InvariantRecord) -> tuple[int, bool]:
    """Lower-bound certificate max(deg_w - 1, deg_6j) with triviality flag.

    The degrees are read from the normal-form representative, so the bound
    is a certificate only in combination with the coset-minimal reading;
    bounds <= 2 are flagged trivial.
    """
    if record.normal_form.is_zero:
        return 0, True
    bound = max(record.deg_w - 1, record.deg_6j)
    return bound, bound <= 2


@dataclass
class RadicalReport:
    containment_failures: list[int]       # ideal gens not reducing to zero
    normal_forms: list[Polynomial]        # Nf of each radical element mod I
    membership: list[bool]                # radical_member per element
    notes: list[str] = field(default_factory=list)

    @property
    def containment_ok(self) -> bool:
        return not self.containment_failures

    @property
    def nonzero_normal_forms(self) -> list[Polynomial]:
        return [p for p in self.normal_forms if not p.is_zero]

    @property
    def membership_ok(self) -> bool:
        return all(self.membership)

    @property
    def all_ok(self) -> bool:
        return self.containment_ok and self.membership_ok


def radical_suite(ideal_gens: Sequence[Polynomial],
                  radical_gens: Sequence[Polynomial],
                  gb: GroebnerBasis, order: MonomialOrder,
                  limits: ResourceLimits | None = None) -> RadicalReport:
    """Containment, normal forms and radical membership in one report."""
    report = RadicalReport([], [], [])
    for i, g in enumerate(ideal_gens):
        r, _ = reduce(g, list(radical_gens), order, with_quotients=False)
        if not r.is_zero:
            report.containment_failures.append(i)
            report.notes.append(
                f"generator {i} does not reduce to zero against the "
                f"radical basis")
    for p in radical_gens:
        report.normal_forms.append(normal_form(p, gb))
    for i, p in enumerate(radical_gens):
        ok = radical_member(p, list(ideal_gens), order.kind, limits=limits)
        report.membership.append(ok)
        if not ok:
            report.notes.append(f"radical element {i} fails membership")
    return report


class InvariantPipeline:
    """Config-driven pipeline with basis/record caching."""

    def __init__(self, config: SystemConfig, cache: Cache | None = None,
                 limits: ResourceLimits | None = None,
                 dedup: str = "sign", strategy: str = "normal"):
        self.config = config
        self.cache = cache
        self.limits = limits
        self.dedup = dedup
        self.strategy = strategy
        self.rsys = config.registered()
        self.order = config.order(self.rsys)
        self._generators: list[Polynomial] | None = None
        self._basis: GroebnerBasis | None = None

    # -- ideal -------------------------------------------------------

    def generators(self) -> list[Polynomial]:
        if self._generators is None:
            gens = beideal.generate_ideal(self.rsys, dedup=self.dedup)
            if self.config.assumptions.augment_variable:
                bridge = self.load_bridge()
                gens = beideal.augment_bridge(gens, bridge, self.rsys)
            self._generators = gens
        return self._generators

    def load_bridge(self) -> beideal.BridgeSpec:
        cfg = self.config
        if not cfg.assumptions.augment_variable:
            raise ValueError("system has no augmentation")
        if not cfg.augment_base:
            raise ValueError("augmentation declared without a base file")
        from .groebner import load_basis
        base = load_basis(cfg.augment_base)
        return beideal.BridgeSpec(cfg.assumptions.augment_variable,
                                  base.polynomials)

    def source_hash(self) -> str:
        gens = self.generators()
        return hash_text(self.order.kind,
                         ",".join(self.order.registry.names),
                         *(g.canonical_str(self.order) for g in gens))

    # -- basis --------------------------------------------------------

    def basis(self, recompute: bool = False) -> GroebnerBasis:
        if self._basis is not None and not recompute:
            return self._basis
        source = self.source_hash()
        if self.cache is not None and not recompute:
            cached = self.cache.load_basis(source)
            if cached is not None:
                self._basis = cached
                return cached
        gb = buchberger(self.generators(), self.order,
                        strategy=self.strategy, limits=self.limits,
                        source=source)
        if self.cache is not None:
            self.cache.store_basis(gb)
        self._basis = gb
        return gb

    # -- records ---------------------------------------------------------

    def record(self, spine: Spine, label: str = "") -> InvariantRecord:
        gb = self.basis()
        key = hash_text(str(spine.code), gb.source)
        if self.cache is not None:
            data = self.cache.load_record(key)
            if data is not None:
                return InvariantRecord(
                    label=label or data["label"],
                    spine_hash=data["spine"],
                    system=data["system"],
                    basis_source=data["basis"],
                    normal_form=Polynomial.parse(data["normal_form"],
                                                 self.rsys.registry),
                    deg_w=data["deg_w"],
                    deg_6j=data["deg_6j"])
        rec = compute_invariant(spine, self.rsys, gb, label,
                                expected_source=self.source_hash())
        if self.cache is not None:
            self.cache.store_record(key, rec.as_dict(self.order))
        return rec

    def eval_point(self) -> QuotientPoint | None:
        return self.config.eval_point(self.rsys)


def render_report(records: Sequence[InvariantRecord],
                  spines: Sequence[Spine], order: MonomialOrder,
                  partition: list[list[str]] | None = None,
                  evaluations: dict[str, str] | None = None) -> str:
    """One aligned row per manifold."""
    if partition is None:
        partition = compare_partition(records)
    class_of = {}
    for ci, labels in enumerate(partition, start=1):
        for lb in labels:
            class_of[lb] = ci
    rows = [("label", "V", "E", "F", "euler", "deg_w", "deg_6j",
             "class", "normal form")]
    for rec, sp in zip(records, spines):
        row = (rec.label, str(sp.vertex_count), str(sp.edge_count),
               str(sp.stratum_count), str(sp.euler), str(rec.deg_w),
               str(rec.deg_6j), str(class_of[rec.label]),
               rec.normal_form.canonical_str(order))
        if evaluations and rec.label in evaluations:
            row = row[:-1] + (row[-1] + "   eval=" + evaluations[rec.label],)
        rows.append(row)
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]) - 1)]
    out = []
    for r in rows:
        left = "  ".join(s.ljust(w) for s, w in zip(r, widths))
        out.append(left + "  " + r[-1])
    return "\n".join(out)
