"""Multivariate division, Buchberger's algorithm and ideal membership.

Pair bookkeeping follows the Gebauer-Moeller update (product and chain
criteria); the pair-selection strategy is a knob but the reduced basis is
strategy-independent. Radical membership uses the auxiliary-variable trick:
p lies in the radical of I iff 1 lies in I + <1 - y*p> over a registry
extended by a fresh variable y.
"""
from __future__ import annotations

import heapq
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .poly import (Monomial, MonomialOrder, Polynomial, VariableRegistry,
                   mono_degree, mono_div, mono_divides, mono_lcm, mono_mul,
                   mono_one)

STRATEGIES = ("normal", "first")


@dataclass
class ResourceLimits:
    max_pairs: int | None = None
    max_basis: int | None = None
    max_seconds: float | None = None


class ResourceLimitExceeded(RuntimeError):
    """Bounded-computation abort carrying the partial state."""

    def __init__(self, message: str, basis: list[Polynomial],
                 pairs_done: int, pairs_left: int):
        super().__init__(message)
        self.partial_basis = basis
        self.pairs_done = pairs_done
        self.pairs_left = pairs_left

    def report(self) -> str:
        return (f"{self}: basis size {len(self.partial_basis)}, "
                f"{self.pairs_done} pairs processed, "
                f"{self.pairs_left} pending")


class UnverifiedBasis(ValueError):
    """Normal forms require a reduced or S-polynomial-complete basis."""


@dataclass(frozen=True)
class GroebnerBasis:
    """Ordered basis with its monomial order and provenance stamp."""

    polynomials: tuple[Polynomial, ...]
    order: MonomialOrder
    reduced: bool
    source: str = ""

    def __post_init__(self) -> None:
        if any(p.is_zero for p in self.polynomials):
            raise ValueError("basis contains the zero polynomial")

    def __len__(self) -> int:
        return len(self.polynomials)

    @property
    def registry(self) -> VariableRegistry:
        return self.order.registry


def reduce(f: Polynomial, basis: Sequence[Polynomial], order: MonomialOrder,
           with_quotients: bool = True
           ) -> tuple[Polynomial, list[Polynomial]]:
    """Multivariate division: f = sum q_i g_i + remainder.

    No monomial of the remainder is divisible by any basis leading
    monomial; deterministic given the basis sequence order.
    """
    registry = f.registry
    for g in basis:
        if g.registry != registry:
            raise ValueError("basis polynomial over a different registry")
    leads = [(g.leading_term(order), g) for g in basis if not g.is_zero]
    quotients: list[dict[Monomial, Fraction]] = [dict() for _ in basis]
    lead_index = {id(g): i for i, g in enumerate(basis)}

    work = dict(f.terms)
    heap = [(order.heap_key(m), m) for m in work]
    heapq.heapify(heap)
    remainder: dict[Monomial, Fraction] = {}
    while heap:
        _, m = heapq.heappop(heap)
        c = work.get(m)
        if not c:
            continue
        for (lm, lc), g in leads:
            if mono_divides(lm, m):
                q = c / lc
                shift = mono_div(m, lm)
                if with_quotients:
                    qd = quotients[lead_index[id(g)]]
                    qd[shift] = qd.get(shift, Fraction(0)) + q
                for mg, cg in g.terms.items():
                    mm = mono_mul(mg, shift)
                    s = work.get(mm)
                    if s is None:
                        work[mm] = -q * cg
                        heapq.heappush(heap, (order.heap_key(mm), mm))
                    else:
                        s = s - q * cg
                        if s:
                            work[mm] = s
                        else:
                            del work[mm]
                break
        else:
            remainder[m] = c
            del work[m]
    rem = Polynomial(registry, remainder, _trusted=True)
    qs = [Polynomial(registry, qd, _trusted=True) for qd in quotients]
    return rem, qs


def _spoly(f: Polynomial, g: Polynomial, order: MonomialOrder) -> Polynomial:
    (lmf, lcf) = f.leading_term(order)
    (lmg, lcg) = g.leading_term(order)
    l = mono_lcm(lmf, lmg)
    return (f.term_mul(mono_div(l, lmf), Fraction(1) / lcf)
            - g.term_mul(mono_div(l, lmg), Fraction(1) / lcg))


def _update_pairs(pairs: list[tuple[Monomial, int, int]],
                  leads: list[Monomial],
                  t: int) -> list[tuple[Monomial, int, int]]:
    """Gebauer-Moeller pair update after appending element t.

    Disjoint-lead candidates take part in the chain-criterion pruning
    before the product criterion finally discards them.
    """
    lmt = leads[t]
    rest = [(mono_lcm(leads[i], lmt), i, mono_mul(leads[i], lmt))
            for i in range(t)]
    kept: list[tuple[Monomial, int, Monomial]] = []
    while rest:
        la, i, prod = rest.pop(0)
        disjoint = la == prod
        if disjoint or (
                not any(mono_divides(lb, la) for lb, _, _ in rest)
                and not any(mono_divides(lb, la) for lb, _, _ in kept)):
            kept.append((la, i, prod))
    # prune old pairs made redundant by the new lead
    survivors: list[tuple[Monomial, int, int]] = []
    for (l, i, j) in pairs:
        if (mono_divides(lmt, l)
                and mono_lcm(leads[i], lmt) != l
                and mono_lcm(leads[j], lmt) != l):
            continue
        survivors.append((l, i, j))
    survivors.extend((la, i, t) for la, i, prod in kept if la != prod)
    return survivors


def _pair_sort_key(strategy: str, order: MonomialOrder):
    if strategy == "normal":
        def key(p):
            l, i, j = p
            return (mono_degree(l), order.key(l), j, i)
    elif strategy == "first":
        def key(p):
            l, i, j = p
            return (j, i)
    else:
        raise ValueError(f"unknown strategy {strategy!r}")
    return key


def buchberger(generators: Sequence[Polynomial], order: MonomialOrder,
               strategy: str = "normal",
               limits: ResourceLimits | None = None,
               reduced: bool = True,
               source: str = "") -> GroebnerBasis:
    """Compute a Groebner basis; with reduced=True the unique reduced one."""
    gens = [g for g in generators if not g.is_zero]
    if not gens:
        raise ValueError("empty generator list")
    limits = limits or ResourceLimits()
    t0 = time.monotonic()

    basis: list[Polynomial] = []
    leads: list[Monomial] = []
    pairs: list[tuple[Monomial, int, int]] = []

    def admit(p: Polynomial) -> None:
        nonlocal pairs
        p = p.monic(order)
        basis.append(p)
        leads.append(p.leading_term(order)[0])
        pairs = _update_pairs(pairs, leads, len(basis) - 1)

    unit_seen = False
    for g in _interreduce(gens, order):
        if len(g) == 1 and not any(next(iter(g.terms))):
            unit_seen = True
            break
        admit(g)
    if unit_seen:
        one = Polynomial.constant(order.registry, 1)
        return GroebnerBasis((one,), order, True, source)

    sort_key = _pair_sort_key(strategy, order)
    pairs_done = 0
    while pairs:
        if limits.max_pairs is not None and pairs_done >= limits.max_pairs:
            raise ResourceLimitExceeded("pair budget exhausted", basis,
                                        pairs_done, len(pairs))
        if limits.max_basis is not None and len(basis) > limits.max_basis:
            raise ResourceLimitExceeded("basis size budget exhausted", basis,
                                        pairs_done, len(pairs))
        if (limits.max_seconds is not None
                and time.monotonic() - t0 > limits.max_seconds):
            raise ResourceLimitExceeded("time budget exhausted", basis,
                                        pairs_done, len(pairs))
        best = min(range(len(pairs)), key=lambda k: sort_key(pairs[k]))
        l, i, j = pairs.pop(best)
        pairs_done += 1
        s = _spoly(basis[i], basis[j], order)
        if s.is_zero:
            continue
        r, _ = reduce(s, basis, order, with_quotients=False)
        if r.is_zero:
            continue
        if len(r) == 1 and not any(next(iter(r.terms))):
            one = Polynomial.constant(order.registry, 1)
            return GroebnerBasis((one,), order, True, source)
        admit(r)

    if reduced:
        final = _reduce_basis(basis, order)
    else:
        final = sorted(basis, key=lambda p: order.key(p.leading_term(order)[0]),
                       reverse=True)
    return GroebnerBasis(tuple(final), order, reduced, source)


def _interreduce(polys: list[Polynomial], order: MonomialOrder
                 ) -> list[Polynomial]:
    """Reduce every generator against the others until stable."""
    current = [p.monic(order) for p in polys if not p.is_zero]
    changed = True
    while changed:
        changed = False
        out: list[Polynomial] = []
        for k, p in enumerate(current):
            rest = out + current[k + 1:]
            if rest:
                r, _ = reduce(p, rest, order, with_quotients=False)
            else:
                r = p
            if r.is_zero:
                changed = True
                continue
            r = r.monic(order)
            if r != p:
                changed = True
            out.append(r)
        current = out
    current.sort(key=lambda p: order.key(p.leading_term(order)[0]))
    return current


def _reduce_basis(basis: list[Polynomial], order: MonomialOrder
                  ) -> list[Polynomial]:
    """Minimalize leads, then tail-reduce: the unique reduced basis."""
    items = sorted(((p.leading_term(order)[0], p) for p in basis),
                   key=lambda t: order.key(t[0]))
    minimal: list[tuple[Monomial, Polynomial]] = []
    for lm, p in items:
        if any(mono_divides(l2, lm) for l2, _ in minimal):
            continue
        minimal.append((lm, p))
    polys = [p for _, p in minimal]
    out: list[Polynomial] = []
    for k, p in enumerate(polys):
        others = out + polys[k + 1:]
        r, _ = reduce(p, others, order, with_quotients=False)
        out.append(r.monic(order))
    out.sort(key=lambda p: order.key(p.leading_term(order)[0]), reverse=True)
    return out


def normal_form(f: Polynomial, gb: GroebnerBasis) -> Polynomial:
    """Unique coset representative of f modulo the ideal of gb."""
    if not gb.reduced and not is_groebner(gb.polynomials, gb.order):
        raise UnverifiedBasis("basis is neither reduced nor S-complete")
    r, _ = reduce(f, gb.polynomials, gb.order, with_quotients=False)
    return r


def is_groebner(candidate: Sequence[Polynomial], order: MonomialOrder) -> bool:
    """True iff every pairwise S-polynomial reduces to zero."""
    polys = [p for p in candidate if not p.is_zero]
    leads = [p.leading_term(order)[0] for p in polys]
    for i in range(len(polys)):
        for j in range(i + 1, len(polys)):
            if mono_lcm(leads[i], leads[j]) == mono_mul(leads[i], leads[j]):
                continue  # product criterion: reduces to zero
            s = _spoly(polys[i], polys[j], order)
            if s.is_zero:
                continue
            r, _ = reduce(s, polys, order, with_quotients=False)
            if not r.is_zero:
                return False
    return True


def ideal_equal(a: Sequence[Polynomial], b: Sequence[Polynomial],
                order: MonomialOrder,
                limits: ResourceLimits | None = None) -> bool:
    """True iff the two generator lists span the same ideal."""
    nza = [p for p in a if not p.is_zero]
    nzb = [p for p in b if not p.is_zero]
    if not nza or not nzb:
        return bool(nza) == bool(nzb)
    gb_a = buchberger(nza, order, limits=limits)
    gb_b = buchberger(nzb, order, limits=limits)
    return list(gb_a.polynomials) == list(gb_b.polynomials)


def radical_member(p: Polynomial, generators: Sequence[Polynomial],
                   order_kind: str = "degrevlex",
                   limits: ResourceLimits | None = None) -> bool:
    """Membership in the radical via a fresh auxiliary variable."""
    registry = p.registry
    fresh = "y_aux"
    k = 0
    while fresh in registry:
        k += 1
        fresh = f"y_aux{k}"
    ext = registry.extend(fresh)
    width = len(ext)

    def lift(f: Polynomial) -> Polynomial:
        return Polynomial(ext, {m + (0,): c for m, c in f.terms.items()},
                          _trusted=True)

    y = Polynomial.variable(ext, fresh)
    gens = [lift(g) for g in generators if not g.is_zero]
    gens.append(Polynomial.constant(ext, 1) - y * lift(p))
    order = MonomialOrder(order_kind, ext)
    gb = buchberger(gens, order, limits=limits)
    one = Polynomial.constant(ext, 1)
    return list(gb.polynomials) == [one]


# -- basis cache files --------------------------------------------------------

def save_basis(gb: GroebnerBasis, path) -> None:
    lines = [f"#order {gb.order.kind}",
             "#vars " + ",".join(gb.registry.names),
             f"#source {gb.source}",
             f"#reduced {str(gb.reduced).lower()}"]
    lines += [p.canonical_str(gb.order) for p in gb.polynomials]
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def load_basis(path) -> GroebnerBasis:
    with open(path) as fh:
        lines = [ln.rstrip("\n") for ln in fh]
    header: dict[str, str] = {}
    body: list[str] = []
    for ln in lines:
        if ln.startswith("#"):
            key, _, val = ln[1:].partition(" ")
            header[key] = val
        elif ln.strip():
            body.append(ln)
    try:
        registry = VariableRegistry(tuple(header["vars"].split(",")))
        order = MonomialOrder(header["order"], registry)
        reduced = header["reduced"] == "true"
        source = header.get("source", "")
    except KeyError as exc:
        raise ValueError(f"basis file {path} missing header {exc}") from None
    polys = tuple(Polynomial.parse(ln, registry) for ln in body)
    return GroebnerBasis(polys, order, reduced, source)
