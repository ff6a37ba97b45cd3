"""Biedenharn-Elliott generators of the Turaev-Viro ideal.

One generator per choice of nine stratum colours and six edge colours:
the two-symbol sum over the extra edge colour minus the weighted
three-symbol sum over the extra stratum and three edge colours. Symbols
are class-resolved, so fixed values multiply into coefficients and zero
classes kill their terms.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterator, NamedTuple, Sequence

from .colours import (AssumptionSet, ColourSystem, RegisteredSystem,
                      SymbolTuple, enumerate_variables, parse_variable_name)
from .poly import Polynomial, VariableRegistry

DEDUP_CONVENTIONS = ("sign", "exact")


class GeneratorSpec(NamedTuple):
    j: tuple[int, ...]  # nine stratum colours
    k: tuple[int, ...]  # six edge colours


def iter_generator_specs(system: ColourSystem) -> Iterator[GeneratorSpec]:
    """Odometer order over the configured token orders."""
    for j in product(system.strata_colours, repeat=9):
        for k in product(system.edge_colours, repeat=6):
            yield GeneratorSpec(j, k)


def be_generator(spec: GeneratorSpec, rsys: RegisteredSystem) -> Polynomial:
    """The ideal generator attached to one spec (may be zero)."""
    system = rsys.system
    inv = system.invol
    j1, j2, j3, j4, j5, j6, j7, j8, j9 = spec.j
    k1, k2, k3, k4, k5, k6 = spec.k
    nvars = len(rsys.registry)
    terms: dict[tuple, Fraction] = {}

    def add(symbols, weight_colour, sign) -> None:
        coeff = Fraction(sign)
        exps = [0] * nvars
        if weight_colour is not None:
            wf = rsys.weight_factor(weight_colour)
            if wf.value is not None:
                coeff *= wf.value
            else:
                exps[wf.var_index] += 1
        for strata, edges in symbols:
            sf = rsys.symbol_factor(strata, edges)
            if sf.zero:
                return
            if sf.value is not None:
                coeff *= sf.value
            else:
                exps[sf.var_index] += 1
        mono = tuple(exps)
        c = terms.get(mono, Fraction(0)) + coeff
        if c:
            terms[mono] = c
        else:
            terms.pop(mono, None)

    for A in system.edge_colours:
        add((((j1, j2, j3, j7, j8, j9), (k1, k2, k3, A)),
             ((j4, j5, j6, inv(j7), inv(j8), inv(j9)), (k4, k5, k6, A))),
            None, 1)
    for A1 in system.edge_colours:
        for A2 in system.edge_colours:
            for A3 in system.edge_colours:
                for j in system.strata_colours:
                    add((((j, j1, j2, inv(j4), inv(j5), j7),
                          (A1, A2, k1, k4)),
                         ((j, j2, j3, inv(j5), inv(j6), j9),
                          (A2, A3, k3, k6)),
                         ((j, j3, j1, inv(j6), inv(j4), inv(j8)),
                          (A3, A1, k2, k5))),
                        j, -1)
    return Polynomial(rsys.registry, terms, _trusted=True)


def generate_ideal(rsys: RegisteredSystem, dedup: str = "sign"
                   ) -> list[Polynomial]:
    """All nonzero generators, deduplicated, in first-occurrence order.

    dedup='exact' removes exact duplicates only; dedup='sign' also
    collapses pairs differing by a global sign (first occurrence kept).
    """
    if dedup not in DEDUP_CONVENTIONS:
        raise ValueError(f"unknown dedup convention {dedup!r}")
    out: list[Polynomial] = []
    seen: set[tuple] = set()
    for spec in iter_generator_specs(rsys.system):
        p = be_generator(spec, rsys)
        if p.is_zero:
            continue
        key = p.frozen()
        if key in seen:
            continue
        seen.add(key)
        if dedup == "sign":
            seen.add((-p).frozen())
        out.append(p)
    return out


@dataclass(frozen=True)
class BridgeSpec:
    """Ring extension by a fresh variable bridging an edgeless system.

    Each base symbol jj(a..f) is replaced by X * jj(a..f)^{1,1}_{1,1}
    (class-resolved in the target system); weights carry over by name.
    """

    variable: str
    base: tuple[Polynomial, ...]


def augment_bridge(generators: Sequence[Polynomial], bridge: BridgeSpec,
                   rsys: RegisteredSystem) -> list[Polynomial]:
    """Append the bridged base polynomials to the generator list."""
    if rsys.augment_index is None:
        raise ValueError("target system has no augmentation variable")
    if rsys.registry.names[rsys.augment_index] != bridge.variable:
        raise ValueError(
            f"bridge variable {bridge.variable!r} is not the registry's "
            f"augmentation variable")
    target = rsys.registry
    nvars = len(target)
    x_index = rsys.augment_index
    # base polynomials use edgeless naming (no k-part)
    edgeless = ColourSystem(rsys.system.name + "-base",
                            rsys.system.strata_colours,
                            rsys.system.involution, 1)

    appended: list[Polynomial] = []
    for base_poly in bridge.base:
        base_reg = base_poly.registry
        terms: dict[tuple, Fraction] = {}
        for mono, coeff in base_poly.terms.items():
            exps = [0] * nvars
            c = Fraction(coeff)
            dead = False
            for i, e in enumerate(mono):
                if not e:
                    continue
                kind, payload = parse_variable_name(base_reg.names[i],
                                                    edgeless)
                if kind == "weight":
                    wf = rsys.weight_factor(payload)  # type: ignore[arg-type]
                    if wf.value is not None:
                        c *= wf.value ** e
                    else:
                        exps[wf.var_index] += e
                elif kind == "symbol":
                    st: SymbolTuple = payload  # type: ignore[assignment]
                    sf = rsys.symbol_factor(st.strata, (1, 1, 1, 1))
                    if sf.zero:
                        dead = True
                        break
                    exps[x_index] += e
                    if sf.value is not None:
                        c *= sf.value ** e
                    else:
                        exps[sf.var_index] += e
                else:
                    raise ValueError(
                        f"base polynomial references {base_reg.names[i]!r}, "
                        f"which has no class in the target system")
            if dead:
                continue
            m = tuple(exps)
            s = terms.get(m, Fraction(0)) + c
            if s:
                terms[m] = s
            else:
                terms.pop(m, None)
        p = Polynomial(target, terms, _trusted=True)
        if not p.is_zero:
            appended.append(p)
    return list(generators) + appended


def scaling_identity_check(m: int, n: int, involution: str = "trivial",
                           stride: int = 1
                           ) -> tuple[bool, Fraction, GeneratorSpec | None]:
    """Verify the scaling bridge between edgeless and edge-coloured systems.

    Substituting jj(a..f)^{A,B}_{C,D} := (1/n^2) * jj(a..f) into every
    (m,n) generator must give exactly (1/n^3) times the matching (m,1)
    generator. Returns (ok, factor, first counterexample spec). A stride
    above 1 checks a deterministic subsample of the spec space.
    """
    if involution == "negation":
        colours = tuple(range(-(m // 2), m // 2 + 1))
        if len(colours) != m:
            raise ValueError("negation involution needs an odd colour count")
    else:
        colours = tuple(range(1, m + 1))
    base_sys = ColourSystem("scaling-base", colours, involution, 1)
    full_sys = ColourSystem("scaling-full", colours, involution, n)
    empty = AssumptionSet()
    base = enumerate_variables(base_sys, empty)
    full = enumerate_variables(full_sys, empty)
    factor = Fraction(1, n ** 3)
    scale = Fraction(1, n ** 2)

    # map every full-system symbol variable to its base class variable
    sym_map: dict[int, int] = {}
    for rep, cls in full.classes.items():
        if cls.var_index is None:
            continue
        base_cls = base.symbol_class(SymbolTuple(rep.strata, (1, 1, 1, 1)))
        sym_map[cls.var_index] = base_cls.var_index
    weight_map: dict[int, int] = {}
    for f in full_sys.strata_colours:
        weight_map[full.weight_factor(f).var_index] = \
            base.weight_factor(f).var_index

    nbase = len(base.registry)

    def push_down(p: Polynomial) -> Polynomial:
        terms: dict[tuple, Fraction] = {}
        for mono, coeff in p.terms.items():
            exps = [0] * nbase
            c = coeff
            for i, e in enumerate(mono):
                if not e:
                    continue
                if i in sym_map:
                    exps[sym_map[i]] += e
                    c *= scale ** e
                else:
                    exps[weight_map[i]] += e
            mm = tuple(exps)
            s = terms.get(mm, Fraction(0)) + c
            if s:
                terms[mm] = s
            else:
                terms.pop(mm, None)
        return Polynomial(base.registry, terms, _trusted=True)

    for i, full_spec in enumerate(iter_generator_specs(full_sys)):
        if stride > 1 and i % stride:
            continue
        g_full = be_generator(full_spec, full)
        base_spec = GeneratorSpec(full_spec.j, (1,) * 6)
        g_base = be_generator(base_spec, base)
        if push_down(g_full) != g_base.scalar_mul(factor):
            return False, factor, full_spec
    return True, factor, None
