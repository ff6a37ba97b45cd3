"""Colour systems and canonical classes of vertex symbols.

The local model of a true vertex is the complete graph K4 on vertices
1..4: the four true-edge germs are the K4 vertices, the six 2-stratum
germs are the K4 edges. Strata slots a..f of a symbol sit on model edges
with a fixed reference direction; edge-colour slots A..D sit at model
vertices. The two symmetry generators

    g1: (a,b,c,d,e,f; A,B,C,D) -> (b,c,a,f,-d,-e; C,A,B,D)
    g2: (a,b,c,d,e,f; A,B,C,D) -> (a,-d,-e,-b,-c,-f; A,B,D,C)

act exactly as relabelings of the K4 vertices under this model, so the
24 relabelings form the full symmetry group of a symbol. When the extra
edge-colour symmetry is switched on, the group also contains the slot
double-transpositions (A B)(C D), (A C)(B D), (A D)(B C).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Iterator, NamedTuple

# strata slots a..f: model edge with reference direction
SLOT_EDGES: tuple[tuple[int, int], ...] = (
    (1, 2),  # a
    (2, 3),  # b
    (3, 1),  # c
    (4, 2),  # d
    (1, 4),  # e
    (4, 3),  # f
)
# edge-colour slots A..D sit at these model vertices
SLOT_VERTICES: tuple[int, ...] = (2, 1, 3, 4)
# strata slots incident to each model vertex (zero rule triples)
VERTEX_TRIPLES: dict[int, tuple[int, int, int]] = {
    1: (0, 2, 4),  # a, c, e
    2: (0, 1, 3),  # a, b, d
    3: (1, 2, 5),  # b, c, f
    4: (3, 4, 5),  # d, e, f
}
# double transpositions of the edge slots (the extra symmetry closure)
EDGE_SLOT_SYMMETRY: tuple[tuple[int, ...], ...] = (
    (1, 0, 3, 2), (2, 3, 0, 1), (3, 2, 1, 0))


class SymbolTuple(NamedTuple):
    strata: tuple[int, ...]  # 6 stratum colours
    edges: tuple[int, ...]   # 4 true-edge colours


class UnknownToken(ValueError):
    pass


@dataclass(frozen=True)
class ColourSystem:
    """Stratum colour set F with involution, edge colour set G."""

    name: str
    strata_colours: tuple[int, ...]
    involution: str = "trivial"  # or "negation"
    edge_count: int = 1

    def __post_init__(self) -> None:
        if self.involution not in ("trivial", "negation"):
            raise ValueError(f"unknown involution {self.involution!r}")
        for f in self.strata_colours:
            if self.invol(f) not in self.strata_colours:
                raise ValueError(f"colour set not closed under involution: {f}")

    def invol(self, f: int) -> int:
        return f if self.involution == "trivial" else -f

    @property
    def edge_colours(self) -> tuple[int, ...]:
        return tuple(range(1, self.edge_count + 1))

    @property
    def m(self) -> int:
        return len(self.strata_colours)

    @property
    def n(self) -> int:
        return self.edge_count

    def token_rank(self, f: int) -> int:
        try:
            return self.strata_colours.index(f)
        except ValueError:
            raise UnknownToken(f"{f} is not a stratum colour") from None

    def weight_orbit(self, f: int) -> int:
        """Representative of {f, -f}: the first in configured token order."""
        g = self.invol(f)
        return min(f, g, key=self.token_rank)


@dataclass(frozen=True)
class AssumptionSet:
    """Fixed values, zero rules, extra symmetry and augmentation."""

    fixed_weights: tuple[tuple[int, Fraction], ...] = ()
    # (strata tuple, edge tuple or None for all edge colourings, value)
    fixed_symbols: tuple[tuple[tuple[int, ...], tuple[int, ...] | None,
                                Fraction], ...] = ()
    zero_colours: tuple[int, ...] = ()
    edge_symmetry: bool = False
    augment_variable: str | None = None

    def validate(self, system: ColourSystem) -> None:
        for z in self.zero_colours:
            if system.invol(z) != z:
                raise ValueError(
                    f"zero-rule colour {z} is not involution-fixed")
            system.token_rank(z)
        for f, _ in self.fixed_weights:
            system.token_rank(f)
        for strata, edges, _ in self.fixed_symbols:
            for f in strata:
                system.token_rank(f)
            if edges is not None:
                for e in edges:
                    if e not in system.edge_colours:
                        raise UnknownToken(f"{e} is not an edge colour")


def apply_g1(t: SymbolTuple, system: ColourSystem) -> SymbolTuple:
    (a, b, c, d, e, f), (A, B, C, D) = t
    inv = system.invol
    return SymbolTuple((b, c, a, f, inv(d), inv(e)), (C, A, B, D))


def apply_g2(t: SymbolTuple, system: ColourSystem) -> SymbolTuple:
    (a, b, c, d, e, f), (A, B, C, D) = t
    inv = system.invol
    return SymbolTuple((a, inv(d), inv(e), inv(b), inv(c), inv(f)),
                       (A, B, D, C))


def slot_relabeling(t: SymbolTuple, sigma: dict[int, int],
                    system: ColourSystem) -> SymbolTuple:
    """Symbol read off after renaming the K4 vertices by sigma."""
    inv_sigma = {v: k for k, v in sigma.items()}
    edge_slot = {frozenset(uv): i for i, uv in enumerate(SLOT_EDGES)}
    strata = []
    for u, v in SLOT_EDGES:
        pu, pv = inv_sigma[u], inv_sigma[v]
        y = edge_slot[frozenset((pu, pv))]
        val = t.strata[y]
        if (pu, pv) != SLOT_EDGES[y]:
            val = system.invol(val)
        strata.append(val)
    vertex_slot = {v: i for i, v in enumerate(SLOT_VERTICES)}
    edges = tuple(t.edges[vertex_slot[inv_sigma[v]]] for v in SLOT_VERTICES)
    return SymbolTuple(tuple(strata), edges)


def symmetry_orbit(t: SymbolTuple, system: ColourSystem,
                   edge_symmetry: bool = False) -> set[SymbolTuple]:
    seen = {t}
    stack = [t]
    while stack:
        x = stack.pop()
        images = [apply_g1(x, system), apply_g2(x, system)]
        if edge_symmetry:
            for p in EDGE_SLOT_SYMMETRY:
                images.append(SymbolTuple(
                    x.strata, tuple(x.edges[i] for i in p)))
        for y in images:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return seen


def zero_rule_fires(strata: tuple[int, ...], colour: int) -> bool:
    """Some vertex-local triple carries the colour exactly twice."""
    for triple in VERTEX_TRIPLES.values():
        if sum(1 for i in triple if strata[i] == colour) == 2:
            return True
    return False


@dataclass(frozen=True)
class SymbolClass:
    canonical: SymbolTuple
    orbit_size: int
    zero: bool
    fixed_value: Fraction | None
    name: str
    var_index: int | None  # index into the registry, free classes only

    @property
    def free(self) -> bool:
        return not self.zero and self.fixed_value is None


class SymbolFactor(NamedTuple):
    """How one symbol occurrence enters a product."""

    zero: bool
    value: Fraction | None
    var_index: int | None


def token_text(f: int) -> str:
    return f"m{-f}" if f < 0 else str(f)


def default_symbol_name(t: SymbolTuple, n: int) -> str:
    toks = [token_text(x) for x in t.strata]
    if all(len(s) == 1 for s in toks):
        body = "".join(toks)
    else:
        body = "_" + "_".join(toks)
    name = "j" + body
    if n > 1:
        name += "k" + "".join(str(e) for e in t.edges)
    return name


def default_weight_name(f: int) -> str:
    return "w" + token_text(f)


def parse_variable_name(name: str, system: ColourSystem
                        ) -> tuple[str, object]:
    """Resolve a configured variable name to ('symbol', SymbolTuple),
    ('weight', colour) or ('augment', name)."""
    if name.startswith("w"):
        return "weight", _parse_token(name[1:])
    if name.startswith("j"):
        body = name[1:]
        edge_part: tuple[int, ...] | None = None
        if system.n > 1:
            body, sep, ktail = body.partition("k")
            if not sep:
                raise ValueError(f"symbol name {name!r} lacks edge colours")
            edge_part = tuple(int(ch) for ch in ktail)
            if len(edge_part) != 4:
                raise ValueError(f"bad edge colours in {name!r}")
        if body.startswith("_"):
            toks = tuple(_parse_token(s) for s in body[1:].split("_"))
        else:
            toks = tuple(_parse_token(ch) for ch in body)
        if len(toks) != 6:
            raise ValueError(f"bad stratum colours in {name!r}")
        return "symbol", SymbolTuple(toks, edge_part or (1, 1, 1, 1))
    return "augment", name


def _parse_token(s: str) -> int:
    if s.startswith("m"):
        return -int(s[1:])
    return int(s)


class SymbolTable:
    """Canonicalized class table plus weight classes for one system."""

    def __init__(self, system: ColourSystem, assumptions: AssumptionSet):
        assumptions.validate(system)
        self.system = system
        self.assumptions = assumptions
        self._build()

    def _tuple_key(self, t: SymbolTuple):
        rank = self.system.token_rank
        return tuple(rank(x) for x in t.strata) + t.edges

    def _build(self) -> None:
        system, asm = self.system, self.assumptions
        fixed_lookup: dict[SymbolTuple, Fraction] = {}
        canon: dict[SymbolTuple, SymbolTuple] = {}
        reps: list[tuple[SymbolTuple, int]] = []
        for strata in product(system.strata_colours, repeat=6):
            for edges in product(system.edge_colours, repeat=4):
                t = SymbolTuple(strata, edges)
                if t in canon:
                    continue
                orbit = symmetry_orbit(t, system, asm.edge_symmetry)
                rep = min(orbit, key=self._tuple_key)
                for x in orbit:
                    canon[x] = rep
                reps.append((rep, len(orbit)))
        for strata, edges, value in asm.fixed_symbols:
            if edges is None:
                for ec in product(system.edge_colours, repeat=4):
                    fixed_lookup[canon[SymbolTuple(strata, ec)]] = value
            else:
                fixed_lookup[canon[SymbolTuple(strata, edges)]] = value
        reps.sort(key=lambda ri: self._tuple_key(ri[0]))

        self.canon = canon
        self._class_seed: list[tuple[SymbolTuple, int, bool, Fraction | None]] = []
        for rep, size in reps:
            zero = any(zero_rule_fires(rep.strata, z)
                       for z in asm.zero_colours)
            value = fixed_lookup.get(rep)
            if zero and value is not None:
                raise ValueError(
                    f"class of {rep} is both fixed and killed by a zero rule")
            self._class_seed.append((rep, size, zero, value))

        fixed_w = dict(asm.fixed_weights)
        self.weight_orbits: list[int] = []
        seen: set[int] = set()
        for f in system.strata_colours:
            o = system.weight_orbit(f)
            if o not in seen:
                seen.add(o)
                self.weight_orbits.append(o)
        self.fixed_weight_values: dict[int, Fraction] = {}
        for f, val in fixed_w.items():
            self.fixed_weight_values[system.weight_orbit(f)] = val

    def free_class_reps(self) -> list[SymbolTuple]:
        return [rep for rep, _, zero, value in self._class_seed
                if not zero and value is None]

    def counts(self) -> dict[str, int]:
        total = len(self._class_seed)
        zero = sum(1 for _, _, z, _ in self._class_seed if z)
        fixed = sum(1 for _, _, z, v in self._class_seed
                    if not z and v is not None)
        free = total - zero - fixed
        return {"total": total, "nonzero": total - zero, "zero": zero,
                "fixed": fixed, "free": free,
                "free_weights": len(self.weight_orbits)
                - len(self.fixed_weight_values)}


class RegisteredSystem:
    """A symbol table bound to a variable registry (the ring context)."""

    def __init__(self, table: SymbolTable,
                 priority: tuple[str, ...] = ()):
        from .poly import VariableRegistry

        self.table = table
        self.system = table.system
        self.assumptions = table.assumptions

        system = table.system
        alias: dict[SymbolTuple, str] = {}
        weight_alias: dict[int, str] = {}
        listed: list[tuple[str, str, object]] = []  # (kind, name, payload)
        for name in priority:
            kind, payload = parse_variable_name(name, system)
            if kind == "symbol":
                rep = table.canon.get(payload)  # type: ignore[arg-type]
                if rep is None:
                    raise ValueError(f"{name!r} does not name a symbol class")
                alias[rep] = name
                listed.append(("symbol", name, rep))
            elif kind == "weight":
                orbit = system.weight_orbit(payload)  # type: ignore[arg-type]
                weight_alias[orbit] = name
                listed.append(("weight", name, orbit))
            else:
                if name != table.assumptions.augment_variable:
                    raise ValueError(f"{name!r} is not a registry variable")
                listed.append(("augment", name, name))

        free_syms = {rep: alias.get(rep, default_symbol_name(rep, system.n))
                     for rep in table.free_class_reps()}
        free_weights = {o: weight_alias.get(o, default_weight_name(o))
                        for o in table.weight_orbits
                        if o not in table.fixed_weight_values}

        names: list[str] = []
        placed_syms: set[SymbolTuple] = set()
        placed_weights: set[int] = set()
        placed_aug = False
        for kind, name, payload in listed:
            if kind == "symbol":
                if payload not in free_syms:
                    raise ValueError(
                        f"{name!r} names a non-free class (zero or fixed)")
                names.append(name)
                placed_syms.add(payload)  # type: ignore[arg-type]
            elif kind == "weight":
                if payload not in free_weights:
                    raise ValueError(f"{name!r} names a fixed weight")
                names.append(name)
                placed_weights.add(payload)  # type: ignore[arg-type]
            else:
                names.append(name)
                placed_aug = True
        rest = sorted(n for rep, n in free_syms.items()
                      if rep not in placed_syms)
        rest += sorted(n for o, n in free_weights.items()
                       if o not in placed_weights)
        names.extend(rest)
        if table.assumptions.augment_variable and not placed_aug:
            names.append(table.assumptions.augment_variable)

        self.registry = VariableRegistry(tuple(names))
        index = self.registry.position

        self.classes: dict[SymbolTuple, SymbolClass] = {}
        for rep, size, zero, value in table._class_seed:
            name = free_syms.get(rep, default_symbol_name(rep, system.n))
            self.classes[rep] = SymbolClass(
                rep, size, zero, value, name,
                index[name] if rep in free_syms else None)

        self._factor: dict[SymbolTuple, SymbolFactor] = {}
        for raw, rep in table.canon.items():
            cls = self.classes[rep]
            if cls.zero:
                self._factor[raw] = SymbolFactor(True, None, None)
            elif cls.fixed_value is not None:
                self._factor[raw] = SymbolFactor(False, cls.fixed_value, None)
            else:
                self._factor[raw] = SymbolFactor(False, None, cls.var_index)

        self._weight: dict[int, SymbolFactor] = {}
        for f in system.strata_colours:
            o = system.weight_orbit(f)
            if o in table.fixed_weight_values:
                self._weight[f] = SymbolFactor(
                    False, table.fixed_weight_values[o], None)
            else:
                self._weight[f] = SymbolFactor(
                    False, None, index[free_weights[o]])

        self.augment_index = (index[table.assumptions.augment_variable]
                              if table.assumptions.augment_variable else None)

    def symbol_factor(self, strata: tuple[int, ...],
                      edges: tuple[int, ...]) -> SymbolFactor:
        try:
            return self._factor[SymbolTuple(strata, edges)]
        except KeyError:
            raise UnknownToken(f"no class for {strata}, {edges}") from None

    def weight_factor(self, f: int) -> SymbolFactor:
        try:
            return self._weight[f]
        except KeyError:
            raise UnknownToken(f"{f} is not a stratum colour") from None

    def symbol_class(self, t: SymbolTuple) -> SymbolClass:
        return self.classes[self.table.canon[t]]

    def counts(self) -> dict[str, int]:
        return self.table.counts()


@lru_cache(maxsize=32)
def _cached_table(system: ColourSystem,
                  assumptions: AssumptionSet) -> SymbolTable:
    return SymbolTable(system, assumptions)


def canonicalize(t: SymbolTuple, system: ColourSystem,
                 assumptions: AssumptionSet) -> SymbolClass:
    """Canonical class of a symbol tuple (unnamed, registry-free view)."""
    table = _cached_table(system, assumptions)
    rep = table.canon.get(t)
    if rep is None:
        raise UnknownToken(f"tuple {t} uses unknown tokens")
    for r, size, zero, value in table._class_seed:
        if r == rep:
            return SymbolClass(rep, size, zero, value,
                               default_symbol_name(rep, system.n), None)
    raise AssertionError("canonical representative missing from table")


def enumerate_variables(system: ColourSystem, assumptions: AssumptionSet,
                        priority: tuple[str, ...] = ()) -> RegisteredSystem:
    """Build the ordered variable universe and the class table."""
    return RegisteredSystem(_cached_table(system, assumptions), priority)


def iter_symbol_tuples(system: ColourSystem) -> Iterator[SymbolTuple]:
    for strata in product(system.strata_colours, repeat=6):
        for edges in product(system.edge_colours, repeat=4):
            yield SymbolTuple(strata, edges)
