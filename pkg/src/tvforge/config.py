"""System configuration files: colour sets, assumptions, order, eval point.

Sectioned key-value text, e.g.::

    [colours]
    name = tv21s
    strata = 1,2
    involution = trivial
    edges = 1

    [assumptions]
    fix w(1) = 1
    fix j(1,1,1,1,1,1) = 1
    zero_rule colour = 1
    edge_symmetry = false

    [order]
    kind = degrevlex
    variables = j112122, j212212, j212222, j222222, w2

    [eval]
    minpoly = t^4 - t^2 - 1
    assign w2 = t^2

A ``fix j(...;*) = v`` line fixes the value for every edge colouring of
the given strata tuple; ``augment var=X base=FILE`` enlarges the ring by
a bridge variable whose base polynomials are read from FILE (relative to
the config file).
"""
from __future__ import annotations

import os
import re
from dataclasses import dataclass, field
from fractions import Fraction

from .colours import (AssumptionSet, ColourSystem, RegisteredSystem,
                      enumerate_variables)
from .poly import MonomialOrder, QuotientAlgebra, QuotientPoint


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class EvalSpec:
    minpoly: str
    assignments: tuple[tuple[str, str], ...]
    generator: str = "t"


@dataclass(frozen=True)
class SystemConfig:
    system: ColourSystem
    assumptions: AssumptionSet
    order_kind: str = "degrevlex"
    priority: tuple[str, ...] = ()
    eval_spec: EvalSpec | None = None
    augment_base: str | None = None   # path to bridge base polynomials
    path: str | None = None
    raw_text: str = ""

    def registered(self) -> RegisteredSystem:
        return enumerate_variables(self.system, self.assumptions,
                                   self.priority)

    def order(self, registered: RegisteredSystem | None = None
              ) -> MonomialOrder:
        reg = (registered or self.registered()).registry
        return MonomialOrder(self.order_kind, reg)

    def eval_point(self, registered: RegisteredSystem | None = None
                   ) -> QuotientPoint | None:
        if self.eval_spec is None:
            return None
        reg = (registered or self.registered()).registry
        algebra = QuotientAlgebra(
            _parse_minpoly(self.eval_spec.minpoly, self.eval_spec.generator),
            self.eval_spec.generator)
        assignment = {name: algebra.parse_element(text)
                      for name, text in self.eval_spec.assignments}
        return QuotientPoint(algebra, assignment, reg)


def _parse_minpoly(text: str, gen: str) -> tuple[Fraction, ...]:
    from .poly import Polynomial, VariableRegistry

    reg = VariableRegistry((gen,))
    p = Polynomial.parse(text, reg)
    deg = p.total_degree()
    coeffs = [Fraction(0)] * (deg + 1)
    for m, c in p.terms.items():
        coeffs[m[0]] = c
    if coeffs[-1] != 1:
        raise ConfigError("minimal polynomial must be monic")
    return tuple(coeffs)


_FIX_RE = re.compile(r"fix\s+(.*?)\s*=\s*(\S+)$")
_TARGET_W = re.compile(r"w\(\s*(-?\d+)\s*\)$")
_TARGET_J = re.compile(r"j\(\s*([-\d,\s]+?)\s*(?:;\s*([*\d,\s]+?)\s*)?\)$")


def parse_config(text: str, path: str | None = None) -> SystemConfig:
    sections: dict[str, list[tuple[int, str]]] = {}
    current: str | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            current = line[1:-1].strip().lower()
            sections.setdefault(current, [])
            continue
        if current is None:
            raise ConfigError(f"line {lineno}: entry outside any section")
        sections[current].append((lineno, line))

    def entries(section: str) -> dict[str, str]:
        out = {}
        for lineno, line in sections.get(section, []):
            key, sep, val = line.partition("=")
            if not sep:
                raise ConfigError(f"line {lineno}: expected key = value")
            out[key.strip().lower()] = val.strip()
        return out

    col = entries("colours")
    if "strata" not in col:
        raise ConfigError("[colours] section must list strata")
    strata = tuple(int(s) for s in col["strata"].split(","))
    system = ColourSystem(
        name=col.get("name", "system"),
        strata_colours=strata,
        involution=col.get("involution", "trivial"),
        edge_count=int(col.get("edges", "1")))

    fixed_weights: list[tuple[int, Fraction]] = []
    fixed_symbols: list = []
    zero_colours: list[int] = []
    edge_symmetry = False
    augment_variable: str | None = None
    augment_base: str | None = None
    for lineno, line in sections.get("assumptions", []):
        low = line.lower()
        if low.startswith("fix"):
            m = _FIX_RE.match(line)
            if not m:
                raise ConfigError(f"line {lineno}: bad fix directive")
            target, value = m.group(1), Fraction(m.group(2))
            mw = _TARGET_W.match(target)
            mj = _TARGET_J.match(target)
            if mw:
                fixed_weights.append((int(mw.group(1)), value))
            elif mj:
                toks = tuple(int(s) for s in mj.group(1).split(","))
                if len(toks) != 6:
                    raise ConfigError(f"line {lineno}: need 6 strata colours")
                etoks = None
                if mj.group(2) is not None and mj.group(2).strip() != "*":
                    etoks = tuple(int(s) for s in mj.group(2).split(","))
                    if len(etoks) != 4:
                        raise ConfigError(
                            f"line {lineno}: need 4 edge colours")
                fixed_symbols.append((toks, etoks, value))
            else:
                raise ConfigError(f"line {lineno}: bad fix target {target!r}")
        elif low.startswith("zero_rule"):
            _, _, val = line.partition("=")
            zero_colours.append(int(val.strip()))
        elif low.startswith("edge_symmetry"):
            _, _, val = line.partition("=")
            edge_symmetry = val.strip().lower() in ("true", "1", "yes", "on")
        elif low.startswith("augment"):
            parts = dict(p.split("=", 1) for p in line.split()[1:])
            if "var" not in parts:
                raise ConfigError(f"line {lineno}: augment needs var=NAME")
            augment_variable = parts["var"]
            augment_base = parts.get("base")
        else:
            raise ConfigError(f"line {lineno}: unknown assumption {line!r}")

    assumptions = AssumptionSet(
        fixed_weights=tuple(fixed_weights),
        fixed_symbols=tuple(fixed_symbols),
        zero_colours=tuple(zero_colours),
        edge_symmetry=edge_symmetry,
        augment_variable=augment_variable)

    order = entries("order")
    priority: tuple[str, ...] = ()
    if order.get("variables"):
        priority = tuple(s.strip() for s in order["variables"].split(",")
                         if s.strip())

    eval_spec = None
    ev = sections.get("eval")
    if ev:
        minpoly = None
        gen = "t"
        assignments: list[tuple[str, str]] = []
        for lineno, line in ev:
            key, sep, val = line.partition("=")
            if not sep:
                raise ConfigError(f"line {lineno}: expected key = value")
            key = key.strip()
            if key.lower() == "minpoly":
                minpoly = val.strip()
            elif key.lower() == "generator":
                gen = val.strip()
            elif key.lower().startswith("assign"):
                assignments.append((key.split(None, 1)[1].strip(),
                                    val.strip()))
            else:
                raise ConfigError(f"line {lineno}: unknown eval entry")
        if minpoly is None:
            raise ConfigError("[eval] section needs a minpoly")
        eval_spec = EvalSpec(minpoly, tuple(assignments), gen)

    if augment_base is not None and path is not None:
        augment_base = os.path.join(os.path.dirname(os.path.abspath(path)),
                                    augment_base)
    return SystemConfig(system=system, assumptions=assumptions,
                        order_kind=order.get("kind", "degrevlex"),
                        priority=priority, eval_spec=eval_spec,
                        augment_base=augment_base, path=path, raw_text=text)


def load_config(path) -> SystemConfig:
    with open(path) as fh:
        return parse_config(fh.read(), path=str(path))
