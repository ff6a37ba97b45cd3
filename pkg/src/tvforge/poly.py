"""Sparse multivariate polynomials over exact rationals.

Monomials are dense exponent tuples indexed against a VariableRegistry;
polynomials are monomial -> Fraction maps with no zero coefficients.
Everything here is immutable after construction and safe to share.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

Monomial = tuple  # exponent tuple, one slot per registry variable


class RegistryMismatch(ValueError):
    """Operands indexed against different variable registries."""


class ZeroPolynomialError(ValueError):
    """Operation undefined for the zero polynomial."""


class PolynomialParseError(ValueError):
    pass


class UnassignedVariable(KeyError):
    """A variable occurring in the polynomial has no assignment."""


@dataclass(frozen=True)
class VariableRegistry:
    """Ordered universe of variable names; order is the priority order."""

    names: tuple[str, ...]

    def __post_init__(self) -> None:
        if len(set(self.names)) != len(self.names):
            raise ValueError("registry names must be pairwise distinct")
        object.__setattr__(self, "_position",
                           {n: i for i, n in enumerate(self.names)})

    @property
    def position(self) -> dict[str, int]:
        return self._position  # type: ignore[attr-defined]

    def index(self, name: str) -> int:
        try:
            return self.position[name]
        except KeyError:
            raise KeyError(f"unknown variable {name!r}") from None

    def __len__(self) -> int:
        return len(self.names)

    def __contains__(self, name: str) -> bool:
        return name in self.position

    def extend(self, name: str) -> "VariableRegistry":
        """Fresh registry with one extra, lowest-priority variable."""
        if name in self:
            raise ValueError(f"variable {name!r} already present")
        return VariableRegistry(self.names + (name,))


def mono_one(registry: VariableRegistry) -> Monomial:
    return (0,) * len(registry)


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    """True when a divides b."""
    return all(x <= y for x, y in zip(a, b))


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    """a / b; caller guarantees divisibility."""
    return tuple(x - y for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x if x > y else y for x, y in zip(a, b))


def mono_degree(a: Monomial) -> int:
    return sum(a)


@dataclass(frozen=True)
class MonomialOrder:
    """Admissible monomial order: 'degrevlex' (default) or 'lex'."""

    kind: str
    registry: VariableRegistry

    def __post_init__(self) -> None:
        if self.kind not in ("degrevlex", "lex"):
            raise ValueError(f"unknown order kind {self.kind!r}")

    def key(self, m: Monomial):
        """Sort key: ascending in the order (max() picks the lead)."""
        if len(m) != len(self.registry):
            raise RegistryMismatch("monomial length does not match registry")
        if self.kind == "lex":
            return m
        return (sum(m),) + tuple(-e for e in reversed(m))

    def heap_key(self, m: Monomial):
        """Inverted key so a min-heap pops the largest monomial first."""
        if self.kind == "lex":
            return tuple(-e for e in m)
        return (-sum(m),) + tuple(reversed(m))

    def compare(self, a: Monomial, b: Monomial) -> int:
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)


def compare_monomials(a: Monomial, b: Monomial, order: MonomialOrder) -> int:
    """-1, 0 or 1 as a <, =, > b under the order."""
    return order.compare(a, b)


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<op>[-+*/^()]))"
)


class Polynomial:
    """Immutable sparse polynomial with Fraction coefficients."""

    __slots__ = ("registry", "terms")

    def __init__(self, registry: VariableRegistry,
                 terms: dict[Monomial, Fraction] | None = None,
                 _trusted: bool = False):
        self.registry = registry
        if terms is None:
            self.terms: dict[Monomial, Fraction] = {}
        elif _trusted:
            self.terms = terms
        else:
            clean: dict[Monomial, Fraction] = {}
            width = len(registry)
            for m, c in terms.items():
                if len(m) != width or any(e < 0 for e in m):
                    raise ValueError(f"bad monomial {m!r} for registry")
                c = Fraction(c)
                if c:
                    clean[m] = clean.get(m, Fraction(0)) + c
                    if not clean[m]:
                        del clean[m]
            self.terms = clean

    # -- constructors ------------------------------------------------

    @classmethod
    def zero(cls, registry: VariableRegistry) -> "Polynomial":
        return cls(registry, {}, _trusted=True)

    @classmethod
    def constant(cls, registry: VariableRegistry, c) -> "Polynomial":
        c = Fraction(c)
        if not c:
            return cls.zero(registry)
        return cls(registry, {mono_one(registry): c}, _trusted=True)

    @classmethod
    def variable(cls, registry: VariableRegistry, name: str) -> "Polynomial":
        i = registry.index(name)
        exps = [0] * len(registry)
        exps[i] = 1
        return cls(registry, {tuple(exps): Fraction(1)}, _trusted=True)

    @classmethod
    def from_exponents(cls, registry: VariableRegistry,
                       items: Iterable[tuple[Monomial, Fraction]]) -> "Polynomial":
        return cls(registry, dict(items))

    # -- basic predicates ---------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.registry == other.registry and self.terms == other.terms

    __hash__ = None  # type: ignore[assignment]

    def frozen(self) -> tuple:
        """Hashable canonical snapshot (for dedup sets and dict keys)."""
        return tuple(sorted(self.terms.items()))

    def _check_registry(self, other: "Polynomial") -> None:
        if self.registry != other.registry:
            raise RegistryMismatch("operands use different registries")

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.registry, other)
        self._check_registry(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            s = terms.get(m)
            if s is None:
                terms[m] = c
            else:
                s = s + c
                if s:
                    terms[m] = s
                else:
                    del terms[m]
        return Polynomial(self.registry, terms, _trusted=True)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.registry,
                          {m: -c for m, c in self.terms.items()},
                          _trusted=True)

    def __sub__(self, other) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.registry, other)
        return self + (-other)

    def __rsub__(self, other) -> "Polynomial":
        return (-self) + other

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            return self.scalar_mul(other)
        self._check_registry(other)
        terms: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(x + y for x, y in zip(m1, m2))
                s = terms.get(m)
                if s is None:
                    terms[m] = c1 * c2
                else:
                    s = s + c1 * c2
                    if s:
                        terms[m] = s
                    else:
                        del terms[m]
        return Polynomial(self.registry, terms, _trusted=True)

    __rmul__ = __mul__

    def scalar_mul(self, c) -> "Polynomial":
        c = Fraction(c)
        if not c:
            return Polynomial.zero(self.registry)
        return Polynomial(self.registry,
                          {m: c * v for m, v in self.terms.items()},
                          _trusted=True)

    def __pow__(self, n: int) -> "Polynomial":
        if n < 0:
            raise ValueError("negative power")
        result = Polynomial.constant(self.registry, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def term_mul(self, mono: Monomial, coeff: Fraction) -> "Polynomial":
        """Multiply by coeff * x^mono in one pass."""
        if not coeff:
            return Polynomial.zero(self.registry)
        return Polynomial(
            self.registry,
            {tuple(x + y for x, y in zip(m, mono)): c * coeff
             for m, c in self.terms.items()},
            _trusted=True)

    # -- structure -----------------------------------------------------

    def leading_term(self, order: MonomialOrder) -> tuple[Monomial, Fraction]:
        if not self.terms:
            raise ZeroPolynomialError("zero polynomial has no leading term")
        m = max(self.terms, key=order.key)
        return m, self.terms[m]

    def sorted_terms(self, order: MonomialOrder) -> list[tuple[Monomial, Fraction]]:
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]),
                      reverse=True)

    def total_degree(self) -> int:
        if not self.terms:
            return 0
        return max(sum(m) for m in self.terms)

    def degree_in(self, names: Iterable[str]) -> int:
        """Max summed exponent of the named variables; 0 for the zero polynomial."""
        idx = [self.registry.index(n) for n in names]
        if not self.terms:
            return 0
        return max(sum(m[i] for i in idx) for m in self.terms)

    def variables(self) -> list[str]:
        used = set()
        for m in self.terms:
            for i, e in enumerate(m):
                if e:
                    used.add(i)
        return [self.registry.names[i] for i in sorted(used)]

    def monic(self, order: MonomialOrder) -> "Polynomial":
        _, c = self.leading_term(order)
        if c == 1:
            return self
        return self.scalar_mul(Fraction(1) / c)

    # -- evaluation ------------------------------------------------------

    def evaluate(self, point: "QuotientPoint"):
        """Exact image in the quotient algebra of the point."""
        alg = point.algebra
        acc = alg.zero()
        powers: dict[int, list] = {}
        for m, c in self.terms.items():
            val = alg.constant(c)
            for i, e in enumerate(m):
                if not e:
                    continue
                name = self.registry.names[i]
                if name not in point.assignment:
                    raise UnassignedVariable(name)
                cache = powers.setdefault(i, [alg.one(), point.assignment[name]])
                while len(cache) <= e:
                    cache.append(alg.mul(cache[-1], cache[1]))
                val = alg.mul(val, cache[e])
            acc = alg.add(acc, val)
        return acc

    # -- text form ---------------------------------------------------------

    def canonical_str(self, order: MonomialOrder) -> str:
        """Deterministic text form, terms descending in the order.

        Within a monomial, variables print lowest-priority first
        (descending registry index), e.g. ``w2^3*j222222^2``.
        """
        if not self.terms:
            return "0"
        parts: list[str] = []
        names = self.registry.names
        for m, c in self.sorted_terms(order):
            factors = [f"{names[i]}^{e}" if e > 1 else names[i]
                       for i in range(len(m) - 1, -1, -1) if (e := m[i])]
            mag = abs(c)
            if not factors:
                body = _fmt_rational(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = _fmt_rational(mag) + "*" + "*".join(factors)
            if not parts:
                parts.append(body if c > 0 else "-" + body)
            else:
                parts.append((" + " if c > 0 else " - ") + body)
        return "".join(parts)

    def __repr__(self) -> str:
        if not self.terms:
            return "Polynomial(0)"
        return f"Polynomial({len(self.terms)} terms over {len(self.registry)} vars)"

    @classmethod
    def parse(cls, text: str, registry: VariableRegistry) -> "Polynomial":
        return _parse_polynomial(text, registry)


def _fmt_rational(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _tokenize(text: str) -> Iterator[tuple[str, str]]:
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            if text[pos:].strip():
                raise PolynomialParseError(
                    f"unexpected character {text[pos]!r} at position {pos}")
            return
        pos = m.end()
        if m.lastgroup == "num":
            yield "num", m.group("num")
        elif m.lastgroup == "name":
            yield "name", m.group("name")
        else:
            yield "op", m.group("op")


def _parse_polynomial(text: str, registry: VariableRegistry) -> Polynomial:
    tokens = list(_tokenize(text))
    if not tokens:
        raise PolynomialParseError("empty polynomial text")
    terms: dict[Monomial, Fraction] = {}
    width = len(registry)
    i = 0
    sign = Fraction(1)
    # leading sign
    if tokens[i] == ("op", "-"):
        sign = Fraction(-1)
        i += 1
    elif tokens[i] == ("op", "+"):
        i += 1
    while i < len(tokens):
        coeff = sign
        exps = [0] * width
        saw_factor = False
        expect_factor = True
        while i < len(tokens):
            kind, val = tokens[i]
            if kind == "op" and val in "+-" and not expect_factor:
                break
            if kind == "num":
                c = Fraction(int(val))
                i += 1
                if i < len(tokens) and tokens[i] == ("op", "/"):
                    i += 1
                    if i >= len(tokens) or tokens[i][0] != "num":
                        raise PolynomialParseError("expected denominator")
                    c /= int(tokens[i][1])
                    i += 1
                coeff *= c
                saw_factor = True
            elif kind == "name":
                idx = registry.position.get(val)
                if idx is None:
                    raise PolynomialParseError(f"unknown variable {val!r}")
                e = 1
                i += 1
                if i < len(tokens) and tokens[i] == ("op", "^"):
                    i += 1
                    if i >= len(tokens) or tokens[i][0] != "num":
                        raise PolynomialParseError("expected exponent")
                    e = int(tokens[i][1])
                    i += 1
                exps[idx] += e
                saw_factor = True
            elif kind == "op" and val == "*":
                i += 1
                expect_factor = True
                continue
            else:
                raise PolynomialParseError(f"unexpected token {val!r}")
            expect_factor = False
        if not saw_factor:
            raise PolynomialParseError("empty term")
        m = tuple(exps)
        c = terms.get(m, Fraction(0)) + coeff
        if c:
            terms[m] = c
        else:
            terms.pop(m, None)
        # consume separator
        if i < len(tokens):
            kind, val = tokens[i]
            if kind != "op" or val not in "+-":
                raise PolynomialParseError(f"expected + or - before {val!r}")
            sign = Fraction(1) if val == "+" else Fraction(-1)
            i += 1
            if i >= len(tokens):
                raise PolynomialParseError("dangling sign")
    return Polynomial(registry, terms, _trusted=True)


# -- quotient algebra -------------------------------------------------------

QuotientElement = tuple  # residue coefficients, ascending degree


@dataclass(frozen=True)
class QuotientAlgebra:
    """Q[t]/(minimal_polynomial), elements as residue coefficient tuples."""

    minimal_polynomial: tuple[Fraction, ...]  # ascending, monic
    generator_name: str = "t"

    def __post_init__(self) -> None:
        mp = tuple(Fraction(c) for c in self.minimal_polynomial)
        if len(mp) < 2:
            raise ValueError("minimal polynomial must have degree >= 1")
        if mp[-1] != 1:
            raise ValueError("minimal polynomial must be monic")
        object.__setattr__(self, "minimal_polynomial", mp)

    @property
    def degree(self) -> int:
        return len(self.minimal_polynomial) - 1

    def zero(self) -> QuotientElement:
        return (Fraction(0),) * self.degree

    def one(self) -> QuotientElement:
        return self.constant(1)

    def constant(self, c) -> QuotientElement:
        return (Fraction(c),) + (Fraction(0),) * (self.degree - 1)

    def generator(self) -> QuotientElement:
        if self.degree == 1:
            # t is congruent to -constant term
            return (-self.minimal_polynomial[0],)
        return ((Fraction(0), Fraction(1)) +
                (Fraction(0),) * (self.degree - 2))

    def element(self, coeffs: Iterable) -> QuotientElement:
        return self.reduce([Fraction(c) for c in coeffs])

    def reduce(self, coeffs: list[Fraction]) -> QuotientElement:
        """Reduce an arbitrary-degree coefficient list below the minimal poly."""
        d = self.degree
        mp = self.minimal_polynomial
        cs = list(coeffs)
        for k in range(len(cs) - 1, d - 1, -1):
            top = cs[k]
            if top:
                for j in range(d + 1):
                    cs[k - d + j] -= top * mp[j]
        cs = cs[:d]
        cs += [Fraction(0)] * (d - len(cs))
        return tuple(cs)

    def add(self, a: QuotientElement, b: QuotientElement) -> QuotientElement:
        return tuple(x + y for x, y in zip(a, b))

    def mul(self, a: QuotientElement, b: QuotientElement) -> QuotientElement:
        d = self.degree
        conv = [Fraction(0)] * (2 * d - 1)
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                if y:
                    conv[i + j] += x * y
        return self.reduce(conv)

    def is_zero(self, a: QuotientElement) -> bool:
        return not any(a)

    def to_str(self, a: QuotientElement) -> str:
        reg = VariableRegistry((self.generator_name,))
        p = Polynomial(reg, {(i,): c for i, c in enumerate(a) if c})
        return p.canonical_str(MonomialOrder("lex", reg))

    def parse_element(self, text: str) -> QuotientElement:
        reg = VariableRegistry((self.generator_name,))
        p = Polynomial.parse(text, reg)
        coeffs = [Fraction(0)] * (p.total_degree() + 1)
        for m, c in p.terms.items():
            coeffs[m[0]] = c
        return self.reduce(coeffs)


@dataclass(frozen=True)
class QuotientPoint:
    """Evaluation point with values in a quotient algebra."""

    algebra: QuotientAlgebra
    assignment: dict[str, QuotientElement]
    registry: VariableRegistry

    def __post_init__(self) -> None:
        for name in self.assignment:
            if name not in self.registry:
                raise KeyError(f"assignment for {name!r} outside the registry")
        for name, val in self.assignment.items():
            if len(val) != self.algebra.degree:
                raise ValueError(f"residue for {name!r} not reduced")

    def content_key(self) -> tuple:
        return (self.algebra.minimal_polynomial,
                tuple(sorted(self.assignment.items())))


def evaluate_at(f: Polynomial, point: QuotientPoint) -> QuotientElement:
    """Image of f under the substitution homomorphism of the point."""
    if f.registry != point.registry:
        raise RegistryMismatch("polynomial and point use different registries")
    return f.evaluate(point)
