"""Special 2-polyhedra from Matveev codes.

A code is a list of cyclic words of signed edge numbers, one word per
2-stratum, tracing the stratum boundary along oriented true edges. The
builder recovers corners from consecutive letters and true vertices as
connected components (which must be K4) of the corner graph on edge-ends.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, NamedTuple


class SpineParseError(ValueError):
    pass


class SpineValidationError(ValueError):
    pass


@dataclass(frozen=True)
class SpineCode:
    """Cyclic boundary words; edge ids are 1..edge_count."""

    curves: tuple[tuple[int, ...], ...]
    edge_count: int

    def __str__(self) -> str:
        return "(" + ",".join(
            "(" + ",".join(str(x) for x in w) + ")" for w in self.curves) + ")"


class EdgeEnd(NamedTuple):
    edge: int
    head: bool  # terminal end under the edge's orientation

    def __str__(self) -> str:
        return f"{'h' if self.head else 't'}{self.edge}"


class Corner(NamedTuple):
    """2-stratum germ at a vertex, traversed from_end -> to_end."""

    curve: int
    pos: int
    from_end: EdgeEnd
    to_end: EdgeEnd

    @property
    def stratum(self) -> int:
        return self.curve


@dataclass(frozen=True)
class Vertex:
    index: int
    ends: tuple[EdgeEnd, ...]          # exactly 4, sorted
    corners: tuple[Corner, ...]        # exactly 6, one per end pair

    def corner_between(self, a: EdgeEnd, b: EdgeEnd) -> Corner:
        for c in self.corners:
            if {c.from_end, c.to_end} == {a, b}:
                return c
        raise KeyError(f"no corner between {a} and {b}")


@dataclass(frozen=True)
class Spine:
    code: SpineCode
    vertices: tuple[Vertex, ...]

    @property
    def stratum_count(self) -> int:
        return len(self.code.curves)

    @property
    def edge_count(self) -> int:
        return self.code.edge_count

    @property
    def vertex_count(self) -> int:
        return len(self.vertices)

    @property
    def euler(self) -> int:
        return self.stratum_count - self.edge_count + self.vertex_count

    @property
    def closed_consistent(self) -> bool:
        return (self.stratum_count == self.vertex_count + 1
                and self.euler == 1)


def parse_spine_code(text: str) -> SpineCode:
    """Parse nested parenthesized comma-separated integer lists."""
    tokens = _lex(text)
    curves: list[tuple[int, ...]] = []
    it = iter(tokens)
    tok = next(it, None)
    if tok != "(":
        raise SpineParseError("expected opening parenthesis")
    tok = next(it, None)
    while tok != ")":
        if tok != "(":
            raise SpineParseError(f"expected curve, got {tok!r}")
        word: list[int] = []
        tok = next(it, None)
        while tok != ")":
            if tok is None:
                raise SpineParseError("unbalanced parentheses")
            if not isinstance(tok, int):
                raise SpineParseError(f"expected integer, got {tok!r}")
            word.append(tok)
            tok = next(it, None)
            if tok == ",":
                tok = next(it, None)
        if not word:
            raise SpineParseError("empty curve")
        curves.append(tuple(word))
        tok = next(it, None)
        if tok == ",":
            tok = next(it, None)
        if tok is None:
            raise SpineParseError("unbalanced parentheses")
    if next(it, None) is not None:
        raise SpineParseError("trailing input after closing parenthesis")
    return _validate_code(curves)


def _lex(text: str) -> list:
    out: list = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch in "(),":
            out.append(ch)
            i += 1
        elif ch == "-" or ch.isdigit():
            j = i + 1
            while j < len(text) and text[j].isdigit():
                j += 1
            try:
                out.append(int(text[i:j]))
            except ValueError:
                raise SpineParseError(f"bad integer at position {i}") from None
            i = j
        else:
            raise SpineParseError(f"unexpected character {ch!r} at position {i}")
    return out


def _validate_code(curves: list[tuple[int, ...]]) -> SpineCode:
    if not curves:
        raise SpineValidationError("code has no curves")
    magnitudes = [abs(x) for w in curves for x in w]
    if 0 in (x for w in curves for x in w):
        raise SpineValidationError("zero entry in curve word")
    edge_count = max(magnitudes)
    present = set(magnitudes)
    missing = [e for e in range(1, edge_count + 1) if e not in present]
    if missing:
        raise SpineValidationError(f"missing edge magnitudes: {missing}")
    return SpineCode(tuple(curves), edge_count)


def _corners(code: SpineCode) -> Iterator[Corner]:
    for ci, word in enumerate(code.curves):
        k = len(word)
        for pos in range(k):
            x = word[pos]
            y = word[(pos + 1) % k]
            # positive letter is traversed along the edge orientation:
            # it exits at the head; a following positive letter is entered
            # at its tail (both reversed for negative signs).
            from_end = EdgeEnd(abs(x), head=x > 0)
            to_end = EdgeEnd(abs(y), head=y < 0)
            yield Corner(ci, pos, from_end, to_end)


def build_spine(code: SpineCode) -> Spine:
    """Reconstruct the full incidence structure and check it."""
    counts: dict[int, int] = {}
    for w in code.curves:
        for x in w:
            counts[abs(x)] = counts.get(abs(x), 0) + 1
    wrong = {e: c for e, c in counts.items() if c != 3}
    if wrong:
        raise SpineValidationError(
            f"each edge must be traversed exactly 3 times, got {wrong}")

    corners = list(_corners(code))
    # union-find over the 2E edge-ends
    parent: dict[EdgeEnd, EdgeEnd] = {}

    def find(x: EdgeEnd) -> EdgeEnd:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in range(1, code.edge_count + 1):
        for h in (False, True):
            parent[EdgeEnd(e, h)] = EdgeEnd(e, h)
    for c in corners:
        if c.from_end == c.to_end:
            raise SpineValidationError(
                f"corner at curve {c.curve} position {c.pos} loops "
                f"on edge-end {c.from_end}")
        ra, rb = find(c.from_end), find(c.to_end)
        if ra != rb:
            parent[ra] = rb

    groups: dict[EdgeEnd, list[EdgeEnd]] = {}
    for e in parent:
        groups.setdefault(find(e), []).append(e)

    vertices: list[Vertex] = []
    for root in sorted(groups):
        ends = sorted(groups[root])
        if len(ends) != 4:
            raise SpineValidationError(
                f"edge-end component {[str(e) for e in ends]} has "
                f"{len(ends)} ends, expected 4 (K4 vertex)")
        local = [c for c in corners
                 if find(c.from_end) == root]
        pair_seen: dict[frozenset, Corner] = {}
        for c in local:
            key = frozenset((c.from_end, c.to_end))
            if key in pair_seen:
                raise SpineValidationError(
                    f"duplicate corner between {c.from_end} and {c.to_end}")
            pair_seen[key] = c
        if len(local) != 6:
            raise SpineValidationError(
                f"vertex {[str(e) for e in ends]} carries {len(local)} "
                f"corners, expected 6")
        for a in range(4):
            for b in range(a + 1, 4):
                if frozenset((ends[a], ends[b])) not in pair_seen:
                    raise SpineValidationError(
                        f"missing corner between {ends[a]} and {ends[b]}")
        vertices.append(Vertex(len(vertices), tuple(ends),
                               tuple(sorted(local))))
    return Spine(code, tuple(vertices))


def spine_stats(sp: Spine) -> tuple[int, int, int, int, bool]:
    """(V, E, F, euler, closed_consistent)."""
    return (sp.vertex_count, sp.edge_count, sp.stratum_count, sp.euler,
            sp.closed_consistent)


def read_spine_file(path) -> list[tuple[str, SpineCode]]:
    """One code per line; '#'-prefixed lines label the next code."""
    out: list[tuple[str, SpineCode]] = []
    label: str | None = None
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                label = line[1:].strip()
                continue
            try:
                code = parse_spine_code(line)
            except (SpineParseError, SpineValidationError) as exc:
                raise type(exc)(f"{path}:{lineno}: {exc}") from None
            out.append((label or f"spine-{len(out) + 1}", code))
            label = None
    return out
