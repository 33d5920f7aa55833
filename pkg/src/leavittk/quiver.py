"""Finite quivers: parsing, sink-first vertex ordering, incidence data.

A quiver is a finite directed multigraph.  Vertex and arrow identifiers
are opaque strings; declaration order is preserved because downstream
matrix fixtures depend on it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .matrices import IntMatrix


class Arrow(NamedTuple):
    name: str
    source: str
    target: str


class QuiverParseError(ValueError):
    """Malformed quiver file; carries the offending 1-based line number."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class Quiver:
    vertices: tuple
    arrows: tuple

    def __post_init__(self):
        if not self.vertices:
            raise ValueError("quiver needs at least one vertex")
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("duplicate vertex ids")
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise ValueError("duplicate arrow ids")
        declared = set(self.vertices)
        for a in self.arrows:
            if a.source not in declared or a.target not in declared:
                raise ValueError(f"arrow {a.name}: undeclared endpoint")

    @classmethod
    def build(cls, vertices, arrows) -> "Quiver":
        return cls(tuple(vertices),
                   tuple(Arrow(*a) if not isinstance(a, Arrow) else a
                         for a in arrows))

    def out_degree(self, v: str) -> int:
        return sum(1 for a in self.arrows if a.source == v)

    def in_degree(self, v: str) -> int:
        return sum(1 for a in self.arrows if a.target == v)

    def is_sink(self, v: str) -> bool:
        return self.out_degree(v) == 0

    def sinks(self) -> tuple:
        return tuple(v for v in self.vertices if self.is_sink(v))


class NoSourceCheck(NamedTuple):
    ok: bool
    sources: tuple


class SourcesPresentError(ValueError):
    """The operation needs every vertex to have an incoming arrow."""

    def __init__(self, sources):
        self.sources = tuple(sources)
        super().__init__("quiver has sources: " + ", ".join(self.sources))


def require_no_sources(q: "Quiver | OrderedQuiver") -> None:
    check = check_no_sources(q)
    if not check.ok:
        raise SourcesPresentError(check.sources)


def check_no_sources(q: "Quiver | OrderedQuiver") -> NoSourceCheck:
    """Report vertices with no incoming arrow.

    >>> check_no_sources(parse_quiver("vertices w\\narrow a w w")).ok
    True
    """
    with_incoming = {a.target for a in q.arrows}
    offenders = tuple(v for v in q.vertices if v not in with_incoming)
    return NoSourceCheck(ok=not offenders, sources=offenders)


@dataclass(frozen=True)
class OrderedQuiver:
    """A quiver whose vertex tuple is stably partitioned sinks-first."""

    vertices: tuple
    arrows: tuple
    num_sinks: int

    @property
    def v(self) -> int:
        return len(self.vertices)

    @property
    def v_prime(self) -> int:
        return self.num_sinks

    def index(self, vertex: str) -> int:
        return self.vertices.index(vertex)

    def is_sink(self, v: str) -> bool:
        return self.index(v) < self.num_sinks

    def as_quiver(self) -> Quiver:
        return Quiver(self.vertices, self.arrows)


def order_sinks_first(q: "Quiver | OrderedQuiver") -> OrderedQuiver:
    """Stable partition of the vertex list with sinks in front.

    >>> jq = parse_quiver("vertices 1 2\\narrow a 1 1\\narrow b 1 2")
    >>> order_sinks_first(jq).vertices
    ('2', '1')
    """
    if isinstance(q, OrderedQuiver):
        q = q.as_quiver()
    sinks = [v for v in q.vertices if q.is_sink(v)]
    others = [v for v in q.vertices if not q.is_sink(v)]
    return OrderedQuiver(vertices=tuple(sinks + others), arrows=q.arrows,
                         num_sinks=len(sinks))


def as_ordered(q: "Quiver | OrderedQuiver") -> OrderedQuiver:
    """Pass OrderedQuiver through; order anything else sinks-first."""
    return q if isinstance(q, OrderedQuiver) else order_sinks_first(q)


def parse_quiver(text: str) -> Quiver:
    """Parse the line-oriented quiver format.

    `#` starts a comment; `vertices <id>...` declares vertices in order
    (several lines allowed); `arrow <id> <source> <target>` declares one
    arrow.  Tokens are whitespace-separated; there is no escaping.
    """
    vertices: list = []
    seen_vertices: set = set()
    arrow_lines: list = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if tokens[0] == "vertices":
            if len(tokens) < 2:
                raise QuiverParseError(lineno, "expected at least one vertex id")
            for tok in tokens[1:]:
                if tok in seen_vertices:
                    raise QuiverParseError(lineno, f"duplicate vertex id {tok!r}")
                seen_vertices.add(tok)
                vertices.append(tok)
        elif tokens[0] == "arrow":
            if len(tokens) != 4:
                raise QuiverParseError(
                    lineno, "expected 'arrow <id> <source> <target>'")
            arrow_lines.append((lineno, Arrow(tokens[1], tokens[2], tokens[3])))
        else:
            raise QuiverParseError(lineno, f"unknown directive {tokens[0]!r}")

    arrows = []
    seen_arrows: set = set()
    for lineno, a in arrow_lines:
        if a.name in seen_arrows:
            raise QuiverParseError(lineno, f"duplicate arrow id {a.name!r}")
        seen_arrows.add(a.name)
        if a.source not in seen_vertices:
            raise QuiverParseError(
                lineno, f"undeclared endpoint {a.source!r} in arrow {a.name!r}")
        if a.target not in seen_vertices:
            raise QuiverParseError(
                lineno, f"undeclared endpoint {a.target!r} in arrow {a.name!r}")
        arrows.append(a)

    if not vertices:
        raise QuiverParseError(1, "empty vertex set")

    return Quiver(tuple(vertices), tuple(arrows))


def render_quiver(q: "Quiver | OrderedQuiver") -> str:
    """Canonical text form; parse_quiver(render_quiver(q)) == q."""
    lines = ["vertices " + " ".join(q.vertices)]
    lines += [f"arrow {a.name} {a.source} {a.target}" for a in q.arrows]
    return "\n".join(lines) + "\n"


def incidence_matrix(q: OrderedQuiver) -> IntMatrix:
    """v x v matrix counting arrows from vertex i to vertex j.

    Rows belonging to sinks are zero, which is exactly why the sink
    block is deleted by :func:`reduced_incidence`.
    """
    idx = {v: i for i, v in enumerate(q.vertices)}
    counts = [[0] * q.v for _ in range(q.v)]
    for a in q.arrows:
        counts[idx[a.source]][idx[a.target]] += 1
    return IntMatrix(counts)


def reduced_incidence(q: OrderedQuiver) -> IntMatrix:
    """The incidence matrix with the leading (zero) sink rows removed."""
    full = incidence_matrix(q)
    for i in range(q.num_sinks):
        if any(full[i, j] != 0 for j in range(q.v)):
            raise AssertionError(
                f"sink row {i} is nonzero; vertex ordering is inconsistent")
    return IntMatrix([full.row(i) for i in range(q.num_sinks, q.v)])


def path_count_matrix(q: OrderedQuiver, length: int) -> IntMatrix:
    """Entry (i, j) counts paths of the given length from v_i to v_j."""
    if length < 0:
        raise ValueError("path length must be nonnegative")
    return incidence_matrix(q) ** length


__all__ = [
    "Arrow",
    "NoSourceCheck",
    "OrderedQuiver",
    "Quiver",
    "QuiverParseError",
    "SourcesPresentError",
    "as_ordered",
    "check_no_sources",
    "incidence_matrix",
    "order_sinks_first",
    "parse_quiver",
    "path_count_matrix",
    "reduced_incidence",
    "render_quiver",
    "require_no_sources",
]
