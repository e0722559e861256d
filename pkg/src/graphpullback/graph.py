"""Finite directed graphs, paths, and the hereditary/saturated vertex-set machinery.

Graphs are immutable values.  Vertex and edge ids are opaque strings; every
set-valued result is returned in a deterministic (sorted) order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Mapping

MAX_ENUM_VERTICES = 20

VertexSet = frozenset


class GraphError(ValueError):
    pass


class ParseError(GraphError):
    def __init__(self, line: int, column: int, message: str):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Graph:
    vertices: frozenset
    edges: frozenset
    src: Mapping[str, str]
    rng: Mapping[str, str]
    name: str = field(default="", compare=False)

    def __hash__(self):
        return hash((self.vertices, self.edges,
                     frozenset(self.src.items()), frozenset(self.rng.items())))

    def __repr__(self):
        return f"Graph({self.name!r}, V={sorted(self.vertices)}, E={sorted(self.edges)})"

    @classmethod
    def build(cls, name: str, vertices: Iterable[str],
              edges: Mapping[str, tuple[str, str]] | None = None) -> "Graph":
        """Build a graph from a vertex list and a map ``edge -> (source, range)``."""
        edges = dict(edges or {})
        return cls(frozenset(vertices), frozenset(edges),
                   {e: s for e, (s, _) in edges.items()},
                   {e: r for e, (_, r) in edges.items()},
                   name)

    @cached_property
    def out_edges(self) -> dict[str, tuple[str, ...]]:
        out: dict[str, list[str]] = {v: [] for v in self.vertices}
        for e in sorted(self.edges):
            out.setdefault(self.src[e], []).append(e)
        return {v: tuple(es) for v, es in out.items()}

    @cached_property
    def in_edges(self) -> dict[str, tuple[str, ...]]:
        into: dict[str, list[str]] = {v: [] for v in self.vertices}
        for e in sorted(self.edges):
            into.setdefault(self.rng[e], []).append(e)
        return {v: tuple(es) for v, es in into.items()}

    @cached_property
    def special_edges(self) -> dict[str, str]:
        """Default special-edge choice: the least outgoing edge id at every non-sink."""
        return {v: es[0] for v, es in self.out_edges.items() if es}

    def is_sink(self, v: str) -> bool:
        return not self.out_edges.get(v)

    def subgraph(self, vertices: Iterable[str], edges: Iterable[str], name: str = "") -> "Graph":
        vertices, edges = frozenset(vertices), frozenset(edges)
        unknown = edges - self.edges
        if unknown:
            raise GraphError(f"edges {sorted(unknown)} not in graph {self.name!r}")
        return Graph(vertices, edges,
                     {e: self.src[e] for e in edges},
                     {e: self.rng[e] for e in edges},
                     name)

    def renamed(self, name: str) -> "Graph":
        return Graph(self.vertices, self.edges, self.src, self.rng, name)

    def vertex_path(self, v: str) -> "Path":
        if v not in self.vertices:
            raise GraphError(f"{v!r} is not a vertex of {self.name!r}")
        return Path(v, (), v)

    def path(self, *edges: str) -> "Path":
        """The path ``e1 e2 ... ek``; a single vertex id gives the length-zero path."""
        if len(edges) == 1 and edges[0] in self.vertices:
            return self.vertex_path(edges[0])
        if not edges:
            raise GraphError("a path needs at least one edge or a vertex")
        for e in edges:
            if e not in self.edges:
                raise GraphError(f"{e!r} is not an edge of {self.name!r}")
        for e, f in zip(edges, edges[1:]):
            if self.rng[e] != self.src[f]:
                raise GraphError(f"edges {e!r} and {f!r} do not compose")
        return Path(self.src[edges[0]], tuple(edges), self.rng[edges[-1]])

    def has_path(self, p: "Path") -> bool:
        if not p.edges:
            return p.source in self.vertices
        return (p.source in self.vertices and all(e in self.edges for e in p.edges)
                and self.src[p.edges[0]] == p.source
                and all(self.rng[e] == self.src[f] for e, f in zip(p.edges, p.edges[1:]))
                and self.rng[p.edges[-1]] == p.range)


@dataclass(frozen=True, order=True)
class Path:
    """A composable edge sequence; ``edges == ()`` is the vertex path at ``source``."""

    source: str
    edges: tuple
    range: str

    def __len__(self):
        return len(self.edges)

    def __str__(self):
        return ".".join(self.edges) if self.edges else self.source

    @property
    def is_vertex(self) -> bool:
        return not self.edges

    @property
    def last(self) -> str | None:
        return self.edges[-1] if self.edges else None

    def sort_key(self):
        return (len(self.edges), self.source, self.edges)

    def is_prefix_of(self, other: "Path") -> bool:
        n = len(self.edges)
        return self.source == other.source and other.edges[:n] == self.edges

    def remainder(self, prefix: "Path") -> "Path":
        """``other`` such that ``prefix . other == self``; assumes ``prefix.is_prefix_of(self)``."""
        return Path(prefix.range, self.edges[len(prefix.edges):], self.range)

    def concat(self, other: "Path") -> "Path":
        if self.range != other.source:
            raise GraphError(f"paths {self} and {other} do not compose")
        return Path(self.source, self.edges + other.edges, other.range)

    def drop_last(self, src: Mapping[str, str]) -> "Path":
        if not self.edges:
            raise GraphError("vertex path has no last edge")
        return Path(self.source, self.edges[:-1], src[self.edges[-1]])


def validate_graph(g: Graph) -> list[str]:
    """Return a list of invariant violations; an empty list means the graph is valid."""
    problems = []
    for e in sorted(g.edges):
        if e not in g.src or e not in g.rng:
            problems.append(f"edge {e} has no source or range")
            continue
        if g.src[e] not in g.vertices:
            problems.append(f"edge {e}: dangling source {g.src[e]}")
        if g.rng[e] not in g.vertices:
            problems.append(f"edge {e}: dangling range {g.rng[e]}")
    for e in sorted(set(g.src) - g.edges):
        problems.append(f"source map defined on unknown edge {e}")
    for x in sorted(g.vertices & g.edges):
        problems.append(f"duplicate id {x} used as both vertex and edge")
    return problems


def is_valid(g: Graph) -> bool:
    return not validate_graph(g)


def sinks(g: Graph) -> frozenset:
    return frozenset(v for v in g.vertices if g.is_sink(v))


def is_subgraph(f: Graph, e: Graph) -> bool:
    if not is_valid(f):
        return False
    return (f.vertices <= e.vertices and f.edges <= e.edges
            and all(f.src[x] == e.src[x] and f.rng[x] == e.rng[x] for x in f.edges))


def _check_compatible(f1: Graph, f2: Graph, host: Graph | None):
    if host is not None:
        for f in (f1, f2):
            if not is_subgraph(f, host):
                raise GraphError(f"{f.name or f!r} is not a subgraph of {host.name or host!r}")
    for x in f1.edges & f2.edges:
        if f1.src[x] != f2.src[x] or f1.rng[x] != f2.rng[x]:
            raise GraphError(f"edge {x} has different endpoints in the two graphs")


def union(f1: Graph, f2: Graph, host: Graph | None = None, name: str = "") -> Graph:
    _check_compatible(f1, f2, host)
    return Graph(f1.vertices | f2.vertices, f1.edges | f2.edges,
                 {**f1.src, **f2.src}, {**f1.rng, **f2.rng}, name)


def intersection(f1: Graph, f2: Graph, host: Graph | None = None, name: str = "") -> Graph:
    _check_compatible(f1, f2, host)
    edges = f1.edges & f2.edges
    return Graph(f1.vertices & f2.vertices, edges,
                 {e: f1.src[e] for e in edges}, {e: f1.rng[e] for e in edges}, name)


def _check_subset(g: Graph, h) -> frozenset:
    h = frozenset(h)
    if not h <= g.vertices:
        raise GraphError(f"{sorted(h - g.vertices)} are not vertices of {g.name!r}")
    return h


def is_hereditary(g: Graph, h) -> bool:
    h = _check_subset(g, h)
    return all(g.rng[e] in h for e in g.edges if g.src[e] in h)


def is_saturated(g: Graph, h) -> bool:
    h = _check_subset(g, h)
    for v in g.vertices - h:
        emitted = g.out_edges[v]
        # finite graphs: the "< infinity" half of the condition always holds
        if 0 < len(emitted) < float("inf") and all(g.rng[e] in h for e in emitted):
            return False
    return True


def hereditary_closure(g: Graph, h) -> frozenset:
    closed = set(_check_subset(g, h))
    stack = list(closed)
    while stack:
        v = stack.pop()
        for e in g.out_edges[v]:
            w = g.rng[e]
            if w not in closed:
                closed.add(w)
                stack.append(w)
    return frozenset(closed)


def saturation_step(g: Graph, h) -> frozenset:
    h = frozenset(h)
    added = {v for v in g.vertices - h
             if g.out_edges[v] and all(g.rng[e] in h for e in g.out_edges[v])}
    return h | added


def hereditary_saturated_closure(g: Graph, h) -> frozenset:
    current = _check_subset(g, h)
    while True:
        nxt = saturation_step(g, hereditary_closure(g, current))
        if nxt == current:
            return current
        current = nxt


def vertex_set_key(h) -> tuple:
    return (len(h), tuple(sorted(h)))


def all_saturated_hereditary(g: Graph, bound: int = MAX_ENUM_VERTICES) -> list[frozenset]:
    if len(g.vertices) > bound:
        raise GraphError(f"{len(g.vertices)} vertices exceeds the enumeration bound {bound}")
    order = sorted(g.vertices)
    index = {v: i for i, v in enumerate(order)}
    succ = [0] * len(order)
    emits = [0] * len(order)
    for e in g.edges:
        succ[index[g.src[e]]] |= 1 << index[g.rng[e]]
    for i, v in enumerate(order):
        emits[i] = bool(g.out_edges[v])
    found = []
    for mask in range(1 << len(order)):
        ok = True
        for i in range(len(order)):
            inside = mask >> i & 1
            if inside and succ[i] & ~mask:
                ok = False
                break
            if not inside and emits[i] and not succ[i] & ~mask:
                ok = False
                break
        if ok:
            found.append(frozenset(v for i, v in enumerate(order) if mask >> i & 1))
    return sorted(found, key=vertex_set_key)


def quotient_graph(g: Graph, h, name: str | None = None) -> Graph:
    h = _check_subset(g, h)
    if not is_hereditary(g, h):
        raise GraphError(f"{sorted(h)} is not hereditary in {g.name!r}")
    keep = [e for e in g.edges if g.rng[e] not in h]
    if name is None:
        name = f"{g.name}/{{{','.join(sorted(h))}}}" if h else g.name
    return g.subgraph(g.vertices - h, keep, name)


def paths_up_to(g: Graph, max_len: int) -> list[Path]:
    if max_len < 0:
        raise GraphError("path length bound must be nonnegative")
    layer = [Path(v, (), v) for v in sorted(g.vertices)]
    result = list(layer)
    for _ in range(max_len):
        layer = [Path(p.source, p.edges + (e,), g.rng[e])
                 for p in layer for e in g.out_edges[p.range]]
        result.extend(layer)
    return sorted(result, key=Path.sort_key)


def paths_ending_at(g: Graph, max_len: int) -> dict[str, list[Path]]:
    by_range: dict[str, list[Path]] = {v: [] for v in sorted(g.vertices)}
    for p in paths_up_to(g, max_len):
        by_range[p.range].append(p)
    return by_range


def is_acyclic(g: Graph) -> bool:
    indeg = {v: 0 for v in g.vertices}
    for e in g.edges:
        indeg[g.rng[e]] += 1
    ready = [v for v, d in indeg.items() if d == 0]
    seen = 0
    while ready:
        v = ready.pop()
        seen += 1
        for e in g.out_edges[v]:
            indeg[g.rng[e]] -= 1
            if indeg[g.rng[e]] == 0:
                ready.append(g.rng[e])
    return seen == len(g.vertices)


def subgraphs(g: Graph) -> Iterator[Graph]:
    """Every subgraph of ``g`` (brute force; only for small graphs)."""
    vs = sorted(g.vertices)
    es = sorted(g.edges)
    for r in range(len(vs) + 1):
        for vsub in itertools.combinations(vs, r):
            vset = set(vsub)
            allowed = [e for e in es if g.src[e] in vset and g.rng[e] in vset]
            for k in range(len(allowed) + 1):
                for esub in itertools.combinations(allowed, k):
                    yield g.subgraph(vsub, esub)


# -- text format -----------------------------------------------------------

def _tokens(line: str) -> list[tuple[int, str]]:
    out = []
    col = 0
    for piece in line.split():
        col = line.index(piece, col)
        out.append((col + 1, piece))
        col += len(piece)
    return out


def parse_graph_text(text: str) -> tuple[Graph, list[tuple[str, list[str], list[str]]]]:
    """Parse the line-based graph format.

    Returns the graph plus any ``subgraph`` declarations as
    ``(name, vertex ids, edge ids)`` triples, unvalidated.
    """
    name = ""
    vertices: list[str] = []
    edges: dict[str, tuple[str, str]] = {}
    seen: dict[str, int] = {}
    subs = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        toks = _tokens(line)
        if not toks:
            continue
        col, kw = toks[0]

        def fail(message, at=col):
            raise ParseError(lineno, at, message)

        def declare(ident, at):
            if ident in seen:
                fail(f"duplicate id {ident!r} (first declared on line {seen[ident]})", at)
            seen[ident] = lineno

        if kw == "graph":
            if len(toks) != 2:
                fail("expected: graph <name>")
            name = toks[1][1]
        elif kw == "vertex":
            if len(toks) != 2:
                fail("expected: vertex <id>")
            declare(toks[1][1], toks[1][0])
            vertices.append(toks[1][1])
        elif kw == "edge":
            if len(toks) != 5 or toks[3][1] != "->":
                fail("expected: edge <id> <src-id> -> <dst-id>")
            declare(toks[1][1], toks[1][0])
            edges[toks[1][1]] = (toks[2][1], toks[4][1])
        elif kw == "subgraph":
            words = [t for _, t in toks]
            if len(words) < 4 or words[2] != "vertices" or "edges" not in words[3:]:
                fail("expected: subgraph <name> vertices <id,...> edges <id,...>")
            cut = words.index("edges", 3)
            vs = [x for x in ",".join(words[3:cut]).split(",") if x]
            es = [x for x in ",".join(words[cut + 1:]).split(",") if x]
            subs.append((words[1], vs, es))
        else:
            fail(f"unknown keyword {kw!r}")
    return Graph.build(name, vertices, edges), subs


def parse_graph(text: str) -> Graph:
    g, _ = parse_graph_text(text)
    return g


def format_graph(g: Graph) -> str:
    lines = [f"graph {g.name or 'unnamed'}"]
    lines += [f"vertex {v}" for v in sorted(g.vertices)]
    lines += [f"edge {e} {g.src[e]} -> {g.rng[e]}" for e in sorted(g.edges)]
    return "\n".join(lines) + "\n"


def format_subgraph(f: Graph, name: str | None = None) -> str:
    return (f"subgraph {name or f.name or 'F'} vertices {','.join(sorted(f.vertices))}"
            f" edges {','.join(sorted(f.edges))}")


def _dot_id(x: str) -> str:
    return '"' + x.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(g: Graph) -> str:
    lines = [f"digraph {_dot_id(g.name or 'G')} {{"]
    lines += [f"  {_dot_id(v)};" for v in sorted(g.vertices)]
    lines += [f"  {_dot_id(g.src[e])} -> {_dot_id(g.rng[e])} [label={_dot_id(e)}];"
              for e in sorted(g.edges)]
    lines.append("}")
    return "\n".join(lines) + "\n"
