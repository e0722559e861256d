"""Admissible decompositions of a graph into two subgraphs."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .graph import (
    MAX_ENUM_VERTICES,
    Graph,
    GraphError,
    all_saturated_hereditary,
    format_graph,
    format_subgraph,
    intersection,
    is_hereditary,
    is_saturated,
    is_subgraph,
    parse_graph_text,
    quotient_graph,
    subgraphs,
    union,
    validate_graph,
)


class NotAdmissible(GraphError):
    def __init__(self, report: "AdmissibilityReport"):
        super().__init__(f"decomposition is not admissible: {report.summary()}")
        self.report = report


@dataclass(frozen=True)
class Decomposition:
    host: Graph
    f1: Graph
    f2: Graph
    intersection: Graph = field(init=False, compare=False)

    def __post_init__(self):
        for f in (self.f1, self.f2):
            if not is_subgraph(f, self.host):
                raise GraphError(f"{f.name or f!r} is not a subgraph of {self.host.name!r}")
        object.__setattr__(self, "intersection",
                           intersection(self.f1, self.f2, name=f"{self.f1.name}&{self.f2.name}"))

    def swapped(self) -> "Decomposition":
        return Decomposition(self.host, self.f2, self.f1)

    def key(self) -> tuple:
        """Canonical key of the unordered pair ``{f1, f2}``."""
        a, b = _piece_key(self.f1), _piece_key(self.f2)
        return (a, b) if a <= b else (b, a)

    def canonical(self) -> "Decomposition":
        return self if _piece_key(self.f1) <= _piece_key(self.f2) else self.swapped()

    @property
    def only_in_f1(self) -> frozenset:
        return self.f1.vertices - self.f2.vertices

    @property
    def only_in_f2(self) -> frozenset:
        return self.f2.vertices - self.f1.vertices

    @property
    def shared(self) -> frozenset:
        return self.f1.vertices & self.f2.vertices

    def to_text(self) -> str:
        return (format_graph(self.host)
                + format_subgraph(self.f1, self.f1.name or "F1") + "\n"
                + format_subgraph(self.f2, self.f2.name or "F2") + "\n")

    def to_dict(self) -> dict:
        return {"f1": _piece_dict(self.f1), "f2": _piece_dict(self.f2),
                "intersection": _piece_dict(self.intersection)}


def _piece_key(f: Graph) -> tuple:
    return (tuple(sorted(f.vertices)), tuple(sorted(f.edges)))


def _piece_dict(f: Graph) -> dict:
    return {"vertices": sorted(f.vertices), "edges": sorted(f.edges)}


@dataclass(frozen=True)
class Condition:
    holds: bool
    witness: str | None = None

    def to_dict(self) -> dict:
        d = {"holds": self.holds}
        if self.witness is not None:
            d["witness"] = self.witness
        return d


@dataclass(frozen=True)
class AdmissibilityReport:
    cond_union: Condition
    cond_sinks: Condition
    cond_edges: Condition

    @property
    def admissible(self) -> bool:
        return self.cond_union.holds and self.cond_sinks.holds and self.cond_edges.holds

    def __bool__(self):
        return self.admissible

    def summary(self) -> str:
        failed = [f"{n} (witness {c.witness})" for n, c in self._named() if not c.holds]
        return "admissible" if not failed else "fails " + ", ".join(failed)

    def _named(self):
        return [("cond_union", self.cond_union), ("cond_sinks", self.cond_sinks),
                ("cond_edges", self.cond_edges)]

    def to_dict(self) -> dict:
        d = {name: c.to_dict() for name, c in self._named()}
        d["admissible"] = self.admissible
        return d


def check_admissible(d: Decomposition) -> AdmissibilityReport:
    host, f1, f2, meet = d.host, d.f1, d.f2, d.intersection
    pieces = {1: f1, 2: f2}

    joined = union(f1, f2)
    missing = sorted(host.vertices - joined.vertices) + sorted(host.edges - joined.edges)
    cond_union = Condition(not missing, missing[0] if missing else None)

    cond_sinks = Condition(True)
    for v in sorted(meet.vertices):
        if not meet.is_sink(v):
            continue
        bad = [i for i, f in pieces.items() if not f.is_sink(v)]
        if bad:
            cond_sinks = Condition(False, f"{v} (emits edges in F{bad[0]})")
            break

    cond_edges = Condition(True)
    for i, f in pieces.items():
        ranging_in = {e for e in f.edges if f.rng[e] in meet.vertices}
        diff = sorted(ranging_in ^ meet.edges)
        if diff:
            cond_edges = Condition(False, f"{diff[0]} (i={i})")
            break

    return AdmissibilityReport(cond_union, cond_sinks, cond_edges)


def from_vertex_complements(host: Graph, a, b) -> Decomposition:
    """The pair ``F1 = host/b``, ``F2 = host/a`` for hereditary ``a``, ``b``."""
    return Decomposition(host, quotient_graph(host, b, name="F1"),
                         quotient_graph(host, a, name="F2"))


def enumerate_admissible(e: Graph, bound: int = MAX_ENUM_VERTICES) -> list[Decomposition]:
    if len(e.vertices) > bound:
        raise GraphError(f"{len(e.vertices)} vertices exceeds the enumeration bound {bound}")
    sh = all_saturated_hereditary(e, bound)
    found: dict[tuple, Decomposition] = {}
    for a, b in itertools.product(sh, repeat=2):
        if a & b:
            continue
        d = from_vertex_complements(e, a, b)
        if check_admissible(d).admissible:
            found.setdefault(d.key(), d.canonical())
    return [found[k] for k in sorted(found)]


def brute_force_admissible(e: Graph) -> list[Decomposition]:
    """Filter every unordered pair of subgraphs whose union is ``e``; small graphs only."""
    subs = list(subgraphs(e))
    found: dict[tuple, Decomposition] = {}
    for i, f1 in enumerate(subs):
        for f2 in subs[i:]:
            if f1.vertices | f2.vertices != e.vertices or f1.edges | f2.edges != e.edges:
                continue
            d = Decomposition(e, f1, f2)
            if check_admissible(d).admissible:
                found.setdefault(d.key(), d.canonical())
    return [found[k] for k in sorted(found)]


def _require_admissible(d: Decomposition):
    report = check_admissible(d)
    if not report.admissible:
        raise NotAdmissible(report)


def verify_lemma_intersection(d: Decomposition) -> bool:
    _require_admissible(d)
    for f in (d.f1, d.f2):
        outside = f.vertices - d.shared
        if not is_hereditary(f, outside):
            return False
        if quotient_graph(f, outside) != d.intersection:
            return False
    return True


def verify_lemma_complement(d: Decomposition) -> bool:
    _require_admissible(d)
    e = d.host
    for f in (d.f1, d.f2):
        rest = e.vertices - f.vertices
        if not (is_hereditary(e, rest) and is_saturated(e, rest)):
            return False
        if quotient_graph(e, rest) != f:
            return False
        outside = f.vertices - d.shared
        if not (is_hereditary(f, outside) and is_saturated(f, outside)):
            return False
    return True


def parse_decomposition(text: str) -> Decomposition:
    host, subs = parse_graph_text(text)
    problems = validate_graph(host)
    if problems:
        raise GraphError("; ".join(problems))
    if len(subs) != 2:
        raise GraphError(f"a decomposition needs exactly two subgraph lines, found {len(subs)}")
    pieces = []
    for name, vs, es in subs:
        unknown = sorted(set(vs) - host.vertices)
        if unknown:
            raise GraphError(f"subgraph {name}: unknown vertices {unknown}")
        pieces.append(host.subgraph(vs, es, name))
    return Decomposition(host, *pieces)
