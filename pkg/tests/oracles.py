"""Independent reference computations used to cross-check the library.

Nothing here calls the code paths under test beyond the plain ``Graph``
container and element data.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from graphpullback.graph import Graph


def reachable(g: Graph, v: str) -> set[str]:
    seen = {v}
    frontier = [v]
    while frontier:
        x = frontier.pop()
        for e in g.edges:
            if g.src[e] == x and g.rng[e] not in seen:
                seen.add(g.rng[e])
                frontier.append(g.rng[e])
    return seen


def hereditary_by_paths(g: Graph, h) -> bool:
    """Path formulation: everything reachable from ``h`` stays in ``h``."""
    return all(reachable(g, v) <= set(h) for v in h)


def saturated_literal(g: Graph, h) -> bool:
    for v in g.vertices - set(h):
        out = [e for e in g.edges if g.src[e] == v]
        if out and {g.rng[e] for e in out} <= set(h):
            return False
    return True


def all_subsets(xs):
    xs = sorted(xs)
    for r in range(len(xs) + 1):
        yield from (frozenset(c) for c in itertools.combinations(xs, r))


def brute_closure(g: Graph, h) -> frozenset:
    """Smallest hereditary saturated superset, by exhaustive search."""
    best = None
    for s in all_subsets(g.vertices):
        if set(h) <= s and hereditary_by_paths(g, s) and saturated_literal(g, s):
            if best is None or len(s) < len(best):
                best = s
    return best


def count_paths_brute(g: Graph, max_len: int) -> int:
    count = len(g.vertices)
    layer = [(e,) for e in g.edges]
    for _ in range(max_len):
        if not layer:
            break
        count += len(layer)
        layer = [p + (f,) for p in layer for f in g.edges if g.rng[p[-1]] == g.src[f]]
    return count


def paths_into(g: Graph, v: str) -> list[tuple]:
    """All paths ending at ``v`` in an acyclic graph, as (source, edges) pairs."""
    out = [(v, ())]
    frontier = [(v, ())]
    while frontier:
        start, edges = frontier.pop()
        for e in g.edges:
            if g.rng[e] == start:
                p = (g.src[e], (e,) + edges)
                out.append(p)
                frontier.append(p)
    return out


# -- faithful matrix representation of an acyclic graph's algebra -------------

class AcyclicRepresentation:
    """Represent the algebra of a finite acyclic graph on the space spanned by
    paths ending at sinks.  ``S_e`` prepends ``e`` and ``P_v`` keeps paths
    starting at ``v``.  The representation is faithful, so two elements are
    equal in the algebra iff their matrices agree.
    """

    def __init__(self, g: Graph):
        self.g = g
        sinks = [v for v in g.vertices if not any(g.src[e] == v for e in g.edges)]
        self.basis = sorted(p for v in sinks for p in paths_into(g, v))
        self.index = {p: i for i, p in enumerate(self.basis)}

    def _edge_map(self, e: str) -> dict:
        """Sparse matrix as {(row, col): value}."""
        g = self.g
        mat = {}
        for (start, edges), j in self.index.items():
            if start == g.rng[e]:
                mat[(self.index[(g.src[e], (e,) + edges)], j)] = Fraction(1)
        return mat

    def _vertex_map(self, v: str) -> dict:
        return {(j, j): Fraction(1) for (start, _), j in self.index.items() if start == v}

    @staticmethod
    def _mul(a: dict, b: dict) -> dict:
        out: dict = {}
        for (i, k), x in a.items():
            for (k2, j), y in b.items():
                if k == k2:
                    out[(i, j)] = out.get((i, j), 0) + x * y
        return {k: v for k, v in out.items() if v}

    @staticmethod
    def _transpose(a: dict) -> dict:
        return {(j, i): v for (i, j), v in a.items()}

    def path(self, source: str, edges: tuple) -> dict:
        if not edges:
            return self._vertex_map(source)
        mat = self._edge_map(edges[0])
        for e in edges[1:]:
            mat = self._mul(mat, self._edge_map(e))
        return mat

    def element(self, x) -> dict:
        total: dict = {}
        for m, c in x.terms.items():
            a = self.path(m.alpha.source, m.alpha.edges)
            b = self._transpose(self.path(m.beta.source, m.beta.edges))
            for k, v in self._mul(a, b).items():
                total[k] = total.get(k, 0) + c * v
        return {k: v for k, v in total.items() if v}


# -- random graphs ---------------------------------------------------------------

def random_graph(rand: random.Random, max_vertices: int, max_edges: int,
                 acyclic: bool = False, total_cap: int | None = None) -> Graph:
    n = rand.randint(1, max_vertices)
    vs = [f"v{i}" for i in range(n)]
    budget = max_edges if total_cap is None else min(max_edges, total_cap - n)
    m = rand.randint(0, max(budget, 0))
    edges = {}
    for k in range(m):
        if acyclic:
            if n < 2:
                break
            i, j = sorted(rand.sample(range(n), 2))
        else:
            i, j = rand.randrange(n), rand.randrange(n)
        edges[f"e{k}"] = (vs[i], vs[j])
    return Graph.build(f"rand{n}_{len(edges)}", vs, edges)


# -- admissible decompositions by exhaustive search ---------------------------------

def all_subgraph_pairs_covering(g: Graph):
    """Unordered pairs of subgraphs (as (vertices, edges) frozensets) whose union is ``g``."""
    subs = []
    for vs in all_subsets(g.vertices):
        inside = [e for e in g.edges if g.src[e] in vs and g.rng[e] in vs]
        for es in all_subsets(inside):
            subs.append((vs, es))
    for i, (v1, e1) in enumerate(subs):
        for v2, e2 in subs[i:]:
            if v1 | v2 == g.vertices and e1 | e2 == g.edges:
                yield (v1, e1), (v2, e2)


def admissible_literal(g: Graph, f1, f2) -> bool:
    (v1, e1), (v2, e2) = f1, f2
    if v1 | v2 != g.vertices or e1 | e2 != g.edges:
        return False
    shared_v, shared_e = v1 & v2, e1 & e2

    def emits(v, es):
        return any(g.src[e] == v for e in es)

    for v in shared_v:
        if not emits(v, shared_e) and (emits(v, e1) or emits(v, e2)):
            return False
    for es in (e1, e2):
        if shared_e != {e for e in es if g.rng[e] in shared_v}:
            return False
    return True


def admissible_pairs_brute(g: Graph) -> set:
    """Admissible unordered pairs, keyed like ``Decomposition.key``."""
    def key(f):
        return (tuple(sorted(f[0])), tuple(sorted(f[1])))

    return {tuple(sorted((key(a), key(b))))
            for a, b in all_subgraph_pairs_covering(g) if admissible_literal(g, a, b)}
