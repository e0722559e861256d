"""Example graphs from noncommutative topology with their natural decompositions.

Naming conventions (stable, used by fixtures):

* Podles sphere: vertices ``w, u1, u2``; edges ``loop`` (w->w), ``a`` (w->u1), ``b`` (w->u2).
* Even sphere ``sphere_even(n)``: loop vertices ``v1..vn`` with loops ``loop_i``,
  chain edges ``chain_i_j`` (vi->vj, j = i+1), sinks ``sp`` and ``sm`` fed by
  ``to_sp_i`` and ``to_sm_i``.  Each n follows the n = 3 pattern (consecutive
  chain edges only), and every instance is validated by the admissibility checker.
* Lens space ``lens(l, k)``: apex ``v0`` with ``loop_0``, bottom vertices
  ``v1..vl`` with ``loop_i`` and apex edges ``down_i`` (v0->vi).  ``F1`` holds
  ``k`` bottom vertices; the smaller of the two pieces uses ``v1..vm``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .decomposition import Decomposition, check_admissible
from .graph import Graph, GraphError


@dataclass(frozen=True)
class NamedExample:
    key: str
    graph: Graph
    decomposition: Decomposition
    description: str


def _example(key, graph, f1, f2, description) -> NamedExample:
    d = Decomposition(graph, f1, f2)
    report = check_admissible(d)
    if not report.admissible:
        raise GraphError(f"corpus example {key} is not admissible: {report.summary()}")
    return NamedExample(key, graph, d, description)


def podles() -> NamedExample:
    g = Graph.build("podles", ["w", "u1", "u2"],
                    {"loop": ("w", "w"), "a": ("w", "u1"), "b": ("w", "u2")})
    return _example("podles", g,
                    g.subgraph(["w", "u1"], ["loop", "a"], "F1"),
                    g.subgraph(["w", "u2"], ["loop", "b"], "F2"),
                    "generic Podles quantum sphere glued from two discs over a circle")


def sphere_even(n: int) -> NamedExample:
    if n < 1:
        raise GraphError("sphere_even needs n >= 1")
    loops = [f"v{i}" for i in range(1, n + 1)]
    edges = {}
    for i, v in enumerate(loops, start=1):
        edges[f"loop_{i}"] = (v, v)
        if i < n:
            edges[f"chain_{i}_{i + 1}"] = (v, f"v{i + 1}")
        edges[f"to_sp_{i}"] = (v, "sp")
        edges[f"to_sm_{i}"] = (v, "sm")
    g = Graph.build(f"sphere{2 * n}", loops + ["sp", "sm"], edges)
    inner = [e for e in edges if not e.startswith("to_")]
    f1 = g.subgraph(loops + ["sp"], inner + [e for e in edges if e.startswith("to_sp")], "F1")
    f2 = g.subgraph(loops + ["sm"], inner + [e for e in edges if e.startswith("to_sm")], "F2")
    return _example(f"sphere-{n}", g, f1, f2,
                    f"even quantum sphere S^{2 * n}_q as two quantum balls over S^{2 * n - 1}_q")


def lens(l: int, k: int) -> NamedExample:
    if l < 2 or not 1 <= k <= l - 1:
        raise GraphError("lens needs l >= 2 and 1 <= k <= l-1")
    bottom = [f"v{i}" for i in range(1, l + 1)]
    edges = {"loop_0": ("v0", "v0")}
    for i, v in enumerate(bottom, start=1):
        edges[f"loop_{i}"] = (v, v)
        edges[f"down_{i}"] = ("v0", v)

    def piece(indices, name):
        vs = ["v0"] + [f"v{i}" for i in indices]
        es = ["loop_0"] + [f"{kind}_{i}" for i in indices for kind in ("loop", "down")]
        return g.subgraph(vs, es, name)

    g = Graph.build(f"lens{l}", ["v0"] + bottom, edges)
    # the smaller piece always takes the first bottom vertices, so that
    # lens(l, k) and lens(l, l - k) give the same unordered pair
    m = min(k, l - k)
    small, large = range(1, m + 1), range(m + 1, l + 1)
    first, second = (small, large) if k == m else (large, small)
    return _example(f"lens-{l}-{k}", g, piece(first, "F1"), piece(second, "F2"),
                    f"quantum lens space L^3_q({l};1,{l}) split into pieces L^3_{k}, L^3_{l - k}")


def default_keys() -> list[str]:
    keys = ["podles"] + [f"sphere-{n}" for n in (1, 2, 3)]
    keys += [f"lens-{l}-{k}" for l in range(2, 6) for k in range(1, l)]
    return keys


def get(key: str) -> NamedExample:
    if key == "podles":
        return podles()
    m = re.fullmatch(r"sphere-(\d+)", key)
    if m:
        return sphere_even(int(m.group(1)))
    m = re.fullmatch(r"lens-(\d+)-(\d+)", key)
    if m:
        return lens(int(m.group(1)), int(m.group(2)))
    raise KeyError(f"unknown corpus key {key!r}")


def all_examples() -> list[NamedExample]:
    return [get(k) for k in default_keys()]
