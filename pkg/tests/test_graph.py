import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from graphpullback.graph import (
    Graph,
    GraphError,
    ParseError,
    all_saturated_hereditary,
    format_graph,
    hereditary_saturated_closure,
    intersection,
    is_hereditary,
    is_saturated,
    is_subgraph,
    parse_graph,
    paths_up_to,
    quotient_graph,
    sinks,
    to_dot,
    union,
    validate_graph,
)

from conftest import small_graphs
from oracles import brute_closure, count_paths_brute, hereditary_by_paths, saturated_literal


def test_validate(podles_graph):
    assert validate_graph(podles_graph) == []
    assert validate_graph(Graph.build("empty", [])) == []
    bad = Graph.build("bad", ["x"], {"e": ("x", "y")})
    problems = validate_graph(bad)
    assert problems == ["edge e: dangling range y"]


def test_validate_rejects_shared_vertex_edge_id():
    g = Graph.build("g", ["x"], {"x": ("x", "x")})
    assert any("duplicate id x" in p for p in validate_graph(g))


def test_sinks(podles_graph, loop_graph):
    assert sinks(podles_graph) == {"u1", "u2"}
    assert sinks(loop_graph) == frozenset()
    assert sinks(Graph.build("pt", ["v"])) == {"v"}


def test_is_subgraph(podles_graph):
    p = podles_graph
    assert is_subgraph(p.subgraph(["w", "u1"], ["loop", "a"]), p)
    assert is_subgraph(p, p)
    assert not is_subgraph(p.subgraph(["w"], ["a"]), p)


def test_union_intersection(podles_graph):
    p = podles_graph
    f1 = p.subgraph(["w", "u1"], ["loop", "a"])
    f2 = p.subgraph(["w", "u2"], ["loop", "b"])
    assert union(f1, f2, p) == p
    assert intersection(f1, f2, p) == p.subgraph(["w"], ["loop"])
    assert union(f1, f1) == f1 == intersection(f1, f1)
    g1 = p.subgraph(["w", "u1"], ["a"])
    g2 = p.subgraph(["w", "u2"], ["b"])
    assert intersection(g1, g2, p) == p.subgraph(["w"], [])


def test_union_rejects_foreign_graph(podles_graph, loop_graph):
    with pytest.raises(GraphError):
        union(podles_graph, loop_graph, podles_graph)


def test_hereditary(podles_graph):
    p = podles_graph
    assert is_hereditary(p, {"u1"})
    assert not is_hereditary(p, {"w"})
    assert is_hereditary(p, {"u1", "u2"})
    with pytest.raises(GraphError):
        is_hereditary(p, {"nope"})


def test_saturated(podles_graph):
    p = podles_graph
    assert is_saturated(p, {"u1", "u2"})
    assert is_saturated(p, set())
    chain = Graph.build("chain", ["x", "y"], {"e": ("x", "y"), "f": ("y", "y")})
    assert not is_saturated(chain, {"y"})
    with pytest.raises(GraphError):
        is_saturated(p, {"nope"})


def test_closure(podles_graph, arrow_graph):
    assert hereditary_saturated_closure(podles_graph, {"u1"}) == {"u1"}
    assert hereditary_saturated_closure(podles_graph, set()) == frozenset()
    assert hereditary_saturated_closure(arrow_graph, {"y"}) == {"x", "y"}


def test_all_saturated_hereditary(podles_graph, loop_graph):
    assert all_saturated_hereditary(podles_graph) == [
        frozenset(), {"u1"}, {"u2"}, {"u1", "u2"}, {"w", "u1", "u2"}]
    assert all_saturated_hereditary(loop_graph) == [frozenset(), {"z"}]
    assert all_saturated_hereditary(Graph.build("pt", ["v"])) == [frozenset(), {"v"}]
    with pytest.raises(GraphError):
        all_saturated_hereditary(podles_graph, bound=2)


def test_quotient_graph(podles_graph):
    p = podles_graph
    assert quotient_graph(p, {"u2"}) == p.subgraph(["w", "u1"], ["loop", "a"])
    assert quotient_graph(p, set()) == p
    assert quotient_graph(p, {"u1", "u2"}) == p.subgraph(["w"], ["loop"])
    with pytest.raises(GraphError):
        quotient_graph(p, {"w"})


def test_paths_up_to(podles_graph, loop_graph):
    assert [str(p) for p in paths_up_to(loop_graph, 2)] == ["z", "m", "m.m"]
    assert [str(p) for p in paths_up_to(podles_graph, 0)] == ["u1", "u2", "w"]
    assert len(paths_up_to(podles_graph, 1)) == 6
    with pytest.raises(GraphError):
        paths_up_to(podles_graph, -1)


def test_path_construction(podles_graph):
    p = podles_graph.path("loop", "a")
    assert (p.source, p.range, len(p)) == ("w", "u1", 2)
    with pytest.raises(GraphError):
        podles_graph.path("a", "loop")


# -- properties ------------------------------------------------------------------

@settings(max_examples=60, deadline=None)
@given(small_graphs(max_vertices=5), st.data())
def test_quotient_is_subgraph(g, data):
    h = data.draw(st.sets(st.sampled_from(sorted(g.vertices))))
    if not hereditary_by_paths(g, h):
        return
    assert is_subgraph(quotient_graph(g, h), g)


@settings(max_examples=60, deadline=None)
@given(small_graphs(max_vertices=5), st.data())
def test_hereditary_and_saturated_match_oracles(g, data):
    h = data.draw(st.sets(st.sampled_from(sorted(g.vertices))))
    assert is_hereditary(g, h) == hereditary_by_paths(g, h)
    assert is_saturated(g, h) == saturated_literal(g, h)


@settings(max_examples=60, deadline=None)
@given(small_graphs(max_vertices=6), st.data())
def test_closure_properties(g, data):
    vs = sorted(g.vertices)
    h = data.draw(st.sets(st.sampled_from(vs)))
    more = data.draw(st.sets(st.sampled_from(vs)))
    c = hereditary_saturated_closure(g, h)
    assert is_hereditary(g, c) and is_saturated(g, c)
    assert hereditary_saturated_closure(g, c) == c
    assert c <= hereditary_saturated_closure(g, set(h) | more)
    assert c == brute_closure(g, h)


@settings(max_examples=40, deadline=None)
@given(small_graphs(max_vertices=5))
def test_enumerated_sets_match_brute_force(g):
    from oracles import all_subsets
    expected = [s for s in all_subsets(g.vertices)
                if hereditary_by_paths(g, s) and saturated_literal(g, s)]
    assert set(all_saturated_hereditary(g)) == set(expected)


@settings(max_examples=60, deadline=None)
@given(small_graphs(max_vertices=4), st.data())
def test_lattice_laws(g, data):
    def sub():
        vs = data.draw(st.sets(st.sampled_from(sorted(g.vertices))))
        es = [e for e in g.edges if g.src[e] in vs and g.rng[e] in vs]
        keep = data.draw(st.sets(st.sampled_from(es))) if es else set()
        return g.subgraph(vs, keep)

    a, b, c = sub(), sub(), sub()
    assert union(a, b) == union(b, a)
    assert intersection(a, b) == intersection(b, a)
    assert union(union(a, b), c) == union(a, union(b, c))
    assert intersection(intersection(a, b), c) == intersection(a, intersection(b, c))
    assert union(a, a) == a == intersection(a, a)
    meet, join = intersection(a, b), union(a, b)
    assert is_subgraph(meet, a) and is_subgraph(meet, b)
    assert is_subgraph(a, join) and is_subgraph(b, join)


@settings(max_examples=40, deadline=None)
@given(small_graphs(max_vertices=4), st.integers(0, 3))
def test_paths_prefix_stability(g, n):
    longer = paths_up_to(g, n + 1)
    assert [p for p in longer if len(p) <= n] == paths_up_to(g, n)
    assert len(paths_up_to(g, n)) == count_paths_brute(g, n)


@settings(max_examples=40, deadline=None)
@given(small_graphs(max_vertices=5), st.data())
def test_sink_sets_are_hereditary(g, data):
    s = sorted(sinks(g))
    if s:
        assert is_hereditary(g, data.draw(st.sets(st.sampled_from(s))))


# -- text format and DOT -----------------------------------------------------------

def test_parse_and_format_round_trip(podles_graph):
    text = format_graph(podles_graph.renamed("P"))
    g = parse_graph(text)
    assert g == podles_graph and g.name == "P"
    assert parse_graph(format_graph(g)) == g


@settings(max_examples=40, deadline=None)
@given(small_graphs(max_vertices=5))
def test_round_trip_property(g):
    assert parse_graph(format_graph(g)) == g


def test_parse_comments_and_errors():
    g = parse_graph("# header\ngraph g  # name\nvertex x\nvertex y\nedge e x -> y\n")
    assert g.edges == {"e"} and g.src["e"] == "x"
    with pytest.raises(ParseError) as info:
        parse_graph("graph g\nvertex x\nedge e x y\n")
    assert (info.value.line, info.value.column) == (3, 1)
    with pytest.raises(ParseError) as info:
        parse_graph("vertex x\nvertex  x\n")
    assert (info.value.line, info.value.column) == (2, 9)
    with pytest.raises(ParseError):
        parse_graph("node x\n")


def test_dot(podles_graph):
    dot = to_dot(podles_graph)
    assert dot.startswith('digraph "P" {')
    assert '"w" -> "u1" [label="a"];' in dot
    assert dot.count("->") == 3
