import pytest
from hypothesis import given

from loadcolor import (
    Color,
    EvaluationError,
    Graph,
    GraphError,
    TwoColoring,
    deg_in_set,
    delete_vertices,
    evaluate_coloring,
)
from loadcolor.instances import generate

from conftest import graph_and_coloring, graphs


def test_k2_both_red():
    g = Graph("ab", [("a", "b")])
    prof = evaluate_coloring(g, TwoColoring.from_red("ab", "ab"))
    assert (prof.red_edges, prof.blue_edges, prof.mu) == (1, 0, 0)


def test_c6_split_profile():
    g = generate("cycle", 6)
    prof = evaluate_coloring(g, TwoColoring.from_red(g.vertices, {1, 2, 3}))
    assert prof.red_edges == 2
    assert prof.blue_edges == 2
    assert prof.red_load == 4
    assert prof.blue_load == 4
    assert prof.mu == 2
    assert prof.lam == 4


def test_p3_profile():
    g = Graph("abc", [("a", "b"), ("b", "c")])
    prof = evaluate_coloring(g, TwoColoring.from_red("abc", "a"))
    assert (prof.red_edges, prof.blue_edges, prof.mu) == (0, 1, 0)


def test_uncolored_vertex_is_named():
    g = generate("path", 3)
    with pytest.raises(EvaluationError, match="3"):
        evaluate_coloring(g, TwoColoring({1}, {2}))


def test_coloring_rejects_overlap():
    with pytest.raises(EvaluationError):
        TwoColoring({1, 2}, {2})


@pytest.mark.parametrize(
    "g,v,x,expected",
    [
        (generate("star", 5), 1, range(2, 7), 5),
        (generate("disjoint-cliques", 1, 4), 2, {2}, 0),
        (Graph("abcd", [("a", "b"), ("b", "c"), ("c", "d")]), "b", {"a", "d"}, 1),
    ],
)
def test_deg_in_set(g, v, x, expected):
    assert deg_in_set(g, v, x) == expected


def test_deg_in_set_unknown_vertex():
    with pytest.raises(GraphError):
        deg_in_set(generate("path", 3), 9, {1})


def test_delete_vertices_examples():
    k3 = delete_vertices(generate("disjoint-cliques", 1, 4), {4})
    assert (k3.n, k3.m) == (3, 3)
    p4 = delete_vertices(generate("path", 4), {2, 3})
    assert (p4.n, p4.m) == (2, 0)
    g = generate("grid", 2, 3)
    assert delete_vertices(g, set()) == g
    assert delete_vertices(g, {99}) == g


def test_graph_rejects_bad_input():
    with pytest.raises(GraphError):
        Graph([1], [(1, 1)])
    with pytest.raises(GraphError):
        Graph([1, 2], [(1, 2), (2, 1)])
    with pytest.raises(GraphError):
        Graph([1], [(1, 2)])


def test_components_and_ids_survive_deletion():
    g = generate("disjoint-cliques", 2, 3).delete_vertices({2})
    assert g.components() == [frozenset({1, 3}), frozenset({4, 5, 6})]
    assert g.has_edge(1, 3) and not g.has_edge(1, 2)


@given(graph_and_coloring())
def test_lambda_is_m_minus_mu(gc):
    g, f = gc
    prof = evaluate_coloring(g, f)
    assert prof.lam == g.m - prof.mu
    assert prof.red_load == g.m - prof.blue_edges
    assert prof.blue_load == g.m - prof.red_edges


@given(graph_and_coloring())
def test_edge_classes_partition(gc):
    g, f = gc
    prof = evaluate_coloring(g, f)
    bichromatic = sum(1 for u, v in g.edge_list() if f[u] is not f[v])
    assert prof.bichromatic_edges == bichromatic >= 0
    assert prof.red_edges + prof.blue_edges + bichromatic == g.m


@given(graph_and_coloring())
def test_mu_symmetric_under_swap(gc):
    g, f = gc
    assert evaluate_coloring(g, f).mu == evaluate_coloring(g, f.swapped()).mu
    assert f.swapped()[next(iter(g))] is f[next(iter(g))].other() if g.n else True


@given(graphs(), graphs(max_n=4))
def test_delete_removes_exactly_incident_edges(g, h):
    s = {v for v in h.vertices if v in g}
    out = g.delete_vertices(s)
    kept = {e for e in g.edges if not (e & s)}
    assert out.edges == kept
    assert out.vertices == g.vertices - s


def test_coloring_mapping_roundtrip():
    f = TwoColoring.from_mapping({1: Color.RED, 2: Color.BLUE})
    assert f.as_dict() == {1: Color.RED, 2: Color.BLUE}
    assert f.extended({3: Color.RED}).red == {1, 3}
