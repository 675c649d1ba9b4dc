import random

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from loadcolor import (
    Graph,
    InvalidDecompositionError,
    LCPError,
    ParseError,
    TreeDecomposition,
    bounded_width_or_coloring,
    check_nice,
    emit_td,
    evaluate_coloring,
    make_nice,
    parse_td,
    validate,
    width,
)
from loadcolor.instances import elimination_decomposition, generate, random_decomposition
from loadcolor.treedecomp import FORGET, INTRODUCE, JOIN, LEAF

from conftest import graphs, random_graph


def slow_valid(g, td) -> bool:
    """Direct check of the three decomposition properties using networkx."""
    t = nx.Graph()
    t.add_nodes_from(td.bags)
    t.add_edges_from(td.tree)
    if not td.bags or not nx.is_tree(t):
        return False
    covered = set().union(*td.bags.values())
    if covered != set(g.vertices):
        return False
    for u, v in g.edge_list():
        if not any(u in b and v in b for b in td.bags.values()):
            return False
    for v in g:
        holding = [i for i, b in td.bags.items() if v in b]
        if not nx.is_connected(t.subgraph(holding)):
            return False
    return True


def p4():
    return Graph("abcd", [("a", "b"), ("b", "c"), ("c", "d")])


def p4_path_td():
    return TreeDecomposition.make({0: "ab", 1: "bc", 2: "cd"}, [(0, 1), (1, 2)])


def test_validate_examples():
    g = generate("grid", 3, 3)
    single = TreeDecomposition.make({0: g.vertices})
    assert validate(g, single).ok and width(single) == g.n - 1
    assert validate(p4(), p4_path_td()).ok and width(p4_path_td()) == 1
    c4 = generate("cycle", 4)
    bad = validate(c4, TreeDecomposition.make({0: {1, 2}, 1: {3, 4}}, [(0, 1)]))
    assert not bad.ok
    uncovered = {v.witness for v in bad.violations if v.kind == "uncovered-edge"}
    assert uncovered == {(2, 3), (1, 4)}


def test_validate_reports_each_kind():
    g = p4()
    disconnected = TreeDecomposition.make({0: "ab", 1: "bc", 2: "cd", 3: "a"}, [(0, 1), (1, 2), (2, 3)])
    assert "disconnected-vertex" in validate(g, disconnected).kinds()
    cyclic = TreeDecomposition.make({0: "ab", 1: "bc", 2: "cd"}, [(0, 1), (1, 2), (0, 2)])
    assert "tree" in validate(g, cyclic).kinds()
    forest = TreeDecomposition.make({0: "ab", 1: "bc", 2: "cd"}, [(0, 1)])
    assert "tree" in validate(g, forest).kinds()
    stray = TreeDecomposition.make({0: "abcdz"})
    assert "unknown-vertex" in validate(g, stray).kinds()
    missing = TreeDecomposition.make({0: "abc"})
    assert {"uncovered-vertex", "uncovered-edge"} <= validate(g, missing).kinds()


def test_width_examples():
    assert width(TreeDecomposition.make({0: range(5)})) == 4
    assert width(TreeDecomposition.make({0: "ab", 1: "bc"}, [(0, 1)])) == 1
    assert width(TreeDecomposition.make({0: "a", 1: "abc", 2: "ab"}, [(0, 1), (1, 2)])) == 2
    with pytest.raises(LCPError):
        width(TreeDecomposition.make({}))


def mutate(td, rng):
    """Random small edit that may or may not break validity."""
    bags = {i: set(b) for i, b in td.bags.items()}
    tree = set(td.tree)
    move = rng.randrange(4)
    node = rng.choice(sorted(bags))
    if move == 0 and bags[node]:
        bags[node].discard(rng.choice(sorted(bags[node])))
    elif move == 1 and tree:
        tree.discard(rng.choice(sorted(tree)))
    elif move == 2 and len(bags) > 1:
        a, b = rng.sample(sorted(bags), 2)
        tree.add((min(a, b), max(a, b)))
    else:
        pool = sorted(set().union(*bags.values()) or {0})
        bags[node].add(rng.choice(pool))
    return TreeDecomposition.make(bags, tree, td.root)


def test_validate_agrees_with_slow_validator():
    rng = random.Random(3)
    verdicts = set()
    for _ in range(400):
        g = random_graph(rng, rng.randint(1, 9), rng.random())
        td = random_decomposition(g, rng)
        for _ in range(rng.randint(0, 2)):
            td = mutate(td, rng)
        got = validate(g, td).ok
        assert got == slow_valid(g, td)
        verdicts.add(got)
    assert verdicts == {True, False}


def kind_counts(ntd):
    out = {LEAF: 0, INTRODUCE: 0, FORGET: 0, JOIN: 0}
    for k in ntd.kinds.values():
        out[k.kind] += 1
    return out


def test_make_nice_examples():
    k2 = Graph("ab", [("a", "b")])
    ntd = make_nice(k2, TreeDecomposition.make({0: "ab"}))
    assert validate(k2, ntd).ok and not check_nice(ntd)
    assert width(ntd) == 1 and len(ntd) <= 8
    ntd = make_nice(p4(), p4_path_td())
    assert validate(p4(), ntd).ok and not check_nice(ntd)
    assert width(ntd) == 1 and len(ntd) <= 16
    again = make_nice(p4(), ntd)
    assert validate(p4(), again).ok and not check_nice(again) and width(again) == 1


def test_make_nice_rejects_invalid():
    with pytest.raises(InvalidDecompositionError) as err:
        make_nice(generate("cycle", 4), TreeDecomposition.make({0: {1, 2}, 1: {3, 4}}, [(0, 1)]))
    assert "uncovered-edge" in err.value.report.kinds()


def test_make_nice_degenerate():
    one = Graph([7], [])
    ntd = make_nice(one, TreeDecomposition.make({0: {7}}))
    assert validate(one, ntd).ok and len(ntd) <= 4
    empty = Graph([], [])
    ntd = make_nice(empty, TreeDecomposition.make({0: set()}))
    assert len(ntd) == 1 and not check_nice(ntd)


def test_make_nice_hub_with_pendant_bags():
    # A large centre bag with many small child bags, each holding one private
    # vertex. Splicing a full introduce chain under every child overshoots 4n.
    t, leaves = 6, 10
    centre = list(range(t + 1))
    edges = [(a, b) for a in centre for b in centre if a < b]
    bags = {0: set(centre)}
    tree = []
    for i in range(leaves):
        v = t + 1 + i
        edges.append((0, v))
        bags[i + 1] = {0, v}
        tree.append((0, i + 1))
    g = Graph(range(t + 1 + leaves), edges)
    td = TreeDecomposition.make(bags, tree)
    ntd = make_nice(g, td)
    assert validate(g, ntd).ok and not check_nice(ntd)
    assert width(ntd) == width(td)
    assert len(ntd) <= 4 * g.n


@given(graphs(max_n=12), st.integers(0, 2**32 - 1))
def test_make_nice_properties(g, seed):
    td = random_decomposition(g, random.Random(seed))
    ntd = make_nice(g, td)
    assert validate(g, ntd).ok
    assert check_nice(ntd) == []
    assert width(ntd) == width(td)
    assert len(ntd) <= max(4 * g.n, 4)
    counts = kind_counts(ntd)
    assert counts[LEAF] == counts[JOIN] + 1


def test_nice_node_shapes():
    rng = random.Random(8)
    g = random_graph(rng, 12, 0.3)
    ntd = make_nice(g, random_decomposition(g, rng))
    for node, kind in ntd.kinds.items():
        kids = ntd.kids[node]
        bag = ntd.bags[node]
        if kind.kind == LEAF:
            assert kids == () or list(kids) == []
        elif kind.kind == INTRODUCE:
            (c,) = kids
            assert bag == ntd.bags[c] | {kind.vertex} and kind.vertex not in ntd.bags[c]
        elif kind.kind == FORGET:
            (c,) = kids
            assert bag == ntd.bags[c] - {kind.vertex} and kind.vertex in ntd.bags[c]
        else:
            assert all(ntd.bags[c] == bag for c in kids) and len(kids) == 2


def test_width_lemma_two_k4():
    g = generate("disjoint-cliques", 2, 4)
    out = bounded_width_or_coloring(g, 3)
    assert out.coloring is not None and len(out.grown) == 3
    prof = evaluate_coloring(g, out.coloring)
    assert prof.red_edges >= 3 and prof.blue_edges >= 3


def test_width_lemma_star():
    g = generate("star", 10)
    out = bounded_width_or_coloring(g, 2)
    assert out.decomposition is not None
    assert out.grown == {1, 2, 3}
    assert validate(g, out.decomposition).ok
    assert width(out.decomposition) == 3 <= 4


def test_width_lemma_small_components():
    g = generate("disjoint-cliques", 2, 3)
    out = bounded_width_or_coloring(g, 4)
    assert validate(g, out.decomposition).ok and width(out.decomposition) == 2


def test_width_lemma_edgeless_and_k0():
    g = Graph(range(4), [])
    out = bounded_width_or_coloring(g, 1)
    assert validate(g, out.decomposition).ok and width(out.decomposition) == 0
    with pytest.raises(LCPError):
        bounded_width_or_coloring(g, 0)


@given(graphs(max_n=16), st.integers(1, 5))
def test_width_lemma_bounds(g, k):
    out = bounded_width_or_coloring(g, k)
    if out.coloring is not None:
        prof = evaluate_coloring(g, out.coloring)
        assert prof.red_edges >= k and prof.blue_edges >= k
        return
    td = out.decomposition
    assert validate(g, td).ok
    assert width(td) <= 2 * k
    if out.grown:
        assert len(out.grown) <= k + 1
        for c in g.delete_vertices(out.grown).components():
            assert len(c) <= k


def test_td_roundtrip_byte_exact():
    text = "s td 3 2 4\nb 1 1 2\nb 2 2 3\nb 3 3 4\n1 2\n2 3\n"
    td = parse_td(text)
    assert emit_td(td, n=4) == text
    assert validate(generate("path", 4), td).ok


@given(graphs(min_n=1, max_n=10), st.integers(0, 1000))
def test_td_roundtrip_generated(g, seed):
    td = elimination_decomposition(g, random.Random(seed).sample(g.sorted_vertices(), g.n))
    text = emit_td(td, n=g.n)
    assert emit_td(parse_td(text), n=g.n) == text


@pytest.mark.parametrize(
    "text,line",
    [
        ("b 1 1\n", 1),
        ("s td 1 1 2\ns td 1 1 2\n", 2),
        ("s td 1 1 2\nb 1 3\n", 2),
        ("s td 1 1 2\nb 1 x\n", 2),
        ("s td 2 1 2\nb 1 1\nb 2 2\n1 5\n", 4),
        ("s td 2 1 2\nb 1 1\n", 0),
    ],
)
def test_td_parse_errors(text, line):
    with pytest.raises(ParseError) as err:
        parse_td(text)
    assert err.value.lineno == line
