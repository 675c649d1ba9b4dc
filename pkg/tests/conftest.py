import itertools
import random

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from loadcolor import Graph, TwoColoring

settings.register_profile("default", max_examples=150, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def graphs(draw, min_n=0, max_n=10):
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph(range(1, n + 1), chosen)


@st.composite
def graph_and_coloring(draw, max_n=10):
    g = draw(graphs(max_n=max_n))
    red = draw(st.sets(st.sampled_from(sorted(g.vertices)))) if g.n else set()
    return g, TwoColoring.from_red(g.vertices, red)


def brute_mu(g):
    """Plain enumeration, independent of the numpy oracle."""
    vs = g.sorted_vertices()
    edges = g.edge_list()
    best = 0
    for bits in itertools.product((0, 1), repeat=len(vs)):
        red = {v for v, b in zip(vs, bits) if b}
        r = sum(1 for u, v in edges if u in red and v in red)
        b = sum(1 for u, v in edges if u not in red and v not in red)
        best = max(best, min(r, b))
    return best


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    return Graph(range(1, n + 1), [e for e in itertools.combinations(range(1, n + 1), 2) if rng.random() < p])
