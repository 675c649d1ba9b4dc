"""Simple undirected graphs, red/blue colorings and their load profiles.

Vertex ids are opaque hashables that must be mutually orderable (ints or
strings); they survive deletions unchanged so results computed on a reduced
graph refer back to the input.
"""
from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from typing import Hashable, Iterable, Iterator, Mapping

Vertex = Hashable


class LCPError(Exception):
    """Base class for all errors raised by this package."""


class GraphError(LCPError):
    pass


class EvaluationError(LCPError):
    pass


class ParseError(LCPError):
    def __init__(self, lineno: int, message: str):
        where = f"line {lineno}: " if lineno else ""
        super().__init__(where + message)
        self.lineno = lineno


class Color(enum.Enum):
    RED = "red"
    BLUE = "blue"

    def other(self) -> "Color":
        return Color.BLUE if self is Color.RED else Color.RED


class Graph:
    """Immutable simple undirected graph.

    Adjacency is a dict of frozensets, so neighbor iteration is O(deg) and
    edge membership is O(1).
    """

    __slots__ = ("_adj", "_m")

    def __init__(self, vertices: Iterable[Vertex] = (), edges: Iterable[tuple[Vertex, Vertex]] = ()):
        adj: dict[Vertex, set] = {v: set() for v in vertices}
        m = 0
        for u, v in edges:
            if u == v:
                raise GraphError(f"self-loop at vertex {u!r}")
            if u not in adj or v not in adj:
                missing = u if u not in adj else v
                raise GraphError(f"edge ({u!r}, {v!r}) uses unknown vertex {missing!r}")
            if v in adj[u]:
                raise GraphError(f"parallel edge ({u!r}, {v!r})")
            adj[u].add(v)
            adj[v].add(u)
            m += 1
        self._adj = {v: frozenset(nb) for v, nb in adj.items()}
        self._m = m

    @classmethod
    def from_edges(cls, edges: Iterable[tuple[Vertex, Vertex]], vertices: Iterable[Vertex] = ()) -> "Graph":
        """Build a graph whose vertex set is `vertices` plus every edge endpoint."""
        edges = list(edges)
        vs = dict.fromkeys(vertices)
        for u, v in edges:
            vs.setdefault(u)
            vs.setdefault(v)
        return cls(vs, edges)

    @classmethod
    def _from_adj(cls, adj: dict[Vertex, frozenset], m: int) -> "Graph":
        g = cls.__new__(cls)
        g._adj = adj
        g._m = m
        return g

    @property
    def vertices(self) -> frozenset:
        return frozenset(self._adj)

    @property
    def edges(self) -> frozenset:
        return frozenset(frozenset((u, v)) for u, v in self.edge_list())

    @property
    def n(self) -> int:
        return len(self._adj)

    @property
    def m(self) -> int:
        return self._m

    def __contains__(self, v: Vertex) -> bool:
        return v in self._adj

    def __iter__(self) -> Iterator[Vertex]:
        return iter(self._adj)

    def __len__(self) -> int:
        return len(self._adj)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._adj == other._adj

    def __hash__(self) -> int:
        return hash((self.vertices, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    def sorted_vertices(self) -> list:
        return sorted(self._adj)

    def edge_list(self) -> list[tuple]:
        """Edges as (u, v) with u < v, sorted."""
        return sorted((u, v) for u, nb in self._adj.items() for v in nb if u < v)

    def neighbors(self, v: Vertex) -> frozenset:
        try:
            return self._adj[v]
        except KeyError:
            raise GraphError(f"vertex {v!r} not in graph") from None

    def degree(self, v: Vertex) -> int:
        return len(self.neighbors(v))

    def max_degree(self) -> int:
        return max((len(nb) for nb in self._adj.values()), default=0)

    def has_edge(self, u: Vertex, v: Vertex) -> bool:
        nb = self._adj.get(u)
        return nb is not None and v in nb

    def deg_in_set(self, v: Vertex, x: Iterable[Vertex]) -> int:
        nb = self.neighbors(v)
        if not isinstance(x, (set, frozenset)):
            x = set(x)
        return len(nb & x)

    def edges_within(self, s: Iterable[Vertex]) -> int:
        """Number of edges with both endpoints in `s`."""
        s = s if isinstance(s, (set, frozenset)) else set(s)
        return sum(len(self._adj[v] & s) for v in s if v in self._adj) // 2

    def delete_vertices(self, s: Iterable[Vertex]) -> "Graph":
        s = frozenset(s)
        if not s & self._adj.keys():
            return self
        adj = {}
        m2 = 0
        for v, nb in self._adj.items():
            if v in s:
                continue
            kept = nb - s
            adj[v] = kept
            m2 += len(kept)
        return Graph._from_adj(adj, m2 // 2)

    def induced(self, keep: Iterable[Vertex]) -> "Graph":
        keep = frozenset(keep)
        return self.delete_vertices(self._adj.keys() - keep)

    def components(self) -> list[frozenset]:
        """Connected components, ordered by their smallest vertex."""
        seen: set = set()
        comps = []
        for start in self.sorted_vertices():
            if start in seen:
                continue
            comp = {start}
            queue = deque([start])
            while queue:
                u = queue.popleft()
                for w in self._adj[u]:
                    if w not in comp:
                        comp.add(w)
                        queue.append(w)
            seen |= comp
            comps.append(frozenset(comp))
        return comps

    def relabel(self, mapping: Mapping[Vertex, Vertex]) -> "Graph":
        return Graph((mapping[v] for v in self._adj), ((mapping[u], mapping[v]) for u, v in self.edge_list()))

    def disjoint_union(self, other: "Graph") -> "Graph":
        if self._adj.keys() & other._adj.keys():
            raise GraphError("disjoint_union needs disjoint vertex sets")
        return Graph._from_adj({**self._adj, **other._adj}, self._m + other._m)


def deg_in_set(g: Graph, v: Vertex, x: Iterable[Vertex]) -> int:
    return g.deg_in_set(v, x)


def delete_vertices(g: Graph, s: Iterable[Vertex]) -> Graph:
    return g.delete_vertices(s)


@dataclass(frozen=True)
class TwoColoring:
    """A red/blue assignment stored as two disjoint vertex sets."""

    red: frozenset
    blue: frozenset

    def __post_init__(self):
        object.__setattr__(self, "red", frozenset(self.red))
        object.__setattr__(self, "blue", frozenset(self.blue))
        both = self.red & self.blue
        if both:
            raise EvaluationError(f"vertex {min(both)!r} colored both red and blue")

    @classmethod
    def from_red(cls, vertices: Iterable[Vertex], red: Iterable[Vertex]) -> "TwoColoring":
        red = frozenset(red)
        return cls(red, frozenset(vertices) - red)

    @classmethod
    def from_mapping(cls, assignment: Mapping[Vertex, Color]) -> "TwoColoring":
        red = {v for v, c in assignment.items() if c is Color.RED}
        return cls(red, set(assignment) - red)

    def __getitem__(self, v: Vertex) -> Color:
        if v in self.red:
            return Color.RED
        if v in self.blue:
            return Color.BLUE
        raise KeyError(v)

    def __contains__(self, v: Vertex) -> bool:
        return v in self.red or v in self.blue

    def __len__(self) -> int:
        return len(self.red) + len(self.blue)

    def get(self, v: Vertex, default=None):
        try:
            return self[v]
        except KeyError:
            return default

    def as_dict(self) -> dict:
        return {**{v: Color.RED for v in self.red}, **{v: Color.BLUE for v in self.blue}}

    def swapped(self) -> "TwoColoring":
        return TwoColoring(self.blue, self.red)

    def restricted(self, vertices: Iterable[Vertex]) -> "TwoColoring":
        vs = frozenset(vertices)
        return TwoColoring(self.red & vs, self.blue & vs)

    def extended(self, assignment: Mapping[Vertex, Color]) -> "TwoColoring":
        red = set(self.red)
        blue = set(self.blue)
        for v, c in assignment.items():
            red.discard(v)
            blue.discard(v)
            (red if c is Color.RED else blue).add(v)
        return TwoColoring(red, blue)


@dataclass(frozen=True)
class LoadProfile:
    red_edges: int
    blue_edges: int
    red_load: int
    blue_load: int
    mu: int
    lam: int

    @property
    def m(self) -> int:
        return self.red_load + self.blue_edges

    @property
    def bichromatic_edges(self) -> int:
        return self.red_load - self.red_edges


def evaluate_coloring(g: Graph, f: TwoColoring) -> LoadProfile:
    """Count red, blue and loaded edges of `g` under `f`.

    Raises EvaluationError naming the first (smallest) uncolored vertex.
    """
    missing = [v for v in g if v not in f]
    if missing:
        raise EvaluationError(f"vertex {min(missing)!r} is not colored")
    red = f.red
    red_edges = blue_edges = 0
    for u, v in g.edge_list():
        ur, vr = u in red, v in red
        if ur and vr:
            red_edges += 1
        elif not ur and not vr:
            blue_edges += 1
    m = g.m
    red_load = m - blue_edges
    blue_load = m - red_edges
    return LoadProfile(
        red_edges=red_edges,
        blue_edges=blue_edges,
        red_load=red_load,
        blue_load=blue_load,
        mu=min(red_edges, blue_edges),
        lam=max(red_load, blue_load),
    )
