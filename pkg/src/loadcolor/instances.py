"""Graph text format, result records and instance generators."""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Optional

from .graph import Graph, LCPError, ParseError, TwoColoring, evaluate_coloring

FAMILIES = ("random-gnm", "path", "cycle", "star", "double-star", "disjoint-cliques", "grid")


def parse_graph(text: str) -> Graph:
    """Read `p lcp <n> <m>` / `e <u> <v>` text. Vertices are 1..n."""
    n = m = None
    edges = []
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        parts = raw.split()
        if not parts or parts[0] == "c":
            continue
        if parts[0] == "p":
            if n is not None:
                raise ParseError(lineno, "duplicate 'p' header")
            if len(parts) != 4 or parts[1] != "lcp":
                raise ParseError(lineno, "expected 'p lcp <n> <m>'")
            try:
                n, m = int(parts[2]), int(parts[3])
            except ValueError:
                raise ParseError(lineno, "non-integer in header") from None
            if n < 0 or m < 0:
                raise ParseError(lineno, "negative count in header")
        elif parts[0] == "e":
            if n is None:
                raise ParseError(lineno, "edge before 'p' header")
            if len(parts) != 3:
                raise ParseError(lineno, "expected 'e <u> <v>'")
            try:
                u, v = int(parts[1]), int(parts[2])
            except ValueError:
                raise ParseError(lineno, "non-integer vertex") from None
            if not (1 <= u <= n and 1 <= v <= n):
                raise ParseError(lineno, f"vertex out of range 1..{n}")
            if u == v:
                raise ParseError(lineno, f"self-loop at {u}")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise ParseError(lineno, f"duplicate edge {key[0]} {key[1]}")
            seen.add(key)
            edges.append(key)
        else:
            raise ParseError(lineno, f"unknown line type {parts[0]!r}")
    if n is None:
        raise ParseError(0, "missing 'p lcp' header")
    if len(edges) != m:
        raise ParseError(0, f"header declares {m} edges, found {len(edges)}")
    return Graph(range(1, n + 1), edges)


def emit_graph(g: Graph) -> str:
    if g.vertices != frozenset(range(1, g.n + 1)):
        raise LCPError("emit_graph needs vertices 1..n; relabel first")
    lines = [f"p lcp {g.n} {g.m}"]
    lines += [f"e {u} {v}" for u, v in g.edge_list()]
    return "\n".join(lines) + "\n"


def canonical_labels(g: Graph) -> dict:
    """Map sorted vertices to 1..n."""
    return {v: i for i, v in enumerate(g.sorted_vertices(), 1)}


@dataclass
class ResultRecord:
    verdict: Optional[bool]
    k: Optional[int]
    mu: Optional[int]
    red_vertices: list
    blue_vertices: list
    red_edges: int
    blue_edges: int
    decided_by: str
    stats: dict = field(default_factory=dict)

    KEYS = ("verdict", "k", "mu", "red_vertices", "blue_vertices", "red_edges", "blue_edges", "decided_by")

    @classmethod
    def build(cls, g: Graph, witness: Optional[TwoColoring], *, verdict=None, k=None, mu=None,
              decided_by: str = "", stats: Optional[dict] = None) -> "ResultRecord":
        red = blue = []
        re = be = 0
        if witness is not None:
            prof = evaluate_coloring(g, witness)
            red = sorted(witness.red & g.vertices)
            blue = sorted(witness.blue & g.vertices)
            re, be = prof.red_edges, prof.blue_edges
        return cls(verdict, k, mu, red, blue, re, be, decided_by, dict(stats or {}))

    def _values(self) -> dict:
        verdict = "" if self.verdict is None else ("yes" if self.verdict else "no")
        return {
            "verdict": verdict,
            "k": "" if self.k is None else str(self.k),
            "mu": "" if self.mu is None else str(self.mu),
            "red_vertices": self.red_vertices,
            "blue_vertices": self.blue_vertices,
            "red_edges": str(self.red_edges),
            "blue_edges": str(self.blue_edges),
            "decided_by": self.decided_by,
        }

    def to_text(self) -> str:
        out = []
        for key, val in self._values().items():
            if isinstance(val, list):
                val = " ".join(map(str, val))
            out.append(f"{key}: {val}".rstrip())
        for key, val in sorted(self.stats.items()):
            out.append(f"stat.{key}: {val}")
        return "\n".join(out) + "\n"

    def to_kv(self) -> str:
        out = []
        for key, val in self._values().items():
            if isinstance(val, list):
                val = ",".join(map(str, val))
            out.append(f"{key}={val}")
        return "\n".join(out) + "\n"


def parse_kv(text: str) -> dict:
    out = {}
    for line in text.splitlines():
        if "=" in line:
            key, val = line.split("=", 1)
            out[key] = val
    return out


def generate(family: str, *params: int, seed: int = 0) -> Graph:
    """Deterministic instance for a family name and integer parameters.

    random-gnm(n, m), path(n), cycle(n), star(leaves), double-star(a, b),
    disjoint-cliques(count, size), grid(rows, cols). Vertices are 1..n.
    """
    def need(count):
        if len(params) != count or any(p < 0 for p in params):
            raise LCPError(f"{family} takes {count} non-negative integer parameter(s), got {params}")

    if family == "random-gnm":
        need(2)
        n, m = params
        pairs = list(itertools.combinations(range(1, n + 1), 2))
        if m > len(pairs):
            raise LCPError(f"random-gnm: m={m} exceeds n(n-1)/2={len(pairs)}")
        return Graph(range(1, n + 1), random.Random(seed).sample(pairs, m))
    if family == "path":
        need(1)
        (n,) = params
        return Graph(range(1, n + 1), [(i, i + 1) for i in range(1, n)])
    if family == "cycle":
        need(1)
        (n,) = params
        if n < 3:
            raise LCPError("cycle needs n >= 3")
        return Graph(range(1, n + 1), [(i, i % n + 1) for i in range(1, n + 1)])
    if family == "star":
        need(1)
        (leaves,) = params
        return Graph(range(1, leaves + 2), [(1, i) for i in range(2, leaves + 2)])
    if family == "double-star":
        need(2)
        a, b = params
        edges = [(1, 2)]
        edges += [(1, 3 + i) for i in range(a)]
        edges += [(2, 3 + a + i) for i in range(b)]
        return Graph(range(1, a + b + 3), edges)
    if family == "disjoint-cliques":
        need(2)
        count, size = params
        edges = []
        for c in range(count):
            base = c * size
            edges += [(base + i, base + j) for i, j in itertools.combinations(range(1, size + 1), 2)]
        return Graph(range(1, count * size + 1), edges)
    if family == "grid":
        need(2)
        rows, cols = params

        def vid(r, c):
            return r * cols + c + 1

        edges = []
        for r in range(rows):
            for c in range(cols):
                if c + 1 < cols:
                    edges.append((vid(r, c), vid(r, c + 1)))
                if r + 1 < rows:
                    edges.append((vid(r, c), vid(r + 1, c)))
        return Graph(range(1, rows * cols + 1), edges)
    raise LCPError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")


def elimination_decomposition(g: Graph, order: list):
    """Tree decomposition from an elimination ordering of all vertices of `g`."""
    from .treedecomp import TreeDecomposition

    pos = {v: i for i, v in enumerate(order)}
    adj = {v: set(g.neighbors(v)) for v in g}
    bags = {}
    parent = {}
    for v in order:
        higher = {w for w in adj[v] if pos[w] > pos[v]}
        bags[pos[v]] = frozenset(higher | {v})
        for a in higher:
            adj[a] |= higher - {a}
        if higher:
            parent[pos[v]] = pos[min(higher, key=pos.get)]
    tree = [(i, p) for i, p in parent.items()]
    roots = sorted(set(bags) - set(parent))
    tree += [(a, b) for a, b in zip(roots, roots[1:])]
    if not bags:
        bags = {0: frozenset()}
    return TreeDecomposition.make(bags, tree, root=max(bags))


def random_decomposition(g: Graph, rng: random.Random):
    """A valid but deliberately untidy decomposition of `g`.

    Starts from a random elimination ordering, then hangs redundant bags off
    random nodes and pads bags with vertices from a neighboring bag.
    """
    from .treedecomp import TreeDecomposition

    order = g.sorted_vertices()
    rng.shuffle(order)
    td = elimination_decomposition(g, order)
    bags = {i: set(b) for i, b in td.bags.items()}
    tree = set(td.tree)
    limit = max(len(b) for b in bags.values())
    nxt = max(bags) + 1
    for _ in range(rng.randint(0, len(bags))):
        host = rng.choice(sorted(bags))
        sub = sorted(bags[host])
        bags[nxt] = set(rng.sample(sub, rng.randint(0, len(sub))))
        tree.add((host, nxt))
        nxt += 1
    for _ in range(rng.randint(0, 2 * len(bags))):
        a, b = rng.choice(sorted(tree)) if tree else (None, None)
        if a is None:
            break
        if rng.random() < 0.5:
            a, b = b, a
        extra = sorted(bags[b] - bags[a])
        if extra and len(bags[a]) < limit:
            bags[a].add(rng.choice(extra))
    return TreeDecomposition.make(bags, tree, root=rng.choice(sorted(bags)))
