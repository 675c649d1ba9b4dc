"""Tree decompositions: validation, nice form, the 2k-width constructor, and text I/O."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional

from .graph import Graph, LCPError, ParseError, TwoColoring

LEAF, INTRODUCE, FORGET, JOIN = "leaf", "introduce", "forget", "join"


class InvalidDecompositionError(LCPError):
    def __init__(self, report: "ValidationReport"):
        super().__init__("invalid tree decomposition: " + "; ".join(str(v) for v in report.violations))
        self.report = report


@dataclass(frozen=True)
class TreeDecomposition:
    bags: Mapping[int, frozenset]
    tree: frozenset  # of (a, b) node pairs, a < b
    root: int

    @classmethod
    def make(cls, bags: Mapping, tree: Iterable = (), root: Optional[int] = None) -> "TreeDecomposition":
        bags = {i: frozenset(b) for i, b in bags.items()}
        edges = frozenset(tuple(sorted(e)) for e in tree)
        if root is None:
            root = min(bags) if bags else 0
        return cls(bags, edges, root)

    @property
    def nodes(self) -> list[int]:
        return sorted(self.bags)

    def __len__(self) -> int:
        return len(self.bags)

    def width(self) -> int:
        return width(self)

    def adjacency(self) -> dict[int, list[int]]:
        adj = {i: [] for i in self.bags}
        for a, b in sorted(self.tree):
            adj[a].append(b)
            adj[b].append(a)
        return adj

    def children(self) -> dict[int, list[int]]:
        """Children lists when the tree hangs from `root` (BFS order)."""
        adj = self.adjacency()
        kids = {i: [] for i in self.bags}
        seen = {self.root}
        queue = deque([self.root])
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    kids[u].append(w)
                    queue.append(w)
        return kids


@dataclass(frozen=True)
class NodeKind:
    kind: str
    vertex: object = None

    def __str__(self) -> str:
        return self.kind if self.vertex is None else f"{self.kind}({self.vertex})"


@dataclass(frozen=True)
class NiceTreeDecomposition(TreeDecomposition):
    kinds: Mapping[int, NodeKind] = field(default_factory=dict)
    kids: Mapping[int, tuple] = field(default_factory=dict)

    def postorder(self) -> list[int]:
        order = []
        stack = [(self.root, False)]
        while stack:
            node, done = stack.pop()
            if done:
                order.append(node)
                continue
            stack.append((node, True))
            for c in reversed(self.kids[node]):
                stack.append((c, False))
        return order


@dataclass(frozen=True)
class Violation:
    kind: str
    witness: object

    def __str__(self) -> str:
        return f"{self.kind}: {self.witness!r}"


@dataclass
class ValidationReport:
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def kinds(self) -> set:
        return {v.kind for v in self.violations}


def _tree_problems(td: TreeDecomposition) -> list[Violation]:
    out = []
    nodes = set(td.bags)
    if not nodes:
        return [Violation("tree", "no bags")]
    for a, b in td.tree:
        if a not in nodes or b not in nodes:
            out.append(Violation("tree", f"edge ({a}, {b}) names an unknown node"))
    if out:
        return out
    if td.root not in nodes:
        out.append(Violation("tree", f"root {td.root} is not a node"))
    if len(td.tree) != len(nodes) - 1:
        out.append(Violation("tree", f"{len(td.tree)} edges for {len(nodes)} nodes"))
    adj = td.adjacency()
    start = next(iter(sorted(nodes)))
    seen = {start}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for w in adj[u]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    if seen != nodes:
        out.append(Violation("tree", f"disconnected; unreachable nodes {sorted(nodes - seen)}"))
    return out


def validate(g: Graph, td: TreeDecomposition) -> ValidationReport:
    """Check the three tree-decomposition properties plus tree shape.

    Every violation carries a concrete witness.
    """
    report = ValidationReport(_tree_problems(td))
    tree_ok = report.ok

    occ: dict = {}
    for i, bag in td.bags.items():
        for v in bag:
            occ.setdefault(v, set()).add(i)
    for v in _sorted(set(occ) - g.vertices):
        report.violations.append(Violation("unknown-vertex", v))
    for v in g.sorted_vertices():
        if v not in occ:
            report.violations.append(Violation("uncovered-vertex", v))
    for u, v in g.edge_list():
        if not (occ.get(u, set()) & occ.get(v, set())):
            report.violations.append(Violation("uncovered-edge", (u, v)))
    if tree_ok:
        adj = td.adjacency()
        for v in _sorted(occ):
            where = occ[v]
            start = min(where)
            seen = {start}
            queue = deque([start])
            while queue:
                u = queue.popleft()
                for w in adj[u]:
                    if w in where and w not in seen:
                        seen.add(w)
                        queue.append(w)
            if seen != where:
                report.violations.append(Violation("disconnected-vertex", (v, tuple(sorted(where)))))
    return report


def _sorted(items) -> list:
    try:
        return sorted(items)
    except TypeError:
        return sorted(items, key=repr)


def width(td: TreeDecomposition) -> int:
    if not td.bags:
        raise LCPError("width of an empty decomposition is undefined")
    return max(len(b) for b in td.bags.values()) - 1


def check_nice(ntd: NiceTreeDecomposition) -> list[Violation]:
    """Structural check of every node against its declared kind."""
    out = []
    for i in ntd.nodes:
        kind = ntd.kinds.get(i)
        kids = tuple(ntd.kids.get(i, ()))
        bag = ntd.bags[i]
        if kind is None:
            out.append(Violation("kind", f"node {i} has no kind"))
            continue
        if kind.kind == LEAF:
            ok = not kids
        elif kind.kind == INTRODUCE:
            ok = len(kids) == 1 and kind.vertex not in ntd.bags[kids[0]] and bag == ntd.bags[kids[0]] | {kind.vertex}
        elif kind.kind == FORGET:
            ok = len(kids) == 1 and kind.vertex in ntd.bags[kids[0]] and bag == ntd.bags[kids[0]] - {kind.vertex}
        elif kind.kind == JOIN:
            ok = len(kids) == 2 and ntd.bags[kids[0]] == bag == ntd.bags[kids[1]]
        else:
            ok = False
        if not ok:
            out.append(Violation("kind", f"node {i} fails {kind}"))
    # kids must agree with the undirected tree rooted at root
    rooted = TreeDecomposition.children(ntd)
    for i in ntd.nodes:
        if sorted(rooted.get(i, [])) != sorted(ntd.kids.get(i, ())):
            out.append(Violation("kind", f"node {i}: children disagree with the tree"))
    return out


def _smooth(td: TreeDecomposition) -> tuple[dict, dict, int]:
    """Equal-size bags with neighbors differing in exactly one vertex.

    Returns (bags, adjacency, root). Width is unchanged; the number of bags
    drops to at most n - width.
    """
    bags = {i: set(b) for i, b in td.bags.items()}
    adj = {i: set() for i in bags}
    for a, b in td.tree:
        adj[a].add(b)
        adj[b].add(a)
    full = max(len(b) for b in bags.values())
    root = td.root

    def contract(i, j):
        # merge i into j (bags[i] <= bags[j])
        nonlocal root
        for w in adj.pop(i):
            adj[w].discard(i)
            if w != j:
                adj[w].add(j)
                adj[j].add(w)
        del bags[i]
        if root == i:
            root = j

    def contract_all(seeds):
        work = deque(seeds)
        while work:
            i = work.popleft()
            if i not in bags:
                continue
            for j in sorted(adj[i]):
                if bags[i] <= bags[j]:
                    contract(i, j)
                    work.append(j)
                    break
                if bags[j] <= bags[i]:
                    contract(j, i)
                    work.append(i)
                    break

    contract_all(sorted(bags))
    while True:
        small = next((i for i in sorted(bags) if len(bags[i]) < full), None)
        if small is None:
            break
        j = min(adj[small])
        bags[small].add(min(bags[j] - bags[small]))
        contract_all([small])

    next_id = max(bags) + 1
    for a in sorted(bags):
        for b in sorted(adj[a]):
            if a > b or len(bags[a] & bags[b]) >= full - 1:
                continue
            prev = a
            cur = set(bags[a])
            adj[a].discard(b)
            adj[b].discard(a)
            while len(cur & bags[b]) < full - 1:
                cur = (cur - {min(cur - bags[b])}) | {min(bags[b] - cur)}
                bags[next_id] = set(cur)
                adj[next_id] = {prev}
                adj[prev].add(next_id)
                prev = next_id
                next_id += 1
            adj[prev].add(b)
            adj[b].add(prev)
    return bags, adj, root


def make_nice(g: Graph, td: TreeDecomposition) -> NiceTreeDecomposition:
    """Convert a valid decomposition into a nice one of the same width.

    The input is first smoothed, so the result has at most 4n - 3 nodes
    (a single node when n <= 1). Leaf bags may hold several vertices and the
    root bag is not forced empty.
    """
    report = validate(g, td)
    if not report.ok:
        raise InvalidDecompositionError(report)
    if width(td) < 0:
        empty = frozenset()
        return NiceTreeDecomposition({0: empty}, frozenset(), 0, {0: NodeKind(LEAF)}, {0: ()})

    sbags, sadj, sroot = _smooth(td)
    bags: dict = {}
    kinds: dict = {}
    kids: dict = {}
    counter = [0]

    def new(bag, kind, children=()):
        i = counter[0]
        counter[0] += 1
        bags[i] = frozenset(bag)
        kinds[i] = kind
        kids[i] = tuple(children)
        return i

    # children of the smoothed tree, rooted at sroot
    order = []
    parent = {sroot: None}
    stack = [sroot]
    while stack:
        u = stack.pop()
        order.append(u)
        for w in sorted(sadj[u], reverse=True):
            if w not in parent:
                parent[w] = u
                stack.append(w)

    top: dict = {}  # smoothed node -> nice node whose bag is that smoothed bag
    for u in reversed(order):
        xu = sbags[u]
        tops = []
        for c in sorted(w for w in sadj[u] if parent.get(w) == u):
            xc = sbags[c]
            (gone,) = xc - xu
            (added,) = xu - xc
            f = new(xc - {gone}, NodeKind(FORGET, gone), [top.pop(c)])
            tops.append(new(xu, NodeKind(INTRODUCE, added), [f]))
        if not tops:
            top[u] = new(xu, NodeKind(LEAF))
            continue
        acc = tops[0]
        for t in tops[1:]:
            acc = new(xu, NodeKind(JOIN), [acc, t])
        top[u] = acc

    root = top[sroot]
    tree = frozenset((min(i, c), max(i, c)) for i, cs in kids.items() for c in cs)
    return NiceTreeDecomposition(bags, tree, root, kinds, kids)


@dataclass(frozen=True)
class WidthOrColoring:
    decomposition: Optional[TreeDecomposition] = None
    coloring: Optional[TwoColoring] = None
    grown: frozenset = frozenset()

    def __post_init__(self):
        if (self.decomposition is None) == (self.coloring is None):
            raise LCPError("exactly one of decomposition / coloring must be set")


def _path_decomposition(bags: list) -> TreeDecomposition:
    if not bags:
        bags = [frozenset()]
    # rooting mid-path gives the nice form a join and halves its depth
    return TreeDecomposition.make(dict(enumerate(bags)), [(i, i + 1) for i in range(len(bags) - 1)], len(bags) // 2)


def bounded_width_or_coloring(g: Graph, k: int) -> WidthOrColoring:
    """Either a coloring with >= k red and >= k blue edges or a decomposition of width <= 2k."""
    if k < 1:
        raise LCPError(f"k must be >= 1, got {k}")
    comps = g.components()
    sizes = [g.edges_within(c) for c in comps]
    if all(s <= k - 1 for s in sizes):
        return WidthOrColoring(decomposition=_path_decomposition(comps))

    best = max(range(len(comps)), key=lambda i: (sizes[i], -i))
    start = min(comps[best])
    grown: set = set()
    inside = 0
    seen = {start}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        inside += g.deg_in_set(v, grown)
        grown.add(v)
        if inside >= k:
            break
        for w in sorted(g.neighbors(v)):
            if w not in seen:
                seen.add(w)
                queue.append(w)
    grown = frozenset(grown)
    rest = g.delete_vertices(grown)
    if rest.m >= k:
        return WidthOrColoring(coloring=TwoColoring.from_red(g.vertices, grown), grown=grown)
    bags = [c | grown for c in rest.components()] or [grown]
    return WidthOrColoring(decomposition=_path_decomposition(bags), grown=grown)


def parse_td(text: str) -> TreeDecomposition:
    """Read `s td` text; vertex and bag ids are integers, root is the smallest bag id."""
    header = None
    bags: dict = {}
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        parts = raw.split()
        if not parts or parts[0] == "c":
            continue
        try:
            if parts[0] == "s":
                if header is not None:
                    raise ParseError(lineno, "duplicate 's td' header")
                if len(parts) != 5 or parts[1] != "td":
                    raise ParseError(lineno, "expected 's td <bags> <max-bag-size> <n>'")
                header = tuple(int(x) for x in parts[2:])
            elif parts[0] == "b":
                if header is None:
                    raise ParseError(lineno, "bag before header")
                bid = int(parts[1])
                if bid in bags:
                    raise ParseError(lineno, f"duplicate bag {bid}")
                vs = [int(x) for x in parts[2:]]
                if any(v < 1 or v > header[2] for v in vs):
                    raise ParseError(lineno, f"vertex out of range in bag {bid}")
                bags[bid] = frozenset(vs)
            else:
                if header is None:
                    raise ParseError(lineno, "edge before header")
                if len(parts) != 2:
                    raise ParseError(lineno, "expected '<id1> <id2>'")
                edges.append((int(parts[0]), int(parts[1]), lineno))
        except ValueError:
            raise ParseError(lineno, f"non-integer token in {raw.strip()!r}") from None
    if header is None:
        raise ParseError(0, "missing 's td' header")
    nbags, maxsize, _ = header
    if len(bags) != nbags:
        raise ParseError(0, f"header declares {nbags} bags, found {len(bags)}")
    if max((len(b) for b in bags.values()), default=0) != maxsize:
        raise ParseError(0, f"header declares max bag size {maxsize}")
    for a, b, lineno in edges:
        if a not in bags or b not in bags:
            raise ParseError(lineno, f"tree edge ({a}, {b}) names an unknown bag")
    return TreeDecomposition.make(bags, [(a, b) for a, b, _ in edges])


def emit_td(td: TreeDecomposition, n: Optional[int] = None) -> str:
    if n is None:
        n = len(frozenset().union(*td.bags.values())) if td.bags else 0
    maxsize = max((len(b) for b in td.bags.values()), default=0)
    lines = [f"s td {len(td.bags)} {maxsize} {n}"]
    for i in sorted(td.bags):
        lines.append(" ".join(["b", str(i), *(str(v) for v in sorted(td.bags[i]))]))
    for a, b in sorted(td.tree):
        lines.append(f"{a} {b}")
    return "\n".join(lines) + "\n"
