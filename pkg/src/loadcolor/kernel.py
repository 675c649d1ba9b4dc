"""Reduction rules, the 7k size bound, and the matching-based Yes witnesses."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .graph import Color, Graph, LCPError, TwoColoring


class PreconditionError(LCPError):
    pass


def _check_k(k: int) -> None:
    if k < 1:
        raise PreconditionError(f"k must be >= 1 for the reduction rules, got {k}")


@dataclass
class KernelTrace:
    removed_isolated: list = field(default_factory=list)
    removed_pendants: list = field(default_factory=list)  # (pendant, hub)
    final_graph: Optional[Graph] = None
    # Interleaved event log, in removal order: ("isolated", v) or ("pendant", v, hub).
    events: list = field(default_factory=list)

    def replay(self, g: Graph) -> Graph:
        """Re-apply the recorded removals to `g`, checking each one is legal."""
        for ev in self.events:
            v = ev[1]
            if ev[0] == "isolated":
                if g.degree(v) != 0:
                    raise LCPError(f"replay: {v!r} is not isolated")
            else:
                if g.neighbors(v) != frozenset([ev[2]]):
                    raise LCPError(f"replay: {v!r} is not a pendant of {ev[2]!r}")
            g = g.delete_vertices([v])
        return g

    def to_lines(self) -> list[str]:
        out = []
        for ev in self.events:
            if ev[0] == "isolated":
                out.append(f"isolated {ev[1]}")
            else:
                out.append(f"pendant {ev[1]} {ev[2]}")
        return out


def apply_rule1(g: Graph) -> tuple[Graph, frozenset]:
    """Delete every isolated vertex."""
    removed = frozenset(v for v in g if g.degree(v) == 0)
    return g.delete_vertices(removed), removed


def _pendant_groups(g: Graph) -> dict:
    groups: dict = {}
    for v in g:
        nb = g.neighbors(v)
        if len(nb) == 1:
            (x,) = nb
            groups.setdefault(x, []).append(v)
    return groups


def apply_rule2(g: Graph, k: int) -> tuple[Graph, list]:
    """Cap the number of degree-1 neighbors of any vertex at k.

    The k smallest pendant ids of each hub survive; the rest are removed.
    """
    _check_k(k)
    removed = []
    while True:
        doomed = []
        for x, pend in sorted(_pendant_groups(g).items()):
            if len(pend) > k:
                doomed.extend((s, x) for s in sorted(pend)[k:])
        if not doomed:
            return g, removed
        g = g.delete_vertices(s for s, _ in doomed)
        removed.extend(doomed)


def kernelize(g: Graph, k: int) -> tuple[Graph, KernelTrace]:
    """Apply both reduction rules until neither fires."""
    _check_k(k)
    trace = KernelTrace()
    while True:
        g, iso = apply_rule1(g)
        for v in sorted(iso):
            trace.removed_isolated.append(v)
            trace.events.append(("isolated", v))
        g, pend = apply_rule2(g, k)
        for s, x in pend:
            trace.removed_pendants.append((s, x))
            trace.events.append(("pendant", s, x))
        if not iso and not pend:
            break
    trace.final_graph = g
    return g, trace


def decide_by_size(reduced: Graph, k: int) -> Optional[bool]:
    """A reduced No-instance has at most 7k vertices, so more means Yes."""
    if reduced.n > 7 * k:
        return True
    return None


@dataclass(frozen=True)
class Matching:
    edges: frozenset  # of (u, v) tuples, u < v
    unmatched: frozenset

    def __len__(self) -> int:
        return len(self.edges)

    def mate(self) -> dict:
        out = {}
        for u, v in self.edges:
            out[u] = v
            out[v] = u
        return out


def find_matching(g: Graph) -> Matching:
    """Maximal matching with no augmenting path of length three.

    Greedy first, then repeatedly replace a matched edge uv by yu, vy' when
    distinct free vertices y ~ u and y' ~ v exist. Each swap grows the
    matching, so this stops after at most n/2 rounds.
    """
    mate: dict = {}
    for u, v in g.edge_list():
        if u not in mate and v not in mate:
            mate[u] = v
            mate[v] = u

    improved = True
    while improved:
        improved = False
        for u in sorted(mate):
            v = mate.get(u)
            if v is None or not u < v:
                continue
            free_u = sorted(w for w in g.neighbors(u) if w not in mate)
            free_v = sorted(w for w in g.neighbors(v) if w not in mate)
            pick = None
            for y in free_u:
                for y2 in free_v:
                    if y != y2:
                        pick = (y, y2)
                        break
                if pick:
                    break
            if pick:
                y, y2 = pick
                mate[y], mate[u] = u, y
                mate[v], mate[y2] = y2, v
                improved = True

    edges = frozenset((u, v) for u, v in mate.items() if u < v)
    return Matching(edges, frozenset(w for w in g if w not in mate))


def lemma1_witness(g: Graph, k: int) -> TwoColoring:
    """Coloring with at least k red and k blue edges for large sparse-ish graphs.

    Requires: no isolated vertices, max degree >= 2, n >= 5k and n >= 4k + max degree.
    """
    _check_k(k)
    n = g.n
    delta = g.max_degree()
    if any(g.degree(v) == 0 for v in g):
        raise PreconditionError("graph has an isolated vertex")
    if delta < 2:
        raise PreconditionError(f"maximum degree {delta} < 2")
    if n < 5 * k:
        raise PreconditionError(f"|V|={n} < 5k={5 * k}")
    if n < 4 * k + delta:
        raise PreconditionError(f"|V|={n} < 4k+Delta={4 * k + delta}")

    matching = find_matching(g)
    edges = sorted(matching.edges)
    if len(edges) >= 2 * k:
        red = {w for e in edges[:k] for w in e}
        return TwoColoring.from_red(g.vertices, red)

    free = matching.unmatched
    deg_y = {e: g.deg_in_set(e[0], free) + g.deg_in_set(e[1], free) for e in edges}

    def holds(sub) -> bool:
        return sum(deg_y[e] for e in sub) >= k - len(sub)

    # Greedy by decreasing deg_Y, then prune to an inclusion-minimal subset.
    chosen = []
    for e in sorted(edges, key=lambda e: (-deg_y[e], e)):
        if holds(chosen):
            break
        chosen.append(e)
    if not holds(chosen):
        raise LCPError("no edge subset meets the red-edge budget; matching invariant broken")
    for e in sorted(chosen, key=lambda e: (deg_y[e], e)):
        rest = [f for f in chosen if f != e]
        if holds(rest):
            chosen = rest

    red = set()
    for u, v in chosen:
        red |= {u, v}
        red |= g.neighbors(u) & free
        red |= g.neighbors(v) & free
    return TwoColoring.from_red(g.vertices, red)


def claim_a_witness(g: Graph, k: int) -> Optional[TwoColoring]:
    """Yes-coloring from two distinct vertices with deg(x) > 2k and deg(y) > k."""
    by_deg = sorted(g, key=lambda v: (-g.degree(v), v))
    for x in by_deg:
        if g.degree(x) <= 2 * k:
            break
        y = next((w for w in by_deg if w != x and g.degree(w) > k), None)
        if y is None:
            continue
        red_nb = sorted(w for w in g.neighbors(y) if w != x)[:k]
        red = {y, *red_nb}
        blue_nb = sorted(w for w in g.neighbors(x) if w not in red)[:k]
        blue = {x, *blue_nb}
        rest = g.vertices - red - blue
        return TwoColoring(red, blue | rest)
    return None


def kernel_witness_lift(g: Graph, trace: KernelTrace, f: TwoColoring) -> TwoColoring:
    """Extend a coloring of the kernel to the input graph.

    Removed pendants copy their hub's color and everything else left over
    goes blue. Adding colored vertices never removes a red or blue edge.
    """
    assign = f.as_dict()
    for ev in reversed(trace.events):
        if ev[0] == "pendant":
            assign[ev[1]] = assign.get(ev[2], Color.BLUE)
    return TwoColoring.from_mapping({v: assign.get(v, Color.BLUE) for v in g})
