"""Dynamic programming over nice tree decompositions, and the full k-LCP pipeline.

A table entry F(node, S, r, b) says: some coloring of the vertices at or below
`node` colors exactly S red inside the bag and has at least r red and b blue
edges, with r, b saturating at k. Entries are monotone in (r, b), so each
slice stores, per subset S and per r, the largest true b (or -1). Subsets are
bitmasks over the bag sorted ascending.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

import numpy as np

from .graph import Color, Graph, LCPError, TwoColoring, evaluate_coloring
from .kernel import (
    claim_a_witness,
    decide_by_size,
    kernel_witness_lift,
    kernelize,
    lemma1_witness,
)
from .treedecomp import (
    FORGET,
    INTRODUCE,
    JOIN,
    LEAF,
    InvalidDecompositionError,
    NiceTreeDecomposition,
    TreeDecomposition,
    bounded_width_or_coloring,
    check_nice,
    make_nice,
    validate,
    width,
)

TRIVIAL = "trivial"
KERNEL_SIZE = "kernel-size"
CLAIM_A = "claim-a"
LEMMA_1 = "lemma-1"
WIDTH_LEMMA = "width-lemma-coloring"
DP = "dp"

_DTYPE = np.int32


class DPInvariantError(LCPError):
    pass


@dataclass
class Slice:
    bag: tuple
    best: np.ndarray  # (2**len(bag), k+1)

    @property
    def k(self) -> int:
        return self.best.shape[1] - 1

    def mask(self, s: Iterable) -> int:
        s = set(s)
        out = 0
        for i, v in enumerate(self.bag):
            if v in s:
                out |= 1 << i
        if len(s - set(self.bag)):
            raise LCPError(f"{sorted(s - set(self.bag))} not in bag")
        return out

    def entry(self, s: Iterable, r: int, b: int) -> bool:
        r = min(max(r, 0), self.k)
        b = min(max(b, 0), self.k)
        return bool(self.best[self.mask(s), r] >= b)


def _masks(size: int) -> np.ndarray:
    return np.arange(1 << size, dtype=np.int64)


def _nbr_mask(g: Graph, v, bag: tuple) -> int:
    nb = g.neighbors(v)
    return sum(1 << i for i, w in enumerate(bag) if w in nb)


def _inside_counts(g: Graph, bag: tuple, masks: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Per mask: edges with both ends in S, and with both ends in bag minus S."""
    red = np.zeros(len(masks), dtype=_DTYPE)
    blue = np.zeros(len(masks), dtype=_DTYPE)
    pos = {v: i for i, v in enumerate(bag)}
    full = (1 << len(bag)) - 1
    for i, v in enumerate(bag):
        for w in g.neighbors(v):
            j = pos.get(w)
            if j is not None and i < j:
                pair = (1 << i) | (1 << j)
                red += (masks & pair) == pair
                blue += ((~masks & full) & pair) == pair
    return red, blue


def _insert_zero(masks: np.ndarray, p: int) -> np.ndarray:
    low = masks & ((1 << p) - 1)
    return ((masks >> p) << (p + 1)) | low


def _drop_bit(masks: np.ndarray, p: int) -> np.ndarray:
    low = masks & ((1 << p) - 1)
    return ((masks >> (p + 1)) << p) | low


def dp_leaf(bag: Iterable, g: Graph, k: int) -> Slice:
    bag = tuple(sorted(bag))
    masks = _masks(len(bag))
    red, blue = _inside_counts(g, bag, masks)
    r = np.arange(k + 1)
    best = np.where(r[None, :] <= red[:, None], np.minimum(blue, k)[:, None], -1).astype(_DTYPE)
    return Slice(bag, best)


def dp_introduce(bag: Iterable, v, child: Slice, g: Graph, k: int) -> Slice:
    bag = tuple(sorted(bag))
    p = bag.index(v)
    if child.bag != bag[:p] + bag[p + 1:]:
        raise DPInvariantError(f"introduce {v!r}: child bag {child.bag} does not match {bag}")
    masks = _masks(len(bag))
    full = (1 << len(bag)) - 1
    nb = _nbr_mask(g, v, bag)
    cm = _drop_bit(masks, p)
    has_v = ((masks >> p) & 1).astype(bool)
    r_star = np.bitwise_count(masks & nb).astype(_DTYPE)
    b_star = np.bitwise_count(~masks & full & nb).astype(_DTYPE)

    r = np.arange(k + 1)
    shifted = np.maximum(r[None, :] - r_star[:, None], 0)
    red_side = np.take_along_axis(child.best[cm], shifted, axis=1)
    cb = child.best[cm]
    blue_side = np.where(cb >= 0, np.minimum(cb + b_star[:, None], k), -1)
    best = np.where(has_v[:, None], red_side, blue_side).astype(_DTYPE)
    return Slice(bag, best)


def dp_forget(bag: Iterable, v, child: Slice) -> Slice:
    bag = tuple(sorted(bag))
    p = child.bag.index(v)
    if child.bag[:p] + child.bag[p + 1:] != bag:
        raise DPInvariantError(f"forget {v!r}: child bag {child.bag} does not match {bag}")
    masks = _masks(len(bag))
    c0 = _insert_zero(masks, p)
    best = np.maximum(child.best[c0], child.best[c0 | (1 << p)])
    return Slice(bag, best)


def _join_offsets(g: Graph, bag: tuple, k: int) -> tuple[np.ndarray, np.ndarray]:
    masks = _masks(len(bag))
    red, blue = _inside_counts(g, bag, masks)
    return np.minimum(red, k), np.minimum(blue, k)


def dp_join(bag: Iterable, left: Slice, right: Slice, g: Graph, k: int) -> Slice:
    """Combine two subtrees sharing the bag without double-counting bag edges."""
    bag = tuple(sorted(bag))
    if left.bag != bag or right.bag != bag:
        raise DPInvariantError(f"join children bags {left.bag}, {right.bag} differ from {bag}")
    rp, bp = _join_offsets(g, bag, k)
    rows = len(rp)
    r = np.arange(k + 1)
    out = np.full((rows, k + 1), -1, dtype=_DTYPE)
    for rh in range(k + 1):
        lb = left.best[:, rh]
        ok_left = (rh >= rp) & (lb >= bp)
        rj = np.clip(r[None, :] - rh + rp[:, None], 0, k)
        rb = np.take_along_axis(right.best, rj, axis=1)
        cand = np.where(ok_left[:, None] & (rb >= 0), np.minimum(lb[:, None] + rb - bp[:, None], k), -1)
        np.maximum(out, cand, out=out)
    return Slice(bag, out)


JoinFn = Callable[[Iterable, Slice, Slice, Graph, int], Slice]


@dataclass
class DPTable:
    k: int
    ntd: NiceTreeDecomposition
    slices: dict = field(default_factory=dict)

    def entry(self, node: int, s: Iterable, r: int, b: int) -> bool:
        return self.slices[node].entry(s, r, b)

    @property
    def entries(self) -> int:
        """Logical table size: subsets times (k+1)^2 summed over nodes."""
        return sum(sl.best.shape[0] for sl in self.slices.values()) * (self.k + 1) ** 2

    def budget(self) -> int:
        t = width(self.ntd)
        return len(self.ntd.bags) * 2 ** (t + 1) * (self.k + 1) ** 2

    def accepting_subset(self) -> Optional[int]:
        root = self.slices[self.ntd.root]
        hits = np.nonzero(root.best[:, self.k] >= self.k)[0]
        return int(hits[0]) if len(hits) else None


def run_dp(g: Graph, ntd: NiceTreeDecomposition, k: int, *, join: JoinFn = dp_join) -> DPTable:
    """Fill the table bottom-up. Assumes `ntd` is a valid nice decomposition of `g`."""
    table = DPTable(k, ntd)
    below: dict = {}  # vertices forgotten somewhere in the subtree
    for node in ntd.postorder():
        kind = ntd.kinds[node]
        kids = ntd.kids[node]
        bag = ntd.bags[node]
        if kind.kind == LEAF:
            sl = dp_leaf(bag, g, k)
            below[node] = frozenset()
        elif kind.kind == INTRODUCE:
            (c,) = kids
            gone = below.pop(c)
            bad = g.neighbors(kind.vertex) & gone
            if bad:
                raise DPInvariantError(f"introduced {kind.vertex!r} has forgotten neighbor {min(bad)!r}")
            sl = dp_introduce(bag, kind.vertex, table.slices[c], g, k)
            below[node] = gone
        elif kind.kind == FORGET:
            (c,) = kids
            sl = dp_forget(bag, kind.vertex, table.slices[c])
            below[node] = below.pop(c) | {kind.vertex}
        elif kind.kind == JOIN:
            h, j = kids
            sl = join(bag, table.slices[h], table.slices[j], g, k)
            below[node] = below.pop(h) | below.pop(j)
        else:
            raise DPInvariantError(f"unknown node kind {kind}")
        table.slices[node] = sl
    return table


def extract_witness(table: DPTable, g: Graph) -> TwoColoring:
    """Replay accepting choices top-down from the root."""
    ntd, k = table.ntd, table.k
    start = table.accepting_subset()
    if start is None:
        raise LCPError("root has no accepting entry")
    assign: dict = {}
    stack = [(ntd.root, start, k, k)]
    while stack:
        node, mask, r, b = stack.pop()
        sl = table.slices[node]
        for i, v in enumerate(sl.bag):
            c = Color.RED if mask >> i & 1 else Color.BLUE
            if assign.setdefault(v, c) is not c:
                raise DPInvariantError(f"inconsistent color for {v!r}")
        kind = ntd.kinds[node]
        kids = ntd.kids[node]
        if kind.kind == LEAF:
            continue
        if kind.kind == INTRODUCE:
            v = kind.vertex
            p = sl.bag.index(v)
            cm = ((mask >> (p + 1)) << p) | (mask & ((1 << p) - 1))
            nb = _nbr_mask(g, v, sl.bag)
            if mask >> p & 1:
                stack.append((kids[0], cm, max(r - bin(mask & nb).count("1"), 0), b))
            else:
                full = (1 << len(sl.bag)) - 1
                stack.append((kids[0], cm, r, max(b - bin(~mask & full & nb).count("1"), 0)))
        elif kind.kind == FORGET:
            child = table.slices[kids[0]]
            p = child.bag.index(kind.vertex)
            c0 = ((mask >> p) << (p + 1)) | (mask & ((1 << p) - 1))
            pick = c0 if child.best[c0, r] >= b else c0 | (1 << p)
            stack.append((kids[0], pick, r, b))
        else:
            left, right = (table.slices[c] for c in kids)
            bag_g = g.induced(sl.bag)
            red_set = {v for i, v in enumerate(sl.bag) if mask >> i & 1}
            rp = min(bag_g.edges_within(red_set), k)
            bp = min(bag_g.edges_within(set(sl.bag) - red_set), k)
            for rh in range(rp, k + 1):
                lb = int(left.best[mask, rh])
                if lb < bp:
                    continue
                rj = max(r - rh + rp, 0)
                rb = int(right.best[mask, rj])
                if rb >= 0 and min(lb + rb - bp, k) >= b:
                    stack.append((kids[0], mask, rh, lb))
                    stack.append((kids[1], mask, rj, max(b - lb + bp, 0)))
                    break
            else:
                raise DPInvariantError(f"join node {node}: no split reproduces ({r}, {b})")
    return TwoColoring.from_mapping(assign)


def _check_nice_input(g: Graph, ntd: NiceTreeDecomposition) -> None:
    if not isinstance(ntd, NiceTreeDecomposition):
        raise LCPError("expected a nice tree decomposition; convert with make_nice first")
    report = validate(g, ntd)
    report.violations.extend(check_nice(ntd))
    if not report.ok:
        raise InvalidDecompositionError(report)


def solve_decision(g: Graph, ntd: NiceTreeDecomposition, k: int, *, join: JoinFn = dp_join):
    """(mu(g) >= k, witness or None) by dynamic programming over `ntd`."""
    _check_nice_input(g, ntd)
    table = run_dp(g, ntd, k, join=join)
    if table.accepting_subset() is None:
        return False, None
    return True, extract_witness(table, g)


def solve_optimize(g: Graph, ntd: NiceTreeDecomposition) -> tuple[int, TwoColoring]:
    """mu(g) and an optimal coloring, by binary search on k."""
    _check_nice_input(g, ntd)

    def decide(k):
        table = run_dp(g, ntd, k)
        if table.accepting_subset() is None:
            return None
        return extract_witness(table, g)

    return _binary_search(g, decide)


def _binary_search(g: Graph, decide) -> tuple[int, TwoColoring]:
    lo, hi = 0, g.m // 2
    best = TwoColoring(frozenset(), g.vertices)
    while lo < hi:
        mid = (lo + hi + 1) // 2
        w = decide(mid)
        if w is None:
            hi = mid - 1
        else:
            lo, best = mid, w
    return lo, best


@dataclass
class SolveResult:
    verdict: bool
    k: int
    witness: Optional[TwoColoring] = None
    decided_by: str = DP
    stats: dict = field(default_factory=dict)


def _timed(stats: dict, phase: str, t0: float) -> float:
    now = time.perf_counter()
    stats.setdefault("phases", {})[phase] = now - t0
    return now


def _certify(g: Graph, f: TwoColoring, k: int, stage: str) -> TwoColoring:
    prof = evaluate_coloring(g, f)
    if prof.mu < k:
        raise LCPError(f"{stage} produced a coloring with mu={prof.mu} < k={k}")
    return f


def solve_klcp(
    g: Graph,
    k: int,
    want_witness: bool = True,
    *,
    td: Optional[TreeDecomposition] = None,
    join: JoinFn = dp_join,
) -> SolveResult:
    """Decide mu(g) >= k.

    Without `td`: kernelize, try the size bound and the constructive Yes
    certificates, then fall back to dynamic programming over the width-2k
    decomposition of the kernel. With `td` (a decomposition of `g` itself):
    dynamic programming over its nice form directly.
    """
    stats: dict = {"n": g.n, "m": g.m}
    t0 = time.perf_counter()
    if k <= 0:
        f = TwoColoring(frozenset(), g.vertices) if want_witness else None
        return SolveResult(True, k, f, TRIVIAL, stats)

    if td is not None:
        ntd = make_nice(g, td)
        t0 = _timed(stats, "nice", t0)
        return _run_dp_stage(g, g, ntd, k, want_witness, join, stats, t0, lift=None)

    kern, trace = kernelize(g, k)
    stats["kernel_n"], stats["kernel_m"] = kern.n, kern.m
    t0 = _timed(stats, "kernel", t0)

    def lift(f):
        return _certify(g, kernel_witness_lift(g, trace, f), k, "lift")

    size_yes = decide_by_size(kern, k)
    if size_yes and not want_witness:
        return SolveResult(True, k, None, KERNEL_SIZE, stats)

    f = claim_a_witness(kern, k)
    if f is not None:
        _certify(kern, f, k, CLAIM_A)
        return SolveResult(True, k, lift(f), KERNEL_SIZE if size_yes else CLAIM_A, stats)

    delta = kern.max_degree()
    if delta >= 2 and kern.n >= 5 * k and kern.n >= 4 * k + delta:
        f = _certify(kern, lemma1_witness(kern, k), k, LEMMA_1)
        return SolveResult(True, k, lift(f), KERNEL_SIZE if size_yes else LEMMA_1, stats)

    wc = bounded_width_or_coloring(kern, k)
    t0 = _timed(stats, "width-lemma", t0)
    if wc.coloring is not None:
        f = _certify(kern, wc.coloring, k, WIDTH_LEMMA)
        return SolveResult(True, k, lift(f), KERNEL_SIZE if size_yes else WIDTH_LEMMA, stats)

    ntd = make_nice(kern, wc.decomposition)
    t0 = _timed(stats, "nice", t0)
    res = _run_dp_stage(g, kern, ntd, k, want_witness, join, stats, t0, lift=lift)
    if size_yes:
        if not res.verdict:
            raise LCPError("size bound says Yes but the DP says No")
        res.decided_by = KERNEL_SIZE
    return res


def _run_dp_stage(g, host, ntd, k, want_witness, join, stats, t0, lift) -> SolveResult:
    table = run_dp(host, ntd, k, join=join)
    stats.update(
        nice_nodes=len(ntd.bags),
        width=width(ntd),
        table_entries=table.entries,
        entry_budget=table.budget(),
    )
    t0 = _timed(stats, "dp", t0)
    if table.accepting_subset() is None:
        return SolveResult(False, k, None, DP, stats)
    f = None
    if want_witness:
        f = _certify(host, extract_witness(table, host), k, DP)
        if lift is not None:
            f = lift(f)
        _timed(stats, "witness", t0)
    return SolveResult(True, k, f, DP, stats)


def optimize(g: Graph, td: Optional[TreeDecomposition] = None) -> tuple[int, TwoColoring]:
    """mu(g) via binary search over the decision pipeline."""
    if td is not None:
        return solve_optimize(g, make_nice(g, td))

    def decide(k):
        res = solve_klcp(g, k, want_witness=True)
        return res.witness if res.verdict else None

    return _binary_search(g, decide)
