"""Exhaustive reference solver used to check everything else."""
from __future__ import annotations

import numpy as np

from .graph import Graph, LCPError, TwoColoring

DEFAULT_CAP = 26
_CHUNK = 1 << 20


class OracleCapError(LCPError):
    pass


def brute_force_mu(g: Graph, cap: int = DEFAULT_CAP) -> tuple[int, TwoColoring]:
    """Exact mu(g) and a maximizing coloring by enumerating all colorings.

    The smallest vertex is fixed red; swapping colors leaves mu unchanged.
    """
    if g.n > cap:
        raise OracleCapError(f"brute force refuses n={g.n} > cap={cap}")
    verts = g.sorted_vertices()
    if not verts:
        return 0, TwoColoring(frozenset(), frozenset())
    pos = {v: i for i, v in enumerate(verts)}
    pairs = np.array([(1 << pos[u]) | (1 << pos[v]) for u, v in g.edge_list()], dtype=np.int64)

    best_mu, best_mask = -1, 1
    total = 1 << (len(verts) - 1)
    for lo in range(0, total, _CHUNK):
        masks = (np.arange(lo, min(lo + _CHUNK, total), dtype=np.int64) << 1) | 1
        red = np.zeros(len(masks), dtype=np.int32)
        blue = np.zeros(len(masks), dtype=np.int32)
        for p in pairs:
            hit = masks & p
            red += hit == p
            blue += hit == 0
        mu = np.minimum(red, blue)
        i = int(np.argmax(mu))
        if mu[i] > best_mu:
            best_mu, best_mask = int(mu[i]), int(masks[i])
    red_set = {v for v in verts if best_mask >> pos[v] & 1}
    return best_mu, TwoColoring.from_red(verts, red_set)
