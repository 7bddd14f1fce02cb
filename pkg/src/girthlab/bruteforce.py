"""Slow reference implementations for small inputs (oracles).

Written independently of the search kernels: cycles come from a bitmask
dynamic program over vertex subsets, distances from Floyd-Warshall, and
suspended cycles from direct subset enumeration.
"""

from __future__ import annotations

from itertools import combinations, permutations

import numpy as np

from .graphcore import Graph, TripleSystem

MAX_VERTICES = 16


def _adj_masks(n: int, edges) -> list[int]:
    adj = [0] * n
    for u, v in edges:
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return adj


def cycle_counts(n: int, edges) -> dict[int, int]:
    """Number of simple cycles of each length (as unoriented vertex cycles)."""
    if n > MAX_VERTICES:
        raise ValueError("too many vertices for the oracle")
    adj = _adj_masks(n, edges)
    counts: dict[int, int] = {}
    for s in range(n):
        # paths starting at s that use only vertices > s
        layer = {(1 << s, s): 1}
        length = 1
        while layer:
            nxt: dict[tuple[int, int], int] = {}
            for (mask, v), c in layer.items():
                if length >= 3 and adj[v] >> s & 1:
                    counts[length] = counts.get(length, 0) + c
                free = adj[v] & ~mask & ~((1 << (s + 1)) - 1)
                while free:
                    w = (free & -free).bit_length() - 1
                    free &= free - 1
                    key = (mask | 1 << w, w)
                    nxt[key] = nxt.get(key, 0) + c
            layer = nxt
            length += 1
    return {L: c // 2 for L, c in counts.items()}


def girth(n: int, edges) -> int | None:
    c = cycle_counts(n, edges)
    return min(c) if c else None


def cycles_through_edge(n: int, edges, u: int, v: int, L: int) -> int:
    """L-cycles using the edge uv, by enumerating u-v paths of L-1 edges."""
    adj = _adj_masks(n, [e for e in edges if {e[0], e[1]} != {u, v}])
    total = 0

    def rec(x, mask, left):
        nonlocal total
        if left == 0:
            total += x == v
            return
        free = adj[x] & ~mask
        while free:
            w = (free & -free).bit_length() - 1
            free &= free - 1
            rec(w, mask | 1 << w, left - 1)

    rec(u, 1 << u, L - 1)
    return total


def distances(n: int, edges) -> np.ndarray:
    inf = n + 1
    d = np.full((n, n), inf, dtype=np.int64)
    np.fill_diagonal(d, 0)
    for u, v in edges:
        d[u, v] = d[v, u] = 1
    for m in range(n):
        d = np.minimum(d, d[:, m:m + 1] + d[m:m + 1, :])
    return d


def diameter(n: int, edges) -> int | None:
    """None when disconnected."""
    if n == 0:
        return 0
    d = distances(n, edges)
    return None if d.max() > n else int(d.max())


def graph_edges(g: Graph) -> list[tuple[int, int]]:
    return [tuple(e) for e in g.edge_array().tolist()]


def suspended_cycle(h: TripleSystem, k: int):
    """A suspended 2k-cycle as (apex, cycle), found by subset enumeration, or None."""
    if h.n > MAX_VERTICES:
        raise ValueError("too many vertices for the oracle")
    edges = {frozenset(t) for t in h.edge_array().tolist()}
    for sub in combinations(range(h.n), 2 * k + 1):
        for x in sub:
            rest = [w for w in sub if w != x]
            first = rest[0]
            for perm in permutations(rest[1:]):
                cyc = (first,) + perm
                if cyc[1] > cyc[-1]:
                    continue
                if all(frozenset((x, cyc[i], cyc[(i + 1) % (2 * k)])) in edges for i in range(2 * k)):
                    return x, list(cyc)
    return None
