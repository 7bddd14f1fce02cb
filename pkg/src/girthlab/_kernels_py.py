"""Pure-Python versions of the compiled kernels (same signatures, same results)."""

from __future__ import annotations

from collections import deque

import numpy as np


def _adj(indptr, indices):
    ip = indptr.tolist()
    ix = indices.tolist()
    return [ix[ip[v]:ip[v + 1]] for v in range(len(ip) - 1)]


def bfs_dist(indptr, indices, src):
    adj = _adj(indptr, indices)
    dist = [-1] * len(adj)
    dist[src] = 0
    queue = deque([src])
    while queue:
        u = queue.popleft()
        for w in adj[u]:
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                queue.append(w)
    return np.array(dist, dtype=np.int64)


def _bfs(adj, src):
    dist = {src: 0}
    order = [src]
    i = 0
    while i < len(order):
        u = order[i]
        i += 1
        du = dist[u] + 1
        for w in adj[u]:
            if w not in dist:
                dist[w] = du
                order.append(w)
    return dist, order


def girth(indptr, indices, cap, bipartite):
    adj = _adj(indptr, indices)
    best = cap + 1
    step = 2 if bipartite else 1
    for root in range(len(adj)):
        dist = {root: 0}
        parent = {root: -1}
        queue = deque([root])
        while queue:
            u = queue.popleft()
            if 2 * dist[u] + 1 > best - step:
                break
            for w in adj[u]:
                if w not in dist:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif w != parent[u]:
                    best = min(best, dist[u] + dist[w] + 1)
    return best


def diameter(indptr, indices):
    adj = _adj(indptr, indices)
    n = len(adj)
    if n == 0:
        return 0, 0
    dist, order = _bfs(adj, 0)
    runs = 1
    if len(order) != n:
        return -1, runs
    far = order[-1]
    dist, order = _bfs(adj, far)
    runs += 1
    lb = dist[order[-1]]
    lo = [0] * n
    hi = [n] * n
    active = [True] * n
    remaining = n
    pick_high = True
    v = far
    while remaining > 0:
        dist, order = _bfs(adj, v)
        runs += 1
        ecc = dist[order[-1]]
        lb = max(lb, ecc)
        for w in range(n):
            if not active[w]:
                continue
            d = dist[w]
            lo[w] = max(lo[w], d, ecc - d)
            hi[w] = min(hi[w], ecc + d)
            if hi[w] <= lb or lo[w] == hi[w] or w == v:
                if lo[w] == hi[w]:
                    lb = max(lb, lo[w])
                active[w] = False
                remaining -= 1
        if remaining == 0:
            break
        best_v = -1
        for w in range(n):
            if not active[w]:
                continue
            if hi[w] <= lb:
                active[w] = False
                remaining -= 1
                continue
            if best_v < 0:
                best_v = w
            elif pick_high and hi[w] > hi[best_v]:
                best_v = w
            elif not pick_high and lo[w] < lo[best_v]:
                best_v = w
        pick_high = not pick_high
        if best_v < 0:
            break
        v = best_v
    return lb, runs


def min_cycle_through_edge(indptr, indices, u, v, cap):
    adj = _adj(indptr, indices)
    dist = {u: 0}
    queue = deque([u])
    while queue:
        x = queue.popleft()
        if dist[x] + 2 > cap:
            break
        for w in adj[x]:
            if x == u and w == v:
                continue
            if w not in dist:
                dist[w] = dist[x] + 1
                if w == v:
                    return dist[w] + 1
                queue.append(w)
    return 0


def count_paths(indptr, indices, u, v, length):
    if length < 2:
        return 0
    adj = _adj(indptr, indices)
    dist = bfs_dist(indptr, indices, u).tolist()
    onpath = [False] * len(adj)
    onpath[v] = True

    def rec(x, left):
        total = 0
        for w in adj[x]:
            if onpath[w]:
                continue
            if w == u:
                if left == 1:
                    total += 1
                continue
            if dist[w] < 0 or dist[w] > left - 1:
                continue
            onpath[w] = True
            total += rec(w, left - 1)
            onpath[w] = False
        return total

    return rec(v, length)


def cycles_of_length(indptr, indices, L, stop_first):
    if L < 3:
        return 0, None
    adj = _adj(indptr, indices)
    half = L // 2
    total = 0
    for root in range(len(adj)):
        dist = {root: 0}
        queue = deque([root])
        while queue:
            x = queue.popleft()
            if dist[x] >= half:
                continue
            for w in adj[x]:
                if w not in dist:
                    dist[w] = dist[x] + 1
                    queue.append(w)
        path = [root]
        onpath = {root}
        found = []

        def rec(x, depth):
            count = 0
            for w in adj[x]:
                if w == root:
                    if depth == L - 1 and path[1] < x:
                        if stop_first:
                            found.append(list(path))
                            return 1
                        return count + 1
                    continue
                if w < root or w in onpath or depth + 1 > L - 1:
                    continue
                dw = dist.get(w, -1)
                if dw < 0 or dw > L - depth - 1:
                    continue
                onpath.add(w)
                path.append(w)
                count += rec(w, depth + 1)
                path.pop()
                onpath.discard(w)
                if stop_first and count:
                    return count
            return count

        got = rec(root, 0)
        total += got
        if stop_first and got:
            return total, found[0]
    return total, None
