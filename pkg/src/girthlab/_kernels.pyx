# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled graph-search kernels.  Mirrors ``_kernels_py`` exactly."""

import numpy as np
cimport numpy as cnp

ctypedef cnp.int64_t i64
ctypedef cnp.int32_t i32



def bfs_dist(const i64[:] indptr, const i32[:] indices, i64 src):
    """Distances from src (-1 where unreachable)."""
    cdef i64 n = indptr.shape[0] - 1
    dist_arr = np.full(n, -1, dtype=np.int64)
    cdef i64[:] dist = dist_arr
    cdef i64[:] queue = np.empty(n, dtype=np.int64)
    cdef i64 head = 0, tail = 0, u, w, j
    with nogil:
        dist[src] = 0
        queue[tail] = src
        tail += 1
        while head < tail:
            u = queue[head]
            head += 1
            for j in range(indptr[u], indptr[u + 1]):
                w = indices[j]
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    queue[tail] = w
                    tail += 1
    return dist_arr


cdef i64 _bfs(const i64[:] indptr, const i32[:] indices, i64 src, i64[:] dist,
              i64[:] queue, i64 *reached) nogil:
    # dist must be -1 everywhere on entry; returns eccentricity of src
    cdef i64 head = 0, tail = 0, u, w, j, ecc = 0
    dist[src] = 0
    queue[tail] = src
    tail += 1
    while head < tail:
        u = queue[head]
        head += 1
        if dist[u] > ecc:
            ecc = dist[u]
        for j in range(indptr[u], indptr[u + 1]):
            w = indices[j]
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                queue[tail] = w
                tail += 1
    reached[0] = tail
    return ecc


def girth(const i64[:] indptr, const i32[:] indices, i64 cap, bint bipartite):
    """Shortest cycle length, or cap + 1 when no cycle of length <= cap exists."""
    cdef i64 n = indptr.shape[0] - 1
    cdef i64[:] dist = np.full(n, -1, dtype=np.int64)
    cdef i64[:] parent = np.full(n, -1, dtype=np.int64)
    cdef i64[:] queue = np.empty(max(n, 1), dtype=np.int64)
    cdef i64 best = cap + 1, root, head, tail, u, w, j, c, step
    step = 2 if bipartite else 1
    with nogil:
        for root in range(n):
            head = 0
            tail = 0
            dist[root] = 0
            parent[root] = -1
            queue[tail] = root
            tail += 1
            while head < tail:
                u = queue[head]
                head += 1
                # any cycle found from here has length >= 2*dist[u]+1
                if 2 * dist[u] + 1 > best - step:
                    break
                for j in range(indptr[u], indptr[u + 1]):
                    w = indices[j]
                    if dist[w] < 0:
                        dist[w] = dist[u] + 1
                        parent[w] = u
                        queue[tail] = w
                        tail += 1
                    elif w != parent[u]:
                        c = dist[u] + dist[w] + 1
                        if c < best:
                            best = c
            for j in range(tail):
                dist[queue[j]] = -1
    return best


def diameter(const i64[:] indptr, const i32[:] indices):
    """Exact diameter of a connected graph (-1 if disconnected).

    A double sweep gives the starting lower bound; eccentricity bounds
    ``max(d, e - d) <= ecc(w) <= e + d`` from each processed source retire
    vertices whose upper bound cannot beat the running maximum.
    Returns ``(diameter, number_of_bfs_runs)``.
    """
    cdef i64 n = indptr.shape[0] - 1
    if n == 0:
        return 0, 0
    cdef i64[:] dist = np.full(n, -1, dtype=np.int64)
    cdef i64[:] queue = np.empty(n, dtype=np.int64)
    cdef i64[:] lo = np.zeros(n, dtype=np.int64)
    cdef i64[:] hi = np.full(n, n, dtype=np.int64)
    cdef cnp.uint8_t[:] active = np.ones(n, dtype=np.uint8)
    cdef i64 reached = 0, ecc, lb, far, v, w, d, i, remaining = n, runs = 0
    cdef bint pick_high = True
    cdef i64 best_v
    with nogil:
        ecc = _bfs(indptr, indices, 0, dist, queue, &reached)
        runs += 1
    if reached != n:
        return -1, runs
    with nogil:
        far = queue[n - 1]
        for i in range(n):
            dist[i] = -1
        lb = _bfs(indptr, indices, far, dist, queue, &reached)
        runs += 1
        for i in range(n):
            dist[i] = -1
        v = far
        while remaining > 0:
            ecc = _bfs(indptr, indices, v, dist, queue, &reached)
            runs += 1
            if ecc > lb:
                lb = ecc
            for w in range(n):
                d = dist[w]
                dist[w] = -1
                if not active[w]:
                    continue
                if d > lo[w]:
                    lo[w] = d
                if ecc - d > lo[w]:
                    lo[w] = ecc - d
                if ecc + d < hi[w]:
                    hi[w] = ecc + d
                if hi[w] <= lb or lo[w] == hi[w] or w == v:
                    if lo[w] > lb and lo[w] == hi[w]:
                        lb = lo[w]
                    active[w] = 0
                    remaining -= 1
            if remaining == 0:
                break
            # alternate between largest upper and smallest lower bound
            best_v = -1
            for w in range(n):
                if not active[w]:
                    continue
                if hi[w] <= lb:
                    active[w] = 0
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


def min_cycle_through_edge(const i64[:] indptr, const i32[:] indices, i64 u, i64 v, i64 cap):
    """Length of a shortest cycle through edge uv (0 if none within cap)."""
    cdef i64 n = indptr.shape[0] - 1
    cdef i64[:] dist = np.full(n, -1, dtype=np.int64)
    cdef i64[:] queue = np.empty(n, dtype=np.int64)
    cdef i64 head = 0, tail = 0, x, w, j, result = 0
    with nogil:
        dist[u] = 0
        queue[tail] = u
        tail += 1
        while head < tail and result == 0:
            x = queue[head]
            head += 1
            if dist[x] + 2 > cap:
                break
            for j in range(indptr[x], indptr[x + 1]):
                w = indices[j]
                if x == u and w == v:
                    continue
                if dist[w] < 0:
                    dist[w] = dist[x] + 1
                    if w == v:
                        result = dist[w] + 1
                        break
                    queue[tail] = w
                    tail += 1
    return result


cdef i64 _count(const i64[:] indptr, const i32[:] indices, i64 x, i64 target,
                i64 left, const i64[:] dist, cnp.uint8_t[:] onpath) nogil:
    # simple paths from x to target with exactly `left` more edges
    cdef i64 j, w, total = 0
    if left == 0:
        return 1 if x == target else 0
    for j in range(indptr[x], indptr[x + 1]):
        w = indices[j]
        if onpath[w]:
            continue
        if w == target:
            if left == 1:
                total += 1
            continue
        if dist[w] < 0 or dist[w] > left - 1:
            continue
        onpath[w] = 1
        total += _count(indptr, indices, w, target, left - 1, dist, onpath)
        onpath[w] = 0
    return total


def count_paths(const i64[:] indptr, const i32[:] indices, i64 u, i64 v, i64 length):
    """Simple v->u paths with exactly `length` edges, other than the edge vu itself."""
    cdef i64 n = indptr.shape[0] - 1
    if length < 2:
        return 0
    cdef i64[:] dist = bfs_dist(indptr, indices, u)
    cdef cnp.uint8_t[:] onpath = np.zeros(n, dtype=np.uint8)
    cdef i64 total
    with nogil:
        onpath[v] = 1
        total = _count(indptr, indices, v, u, length, dist, onpath)
    return total


cdef i64 _cycles_from(const i64[:] indptr, const i32[:] indices, i64 root, i64 x,
                      i64 depth, i64 L, const i64[:] dist, cnp.uint8_t[:] onpath,
                      i64[:] path, bint stop_first) nogil:
    # extend path[0..depth] (ending at x); count closing cycles of length L whose
    # minimum vertex is root, each once (second vertex < last vertex)
    cdef i64 j, w, total = 0, r
    for j in range(indptr[x], indptr[x + 1]):
        w = indices[j]
        if w == root:
            if depth == L - 1 and path[1] < x:
                return total + 1 if not stop_first else 1
            continue
        if w < root or onpath[w]:
            continue
        if depth + 1 > L - 1:
            continue
        if dist[w] < 0 or dist[w] > L - depth - 1:
            continue
        onpath[w] = 1
        path[depth + 1] = w
        r = _cycles_from(indptr, indices, root, w, depth + 1, L, dist, onpath, path, stop_first)
        onpath[w] = 0
        total += r
        if stop_first and total > 0:
            return total
    return total


def cycles_of_length(const i64[:] indptr, const i32[:] indices, i64 L, bint stop_first):
    """Count cycles of length L (each once); with stop_first return after one.

    Returns ``(count, witness)`` where witness is a vertex list or None.
    """
    cdef i64 n = indptr.shape[0] - 1
    cdef i64[:] dist = np.full(n, -1, dtype=np.int64)
    cdef i64[:] queue = np.empty(max(n, 1), dtype=np.int64)
    cdef cnp.uint8_t[:] onpath = np.zeros(n, dtype=np.uint8)
    path_arr = np.zeros(L + 1, dtype=np.int64)
    cdef i64[:] path = path_arr
    cdef i64 root, head, tail, u, w, j, total = 0, got, half
    if L < 3:
        return 0, None
    half = L // 2
    for root in range(n):
        with nogil:
            # ball of radius L/2 around root, for return-distance pruning
            head = 0
            tail = 0
            dist[root] = 0
            queue[tail] = root
            tail += 1
            while head < tail:
                u = queue[head]
                head += 1
                if dist[u] >= half:
                    continue
                for j in range(indptr[u], indptr[u + 1]):
                    w = indices[j]
                    if dist[w] < 0:
                        dist[w] = dist[u] + 1
                        queue[tail] = w
                        tail += 1
            onpath[root] = 1
            path[0] = root
            got = _cycles_from(indptr, indices, root, root, 0, L, dist, onpath, path, stop_first)
            onpath[root] = 0
            for j in range(tail):
                dist[queue[j]] = -1
        total += got
        if stop_first and got > 0:
            return total, [int(x) for x in path_arr[:L]]
    return total, None
