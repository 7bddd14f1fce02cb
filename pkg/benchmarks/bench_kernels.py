"""Time the compiled kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import time

from girthlab import _kernels_py
from girthlab.dseries import Family, build_bipartite

try:
    from girthlab import _kernels as compiled
except ImportError:
    compiled = None


def cases():
    g = build_bipartite(Family.D, 5, 3)
    h = build_bipartite(Family.D, 4, 5)
    big = build_bipartite(Family.D, 7, 3)
    e = (0, big.part_offset(1))
    return [
        ("girth D(5,3)", lambda m: m.girth(g.indptr, g.indices, g.n, True)),
        ("diameter D(4,5)", lambda m: m.diameter(h.indptr, h.indices)),
        ("bfs D(7,3)", lambda m: m.bfs_dist(big.indptr, big.indices, 0)),
        ("min cycle through edge D(7,3)", lambda m: m.min_cycle_through_edge(big.indptr, big.indices, *e, 24)),
        ("paths of length 13 D(7,3)", lambda m: m.count_paths(big.indptr, big.indices, *e, 13)),
        ("6-cycles D(4,5)", lambda m: m.cycles_of_length(h.indptr, h.indices, 6, False)),
    ]


def best_of(fn, mod, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(mod)
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if compiled is None:
        print("compiled extension not built; only the fallback is timed")
    print(f"{'kernel':34} {'python s':>10} {'compiled s':>11} {'speedup':>8}")
    for name, fn in cases():
        tp, rp = best_of(fn, _kernels_py, args.repeat)
        if compiled is None:
            print(f"{name:34} {tp:10.4f} {'-':>11} {'-':>8}")
            continue
        tc, rc = best_of(fn, compiled, args.repeat)
        same = str(rp) == str(rc)
        print(f"{name:34} {tp:10.4f} {tc:11.5f} {tp / tc:7.0f}x" + ("" if same else "  MISMATCH"))


if __name__ == "__main__":
    main()
