"""Random 3-graphs G3(n,p) and the deletion process that destroys every
suspended 2k-cycle."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import comb, exp, log

import numpy as np

from .analysis import has_cycle_of_length
from .graphcore import Graph, TripleSystem

MAX_N = 400
_TWO64 = 1 << 64


def _as_fraction(p) -> Fraction:
    p = p if isinstance(p, Fraction) else Fraction(p)
    if not 0 <= p <= 1:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    return p


def threshold(p: Fraction) -> int:
    """Fixed-point cut: a uniform 64-bit draw d selects the triple iff d < cut."""
    return (p.numerator * _TWO64) // p.denominator


def sample_g3(n: int, p, seed: int) -> TripleSystem:
    """Each triple of [n] kept independently with probability p.

    Triple number i in lexicographic order consumes draw i of a Philox
    stream keyed by ``seed``, so the result does not depend on chunking.
    """
    if not 0 <= n <= MAX_N:
        raise ValueError(f"n must lie in [0, {MAX_N}]")
    p = _as_fraction(p)
    cut = threshold(p)
    bitgen = np.random.Philox(key=seed)
    chunks = []
    for i in range(max(n - 2, 0)):
        j, k = np.triu_indices(n - i - 1, 1)
        draws = bitgen.random_raw(len(j))
        keep = np.ones(len(j), dtype=bool) if cut >= _TWO64 else draws < np.uint64(cut)
        if keep.any():
            chunks.append(np.stack([np.full(int(keep.sum()), i), j[keep] + i + 1, k[keep] + i + 1], axis=1))
    t = np.concatenate(chunks) if chunks else np.zeros((0, 3), dtype=np.int64)
    meta = {"family": "G3", "k": 0, "n_vertices": n, "p": str(p), "seed": seed}
    return TripleSystem((n,), t, [None], meta)


@dataclass(frozen=True)
class RatePower:
    """coeff * base**exponent, kept symbolic because the power is irrational."""

    coeff: Fraction
    base: int
    exponent: Fraction

    def __float__(self) -> float:
        if self.coeff == 0:
            return 0.0
        lg = log(self.coeff.numerator) - log(self.coeff.denominator) + float(self.exponent) * log(self.base)
        return exp(lg) if lg > -745 else 0.0

    def log10(self) -> float:
        return (log(self.coeff.numerator) - log(self.coeff.denominator)
                + float(self.exponent) * log(self.base)) / log(10)

    def __str__(self) -> str:
        return f"({self.coeff})*{self.base}^({self.exponent})"


def rate_exponent(k: int) -> Fraction:
    return Fraction(-(2 * k - 2), 2 * k - 1)


def paper_rate_p(n: int, k: int) -> RatePower:
    """p = k^-100 / 10 * n^(-(2k-2)/(2k-1))."""
    if n < 2 or k < 2:
        raise ValueError("need n >= 2 and k >= 2")
    return RatePower(Fraction(1, 10 * k ** 100), n, rate_exponent(k))


def practical_p(n: int, k: int, c: float = 0.5) -> Fraction:
    """c * n^(-(2k-2)/(2k-1)) rounded to the nearest double, held exactly."""
    return Fraction(c * n ** float(rate_exponent(k)))


def expected_final_lb(n: int, k: int, p: Fraction) -> Fraction:
    return p * comb(n, 3) - (2 * k + 1) * Fraction(n) ** (2 * k + 1) * p ** (2 * k)


@dataclass
class DeletionReport:
    n: int
    k: int
    p: Fraction
    seed: int
    initial_edges: int
    copies_found: int
    edges_deleted: int
    final_edges: int

    @property
    def expected_initial(self) -> Fraction:
        return self.p * comb(self.n, 3)

    @property
    def paper_expected_final_lb(self) -> Fraction:
        return expected_final_lb(self.n, self.k, self.p)

    def as_dict(self) -> dict:
        return {"n": self.n, "k": self.k, "p": str(self.p), "seed": self.seed,
                "initial_edges": self.initial_edges, "copies_found": self.copies_found,
                "edges_deleted": self.edges_deleted, "final_edges": self.final_edges,
                "expected_initial": str(self.expected_initial),
                "paper_expected_final_lb": str(self.paper_expected_final_lb),
                "paper_expected_final_lb_float": float(self.paper_expected_final_lb)}

    def to_json(self) -> str:
        return json.dumps(self.as_dict())


def _link(triples: np.ndarray, alive: np.ndarray, n: int, x: int) -> tuple[Graph, np.ndarray]:
    rows = np.nonzero(alive & np.any(triples == x, axis=1))[0]
    pairs = triples[rows][triples[rows] != x].reshape(-1, 2)
    pairs = np.where(pairs > x, pairs - 1, pairs)
    return Graph.from_edges((n - 1,), pairs, check_duplicates=False), rows


def deletion_process(h: TripleSystem, k: int, seed: int) -> tuple[TripleSystem, DeletionReport]:
    """Delete one hyperedge from each suspended 2k-cycle until none is left.

    Apexes are scanned in ascending order; an apex is revisited until its
    link has no 2k-cycle (deleting edges never creates one elsewhere).  From
    each witness the deleted hyperedge is the seeded pick among its 2k.
    """
    if len(h.part_sizes) != 1:
        h = TripleSystem((h.n,), h.edge_array(), [None], dict(h.meta))
    n = h.n
    triples = h.triples.copy()
    alive = np.ones(len(triples), dtype=bool)
    keys = {tuple(t): i for i, t in enumerate(triples.tolist())}
    rng = np.random.Generator(np.random.Philox(key=seed))
    found = 0
    for x in range(n):
        while True:
            link, _ = _link(triples, alive, n, x)
            hit, cyc = has_cycle_of_length(link, 2 * k)
            if not hit:
                break
            found += 1
            cyc = [w + 1 if w >= x else w for w in cyc]
            j = int(rng.integers(2 * k))
            row = keys[tuple(sorted((x, cyc[j], cyc[(j + 1) % (2 * k)])))]
            alive[row] = False
    out = TripleSystem((n,), triples[alive], [None], dict(h.meta))
    p = Fraction(h.meta.get("p", "0"))
    rep = DeletionReport(n, k, p, seed, len(triples), found, int((~alive).sum()), int(alive.sum()))
    return out, rep
