"""Girth, fixed-length cycles, diameter, suspended-cycle freeness and
isomorphism evidence."""

from __future__ import annotations

import json
import time
from dataclasses import asdict, dataclass, field
from typing import Sequence

import numpy as np

from . import kernels
from .graphcore import Graph, TripleSystem, component_of, link_of

MAX_CYCLE_LENGTH = 24


class DisconnectedError(ValueError):
    pass


class EdgeError(ValueError):
    pass


# -- girth ----------------------------------------------------------------------

@dataclass(frozen=True)
class GirthResult:
    """Exact girth, or a lower bound when the search stopped at ``cap``."""

    value: int | None
    lower_bound: int | None = None

    @property
    def infinite(self) -> bool:
        return self.value is None and self.lower_bound is None

    def __str__(self) -> str:
        if self.value is not None:
            return str(self.value)
        return "infinite" if self.infinite else f">={self.lower_bound}"

    def at_least(self, bound: int) -> bool:
        if self.value is not None:
            return self.value >= bound
        return self.infinite or self.lower_bound >= bound


def girth(g: Graph, cap: int | None = None) -> GirthResult:
    full = cap is None or cap >= g.n
    limit = g.n if full else cap
    got = kernels.girth(g.indptr, g.indices, limit, g.is_bipartite_layout)
    if got <= limit:
        return GirthResult(got)
    return GirthResult(None) if full else GirthResult(None, cap + 1)


# -- cycles ---------------------------------------------------------------------

def _check_length(L: int) -> None:
    if L < 3:
        raise ValueError("cycle length must be at least 3")
    if L > MAX_CYCLE_LENGTH:
        raise ValueError(f"cycle lengths above {MAX_CYCLE_LENGTH} are not supported")


def has_cycle_of_length(g: Graph, L: int) -> tuple[bool, list[int] | None]:
    """Whether g has an L-cycle; the witness lists its vertices in order."""
    _check_length(L)
    if L % 2 and g.is_bipartite_layout:
        return False, None
    count, witness = kernels.cycles_of_length(g.indptr, g.indices, L, True)
    return bool(count), (list(witness) if witness is not None else None)


def count_cycles(g: Graph, L: int) -> int:
    _check_length(L)
    if L % 2 and g.is_bipartite_layout:
        return 0
    return int(kernels.cycles_of_length(g.indptr, g.indices, L, False)[0])


def _edge(g: Graph, e: tuple[int, int]) -> tuple[int, int]:
    u, v = int(e[0]), int(e[1])
    if not g.has_edge(u, v):
        raise EdgeError(f"{g.label(u)} {g.label(v)} is not an edge")
    return u, v


def min_cycle_through_edge(g: Graph, e: tuple[int, int], cap: int = MAX_CYCLE_LENGTH) -> int | None:
    u, v = _edge(g, e)
    got = kernels.min_cycle_through_edge(g.indptr, g.indices, u, v, cap)
    return got or None


def cycles_through_edge(g: Graph, e: tuple[int, int], L: int | None = None) -> tuple[int, int | None]:
    """(count, L): L-cycles through e; L defaults to the shortest such length."""
    u, v = _edge(g, e)
    if L is None:
        L = min_cycle_through_edge(g, (u, v))
        if L is None:
            return 0, None
    _check_length(L)
    return int(kernels.count_paths(g.indptr, g.indices, u, v, L - 1)), L


def cycle_sweep(g: Graph, e: tuple[int, int], lengths: Sequence[int]) -> dict[int, int]:
    return {L: cycles_through_edge(g, e, L)[0] for L in lengths}


def find_matching_length(pairs: Sequence[tuple[Graph, tuple[int, int], int]],
                         lengths: Sequence[int]) -> int | None:
    """First length at which every (graph, edge, expected count) matches."""
    for L in lengths:
        if all(cycles_through_edge(g, e, L)[0] == want for g, e, want in pairs):
            return L
    return None


# -- distances ------------------------------------------------------------------

def diameter(g: Graph) -> int:
    if g.n == 0:
        return 0
    d, _ = kernels.diameter(g.indptr, g.indices)
    if d < 0:
        raise DisconnectedError("diameter needs a connected graph; use component_of first")
    return int(d)


def component_diameter(g: Graph, v: int) -> tuple[int, int]:
    """(diameter, size) of the component containing v."""
    sub, keep = component_of(g, v)
    return diameter(sub), len(keep)


# -- hypergraphs ----------------------------------------------------------------

@dataclass
class SuspensionVerdict:
    ok: bool
    apex: int | None = None
    cycle: list[int] | None = None

    def __bool__(self) -> bool:
        return self.ok


def _link_to_global(h: TripleSystem, x: int, ids: list[int]) -> list[int]:
    if len(h.part_sizes) == 3:
        part, _ = h.locate(x)
        others = [j for j in range(3) if j != part]
        size0 = h.part_sizes[others[0]]
        return [h.part_offset(others[0]) + w if w < size0 else h.part_offset(others[1]) + w - size0
                for w in ids]
    return [w + 1 if w >= x else w for w in ids]


def is_suspension_free(h: TripleSystem, k: int) -> SuspensionVerdict:
    """No suspended 2k-cycle, i.e. no vertex link contains a 2k-cycle."""
    for x in range(h.n):
        found, cyc = has_cycle_of_length(link_of(h, x), 2 * k)
        if found:
            return SuspensionVerdict(False, x, _link_to_global(h, x, cyc))
    return SuspensionVerdict(True)


# -- isomorphism evidence -------------------------------------------------------

@dataclass
class IsoVerdict:
    ok: bool
    reason: str = ""
    collision: tuple[int, int] | None = None
    bad_edge: tuple[int, int] | None = None

    def __bool__(self) -> bool:
        return self.ok


def _edge_keys(g: Graph, e: np.ndarray) -> np.ndarray:
    lo, hi = np.minimum(e[:, 0], e[:, 1]), np.maximum(e[:, 0], e[:, 1])
    return lo.astype(np.int64) * g.n + hi


def verify_iso_map(g: Graph, h: Graph, vertex_map) -> IsoVerdict:
    """Check that vertex_map is a bijection V(g) -> V(h) carrying E(g) onto E(h)."""
    m = np.asarray(vertex_map, dtype=np.int64)
    if m.shape != (g.n,):
        return IsoVerdict(False, f"map covers {m.size} of {g.n} vertices")
    if g.n != h.n:
        return IsoVerdict(False, f"vertex counts differ: {g.n} vs {h.n}")
    if g.n and (m.min() < 0 or m.max() >= h.n):
        return IsoVerdict(False, "image outside the target vertex range")
    order = np.argsort(m, kind="stable")
    dup = np.nonzero(m[order][1:] == m[order][:-1])[0]
    if len(dup):
        i, j = int(order[dup[0]]), int(order[dup[0] + 1])
        return IsoVerdict(False, f"{g.label(i)} and {g.label(j)} share an image", collision=(i, j))
    if g.num_edges != h.num_edges:
        return IsoVerdict(False, f"edge counts differ: {g.num_edges} vs {h.num_edges}")
    eg = g.edge_array()
    img = _edge_keys(h, m[eg])
    hit = np.isin(img, _edge_keys(h, h.edge_array()))
    if not hit.all():
        i = int(np.nonzero(~hit)[0][0])
        u, v = int(eg[i, 0]), int(eg[i, 1])
        return IsoVerdict(False, f"edge {g.label(u)} {g.label(v)} maps to a non-edge", bad_edge=(u, v))
    # a bijection sending E(g) into E(h) with |E(g)| = |E(h)| also preserves non-edges
    return IsoVerdict(True, "bijection preserving adjacency and non-adjacency")


@dataclass(frozen=True)
class InvariantSignature:
    part_sizes: tuple[int, ...]
    degrees: tuple[tuple[int, int], ...]
    girth: str
    diameter: int
    component_size: int
    min_cycle_len: int | None
    cycle_count: int

    def compare(self, other: "InvariantSignature") -> tuple[str, list[str]]:
        diff = [f.name for f in self.__dataclass_fields__.values()
                if getattr(self, f.name) != getattr(other, f.name)]
        return ("non-isomorphic" if diff else "indistinguishable by these invariants"), diff


def signature(g: Graph, base_vertex: int, base_edge: tuple[int, int],
              girth_cap: int | None = None) -> InvariantSignature:
    vals, counts = np.unique(g.degrees(), return_counts=True)
    diam, size = component_diameter(g, base_vertex)
    count, L = cycles_through_edge(g, base_edge)
    return InvariantSignature(tuple(g.part_sizes), tuple(zip(vals.tolist(), counts.tolist())),
                              str(girth(g, girth_cap)), diam, size, L, count)


# -- report records -------------------------------------------------------------

@dataclass
class Report:
    graph_id: str
    girth: int | None = None
    girth_lb: int | None = None
    diameter: int | None = None
    base_edge: list[str] | None = None
    min_cycle_len: int | None = None
    cycle_count: int | None = None
    runtime_ms: float = 0.0
    extra: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        d = asdict(self)
        extra = d.pop("extra")
        d = {k: v for k, v in d.items() if v is not None}
        d.update(extra)
        return d

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=False)


def analyze(g: Graph, graph_id: str, base_vertex: int | None = None,
            base_edge: tuple[int, int] | None = None, girth_cap: int | None = None,
            length: int | None = None, want_girth: bool = True) -> Report:
    t0 = time.perf_counter()
    rep = Report(graph_id)
    if want_girth:
        gr = girth(g, girth_cap)
        rep.girth, rep.girth_lb = gr.value, gr.lower_bound
        if gr.infinite:
            rep.extra["girth"] = "infinite"
    if base_vertex is not None:
        rep.diameter, size = component_diameter(g, base_vertex)
        rep.extra["component_size"] = size
    if base_edge is not None:
        rep.cycle_count, rep.min_cycle_len = cycles_through_edge(g, base_edge, length)
        rep.base_edge = [g.label(base_edge[0]), g.label(base_edge[1])]
    rep.runtime_ms = round((time.perf_counter() - t0) * 1000, 3)
    return rep
