"""Graph and triple-system storage plus the edge-list file format.

Vertices carry one global integer id.  Parts are contiguous id ranges, in
part order, so a bipartite graph with parts of sizes ``(nA, nB)`` holds A at
``[0, nA)`` and B at ``[nA, nA + nB)``.  Adjacency is CSR with sorted,
duplicate-free neighbour lists.
"""

from __future__ import annotations

import io
import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence, TextIO

import numpy as np

from . import kernels

PART_NAMES = "ABC"


class GraphFormatError(ValueError):
    def __init__(self, msg: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {msg}" if line is not None else msg)


@dataclass
class Graph:
    part_sizes: tuple[int, ...]
    indptr: np.ndarray
    indices: np.ndarray
    labels: list[np.ndarray | None] = field(default_factory=list)
    meta: dict = field(default_factory=dict)

    # -- construction -----------------------------------------------------
    @classmethod
    def from_edges(cls, part_sizes: Sequence[int], edges, labels=None, meta=None,
                   check_duplicates: bool = True) -> "Graph":
        """Build from an ``(m, 2)`` array of global vertex ids."""
        part_sizes = tuple(int(s) for s in part_sizes)
        n = sum(part_sizes)
        e = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
        if len(e):
            if e.min() < 0 or e.max() >= n:
                raise ValueError("edge endpoint outside vertex range")
            if np.any(e[:, 0] == e[:, 1]):
                raise ValueError("self-loops are not allowed")
            if len(part_sizes) > 1:
                bounds = np.cumsum((0,) + part_sizes)
                pu = np.searchsorted(bounds, e[:, 0], side="right")
                pv = np.searchsorted(bounds, e[:, 1], side="right")
                if np.any(pu == pv):
                    raise ValueError("edge inside a single part")
        both = np.concatenate([e, e[:, ::-1]])
        order = np.lexsort((both[:, 1], both[:, 0]))
        both = both[order]
        if check_duplicates and len(both) > 1:
            dup = np.all(both[1:] == both[:-1], axis=1)
            if dup.any():
                u, v = both[1:][dup][0]
                raise ValueError(f"duplicate edge {int(u)}-{int(v)}")
        counts = np.bincount(both[:, 0], minlength=n)
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(counts, out=indptr[1:])
        labels = list(labels) if labels is not None else [None] * len(part_sizes)
        return cls(part_sizes, indptr, both[:, 1].astype(np.int32), labels, dict(meta or {}))

    @classmethod
    def bipartite(cls, n_a: int, n_b: int, a_idx, b_idx, labels=None, meta=None,
                  check_duplicates: bool = True) -> "Graph":
        """Bipartite graph from local A indices and local B indices."""
        a_idx = np.asarray(a_idx, dtype=np.int64)
        b_idx = np.asarray(b_idx, dtype=np.int64) + n_a
        return cls.from_edges((n_a, n_b), np.stack([a_idx, b_idx], axis=1), labels, meta,
                              check_duplicates)

    @classmethod
    def empty(cls, part_sizes: Sequence[int], meta=None) -> "Graph":
        return cls.from_edges(part_sizes, np.empty((0, 2), dtype=np.int64), meta=meta)

    # -- queries ----------------------------------------------------------
    @property
    def n(self) -> int:
        return len(self.indptr) - 1

    @property
    def num_edges(self) -> int:
        return len(self.indices) // 2

    @property
    def is_bipartite_layout(self) -> bool:
        return len(self.part_sizes) == 2

    def _check(self, v: int) -> int:
        v = int(v)
        if not 0 <= v < self.n:
            raise KeyError(f"unknown vertex {v}")
        return v

    def degree(self, v: int) -> int:
        v = self._check(v)
        return int(self.indptr[v + 1] - self.indptr[v])

    def neighbors(self, v: int) -> list[int]:
        v = self._check(v)
        return self.indices[self.indptr[v]:self.indptr[v + 1]].tolist()

    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def has_edge(self, u: int, v: int) -> bool:
        u, v = self._check(u), self._check(v)
        row = self.indices[self.indptr[u]:self.indptr[u + 1]]
        i = np.searchsorted(row, v)
        return bool(i < len(row) and row[i] == v)

    def edge_array(self) -> np.ndarray:
        """Each edge once as ``(u, v)`` with ``u < v``, sorted."""
        src = np.repeat(np.arange(self.n, dtype=np.int64), self.degrees())
        dst = self.indices.astype(np.int64)
        keep = src < dst
        return np.stack([src[keep], dst[keep]], axis=1)

    def edges(self) -> Iterator[tuple[int, int]]:
        for u, v in self.edge_array().tolist():
            yield u, v

    def part_offset(self, part: int) -> int:
        return int(sum(self.part_sizes[:part]))

    def vid(self, part: int, local: int) -> int:
        if not 0 <= local < self.part_sizes[part]:
            raise KeyError(f"local index {local} outside part {part}")
        return self.part_offset(part) + int(local)

    def locate(self, v: int) -> tuple[int, int]:
        """``(part, local index)`` of a global id."""
        v = self._check(v)
        for p, size in enumerate(self.part_sizes):
            if v < size:
                return p, v
            v -= size
        raise AssertionError

    def regular_degree(self) -> int | None:
        d = self.degrees()
        if len(d) == 0:
            return 0
        return int(d[0]) if np.all(d == d[0]) else None

    def label(self, v: int) -> str:
        part, local = self.locate(v)
        name = PART_NAMES[part] if len(self.part_sizes) > 1 else "V"
        lab = self.labels[part] if part < len(self.labels) else None
        coords = (local,) if lab is None else tuple(int(c) for c in lab[local])
        return f"{name}:({','.join(map(str, coords))})"

    def find(self, part: int, coords: Sequence[int]) -> int:
        """Global id of the vertex with the given label coordinates."""
        lab = self.labels[part] if part < len(self.labels) else None
        if lab is None:
            (local,) = coords
            return self.vid(part, local)
        hits = np.nonzero(np.all(lab == np.asarray(coords), axis=1))[0]
        if len(hits) != 1:
            raise KeyError(f"no vertex with label {tuple(coords)} in part {part}")
        return self.part_offset(part) + int(hits[0])

    def validate(self) -> None:
        """Check symmetry, sortedness and declared regularity."""
        for v in range(self.n):
            row = self.indices[self.indptr[v]:self.indptr[v + 1]]
            if len(row) > 1 and np.any(np.diff(row) <= 0):
                raise ValueError(f"neighbour list of {v} not sorted/unique")
        e = self.edge_array()
        if 2 * len(e) != len(self.indices):
            raise ValueError("adjacency is not symmetric")
        reg = self.meta.get("regularity")
        if reg is not None and self.regular_degree() != reg:
            raise ValueError(f"declared {reg}-regular but degrees disagree")

    def induced(self, vertices: Sequence[int]) -> tuple["Graph", np.ndarray]:
        """Induced subgraph on a vertex subset; returns it with the index map."""
        keep = np.unique(np.asarray(vertices, dtype=np.int64))
        pos = np.full(self.n, -1, dtype=np.int64)
        pos[keep] = np.arange(len(keep))
        e = self.edge_array()
        e = e[(pos[e[:, 0]] >= 0) & (pos[e[:, 1]] >= 0)]
        bounds = np.cumsum((0,) + self.part_sizes)
        sizes = tuple(int(np.count_nonzero((keep >= lo) & (keep < hi)))
                      for lo, hi in zip(bounds[:-1], bounds[1:]))
        labels = []
        for p, lab in enumerate(self.labels):
            if lab is None:
                labels.append(None)
            else:
                sel = keep[(keep >= bounds[p]) & (keep < bounds[p + 1])] - bounds[p]
                labels.append(lab[sel])
        sub = Graph.from_edges(sizes, pos[e], labels, dict(self.meta), check_duplicates=False)
        return sub, keep


def degree(g: Graph, v: int) -> int:
    return g.degree(v)


def neighbors(g: Graph, v: int) -> list[int]:
    return g.neighbors(v)


def component_vertices(g: Graph, v: int) -> np.ndarray:
    dist = kernels.bfs_dist(g.indptr, g.indices, g._check(v))
    return np.nonzero(dist >= 0)[0]


def component_of(g: Graph, v: int) -> tuple[Graph, np.ndarray]:
    """Connected component containing v, with the map back to ids of g."""
    sub, keep = g.induced(component_vertices(g, v))
    sub.meta["component_of"] = g.label(v)
    return sub, keep


@dataclass
class TripleSystem:
    """A 3-uniform hypergraph.

    With three parts every triple takes one vertex from each part (global ids
    in part order).  With a single part it is an arbitrary 3-graph with each
    triple stored as sorted ids.  ``generator``, when set, produces links
    without materializing the triples.
    """

    part_sizes: tuple[int, ...]
    triples: np.ndarray | None
    labels: list[np.ndarray | None] = field(default_factory=list)
    meta: dict = field(default_factory=dict)
    generator: object | None = None

    def __post_init__(self):
        if self.triples is not None:
            t = np.asarray(self.triples, dtype=np.int64).reshape(-1, 3)
            if len(self.part_sizes) == 1:
                t = np.sort(t, axis=1)
            t = t[np.lexsort(t.T[::-1])] if len(t) else t
            if len(t) > 1 and np.any(np.all(t[1:] == t[:-1], axis=1)):
                raise ValueError("duplicate triple")
            if len(t):
                if len(self.part_sizes) == 3:
                    bounds = np.cumsum((0,) + tuple(self.part_sizes))
                    for j in range(3):
                        if np.any((t[:, j] < bounds[j]) | (t[:, j] >= bounds[j + 1])):
                            raise ValueError("triple does not take one vertex per part")
                elif np.any(t[:, 0] == t[:, 1]) or np.any(t[:, 1] == t[:, 2]):
                    raise ValueError("triple with repeated vertex")
            self.triples = t
        if not self.labels:
            self.labels = [None] * len(self.part_sizes)

    @property
    def n(self) -> int:
        return int(sum(self.part_sizes))

    @property
    def num_edges(self) -> int:
        if self.triples is not None:
            return len(self.triples)
        return int(self.generator.num_edges())

    def part_offset(self, part: int) -> int:
        return int(sum(self.part_sizes[:part]))

    def locate(self, v: int) -> tuple[int, int]:
        v = int(v)
        if not 0 <= v < self.n:
            raise KeyError(f"unknown vertex {v}")
        for p, size in enumerate(self.part_sizes):
            if v < size:
                return p, v
            v -= size
        raise AssertionError

    def edge_array(self) -> np.ndarray:
        if self.triples is not None:
            return self.triples
        return self.generator.all_triples()

    def label(self, v: int) -> str:
        part, local = self.locate(v)
        name = PART_NAMES[part] if len(self.part_sizes) > 1 else "V"
        lab = self.labels[part]
        coords = (local,) if lab is None else tuple(int(c) for c in lab[local])
        return f"{name}:({','.join(map(str, coords))})"

    def without(self, rows: Iterable[int]) -> "TripleSystem":
        """Copy with the given triple rows removed."""
        mask = np.ones(len(self.triples), dtype=bool)
        mask[list(rows)] = False
        return TripleSystem(self.part_sizes, self.triples[mask], list(self.labels), dict(self.meta))


def link_of(h: TripleSystem, x: int) -> Graph:
    """Link graph of x.

    For a 3-partite system the link is bipartite on the two parts not
    containing x, in part order, with local indices preserved.  For a general
    3-graph it lives on all vertices other than x, renumbered in order.
    """
    part, local = h.locate(x)
    if h.generator is not None:
        return h.generator.link(part, local)
    t = h.triples
    if len(h.part_sizes) == 3:
        rows = t[t[:, part] == x]
        others = [j for j in range(3) if j != part]
        sizes = [h.part_sizes[j] for j in others]
        u = rows[:, others[0]] - h.part_offset(others[0])
        v = rows[:, others[1]] - h.part_offset(others[1])
        labels = [h.labels[j] for j in others]
        meta = {"family": "link", "apex": h.label(x)}
        return Graph.bipartite(sizes[0], sizes[1], u, v, labels, meta)
    rows = t[np.any(t == x, axis=1)]
    pairs = rows[rows != x].reshape(-1, 2)
    pairs = np.where(pairs > x, pairs - 1, pairs)
    return Graph.from_edges((h.n - 1,), pairs, meta={"family": "link", "apex": h.label(x)})


# -- edge-list files -----------------------------------------------------------

def _fmt(name: str, coords) -> str:
    return f"{name}:({','.join(str(int(c)) for c in coords)})"


def _part_coords(labels, part: int, local: np.ndarray) -> np.ndarray:
    lab = labels[part] if part < len(labels) else None
    if lab is None:
        return local.reshape(-1, 1)
    return lab[local]


def _header(meta: dict, part_sizes: Sequence[int]) -> str:
    modulus = meta.get("modulus", ())
    return ("# family={} k={} p={} n={} modulus={} part_sizes={}".format(
        meta.get("family", "graph"), meta.get("k", 0), meta.get("p", 0), meta.get("n", 0),
        ",".join(map(str, modulus)), ",".join(map(str, part_sizes))))


def serialize(obj: Graph | TripleSystem, sink: TextIO) -> None:
    """Write the edge-list format; isolated vertices get a line of their own."""
    sink.write(_header(obj.meta, obj.part_sizes) + "\n")
    np_parts = len(obj.part_sizes)
    names = PART_NAMES if np_parts > 1 else "V"
    offsets = np.cumsum((0,) + tuple(obj.part_sizes))
    rows = obj.edge_array()
    cols = rows.shape[1] if len(rows) else (3 if isinstance(obj, TripleSystem) else 2)
    touched = np.zeros(int(offsets[-1]), dtype=bool)
    texts = []
    for j in range(cols):
        if np_parts > 1:
            part = j
        else:
            part = 0
        ids = rows[:, j] if len(rows) else np.empty(0, dtype=np.int64)
        touched[ids] = True
        coords = _part_coords(obj.labels, part, ids - offsets[part])
        texts.append([_fmt(names[part], c) for c in coords.tolist()])
    for parts in zip(*texts):
        sink.write(" ".join(parts) + "\n")
    for v in np.nonzero(~touched)[0].tolist():
        part = int(np.searchsorted(offsets, v, side="right") - 1)
        coords = _part_coords(obj.labels, part, np.array([v - offsets[part]]))[0]
        sink.write(_fmt(names[part], coords) + "\n")


_TOKEN = re.compile(r"^([ABCV]):\(([-0-9,]*)\)$")
_HEADER = re.compile(r"^# family=(\S+) k=(\d+) p=(\d+) n=(\d+) modulus=([0-9,]*) part_sizes=([0-9,]+)$")


def deserialize(source: TextIO | str) -> Graph | TripleSystem:
    """Inverse of :func:`serialize`; raises GraphFormatError with a line number."""
    if isinstance(source, str):
        source = io.StringIO(source)
    lines = source.read().splitlines()
    if not lines:
        raise GraphFormatError("empty input", 1)
    m = _HEADER.match(lines[0].strip())
    if not m:
        raise GraphFormatError("malformed header", 1)
    family, k, p, n, modulus, sizes = m.groups()
    part_sizes = tuple(int(s) for s in sizes.split(","))
    meta = {"family": family, "k": int(k), "p": int(p), "n": int(n),
            "modulus": tuple(int(c) for c in modulus.split(",")) if modulus else ()}
    nparts = len(part_sizes)
    names = PART_NAMES[:nparts] if nparts > 1 else "V"
    seen: list[dict[tuple, None]] = [dict() for _ in range(nparts)]
    records: list[tuple[int, list[tuple[int, tuple]]]] = []
    width = None
    for lineno, raw in enumerate(lines[1:], start=2):
        raw = raw.strip()
        if not raw or raw.startswith("#"):
            continue
        toks = []
        for tok in raw.split():
            tm = _TOKEN.match(tok)
            if not tm:
                raise GraphFormatError(f"bad vertex token {tok!r}", lineno)
            name, body = tm.groups()
            if name not in names:
                raise GraphFormatError(f"unknown part {name!r}", lineno)
            part = names.index(name)
            try:
                coords = tuple(int(c) for c in body.split(","))
            except ValueError:
                raise GraphFormatError(f"bad coordinates in {tok!r}", lineno) from None
            seen[part].setdefault(coords)
            toks.append((part, coords))
        if len(toks) > 1:
            if width is None:
                width = len(toks)
            elif len(toks) != width:
                raise GraphFormatError("inconsistent row width", lineno)
            if nparts > 1 and [t[0] for t in toks] != list(range(len(toks))):
                raise GraphFormatError("vertices must be listed in part order", lineno)
            records.append((lineno, toks))
    for part in range(nparts):
        if len(seen[part]) != part_sizes[part]:
            raise GraphFormatError(
                f"part {names[part]} declares {part_sizes[part]} vertices, found {len(seen[part])}")
    offsets = np.cumsum((0,) + part_sizes)
    index = []
    labels: list[np.ndarray | None] = []
    for part in range(nparts):
        keys = sorted(seen[part])
        index.append({c: i for i, c in enumerate(keys)})
        dims = {len(c) for c in keys}
        if len(dims) > 1:
            raise GraphFormatError(f"mixed label lengths in part {names[part]}")
        labels.append(np.array(keys, dtype=np.int64).reshape(len(keys), -1) if keys else None)
    rows = np.array([[offsets[p] + index[p][c] for p, c in toks] for _, toks in records],
                    dtype=np.int64).reshape(len(records), width or 2)
    if rows.shape[1] == 3:
        try:
            return TripleSystem(part_sizes, rows, labels, meta)
        except ValueError as exc:
            raise GraphFormatError(str(exc), _dup_line(records, rows)) from None
    key = np.sort(rows, axis=1)
    order = np.lexsort(key.T[::-1])
    dup = np.nonzero(np.all(key[order][1:] == key[order][:-1], axis=1))[0]
    if len(dup):
        raise GraphFormatError("duplicate edge", records[order[dup[0] + 1]][0])
    return Graph.from_edges(part_sizes, rows, labels, meta)


def _dup_line(records, rows) -> int | None:
    seen = {}
    for (lineno, _), r in zip(records, rows.tolist()):
        key = tuple(sorted(r))
        if key in seen:
            return lineno
        seen[key] = lineno
    return None


def dumps(obj: Graph | TripleSystem) -> str:
    buf = io.StringIO()
    serialize(obj, buf)
    return buf.getvalue()


def relabel_sorted(g: Graph) -> Graph:
    """Reorder vertices inside each part by label so ids match file order."""
    perm = np.arange(g.n, dtype=np.int64)
    offsets = np.cumsum((0,) + g.part_sizes)
    labels = []
    for p, lab in enumerate(g.labels):
        if lab is None:
            labels.append(None)
            continue
        order = np.lexsort(lab.T[::-1])
        labels.append(lab[order])
        inv = np.empty_like(order)
        inv[order] = np.arange(len(order))
        perm[offsets[p]:offsets[p + 1]] = offsets[p] + inv
    e = perm[g.edge_array()]
    return Graph.from_edges(g.part_sizes, e, labels, g.meta, check_duplicates=False)
