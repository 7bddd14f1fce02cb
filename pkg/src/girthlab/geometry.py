"""Projective points and lines over GF(q), arcs, Plücker coordinates, the
arc-construction graphs, Wenger graphs H(k,q) and the char-2 family G(2^r, s).

Sigma_0 is the hyperplane with first homogeneous coordinate 0.  A point is
normalised so its first nonzero coordinate is 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import gcd
from typing import Iterable, Sequence

import numpy as np

from .dseries import all_coords, encode, field_meta
from .field import FieldElem, FieldSpec, gf
from .graphcore import Graph, relabel_sorted

ARC_GRAPH_LIMIT = 10 ** 6   # q^t
BIPARTITE_LIMIT = 10 ** 7   # 2 q^k


class GeometryError(ValueError):
    pass


def _field(q) -> FieldSpec:
    return q if isinstance(q, FieldSpec) else gf(int(q))


def normalize_rows(rows: np.ndarray, f: FieldSpec) -> np.ndarray:
    """Scale each row so its first nonzero entry is 1 (zero rows untouched)."""
    rows = np.asarray(rows, dtype=np.int64)
    nz = rows != 0
    first = np.argmax(nz, axis=1)
    lead = rows[np.arange(len(rows)), first]
    lead = np.where(lead == 0, 1, lead)
    scale = f.inv_table[lead]
    return f.mul_table[rows, scale[:, None]]


@dataclass(frozen=True)
class ProjPoint:
    coords: tuple[FieldElem, ...]

    def __post_init__(self):
        if not any(self.coords):
            raise GeometryError("the zero vector is not a projective point")
        f = self.coords[0].field
        norm = normalize_rows(np.array([[c.value for c in self.coords]]), f)[0]
        object.__setattr__(self, "coords", tuple(FieldElem(f, int(v)) for v in norm))

    @classmethod
    def of(cls, f: FieldSpec, values: Sequence[int]) -> "ProjPoint":
        return cls(tuple(FieldElem(f, int(v) % f.q) for v in values))

    @property
    def field(self) -> FieldSpec:
        return self.coords[0].field

    def values(self) -> tuple[int, ...]:
        return tuple(c.value for c in self.coords)

    @property
    def in_sigma0(self) -> bool:
        return self.coords[0].value == 0

    def __str__(self) -> str:
        return "[" + ":".join(str(v) for v in self.values()) + "]"


def pair_index(t: int) -> list[tuple[int, int]]:
    """0-based (i, j), i < j, in the order w_12, w_13, ..., w_{t,t+1}."""
    return list(combinations(range(t + 1), 2))


def plucker_rows(p1: np.ndarray, p2: np.ndarray, f: FieldSpec, normalize: bool = True) -> np.ndarray:
    """2x2 minors of stacked spanning pairs, one row of C(t+1, 2) per line."""
    mul, sub = f.mul_table, f.sub_table
    cols = [sub[mul[p1[:, i], p2[:, j]], mul[p1[:, j], p2[:, i]]]
            for i, j in pair_index(p1.shape[1] - 1)]
    w = np.stack(cols, axis=1)
    return normalize_rows(w, f) if normalize else w


@dataclass(frozen=True)
class ProjLine:
    p: ProjPoint
    r: ProjPoint

    def __post_init__(self):
        if self.p == self.r:
            raise GeometryError("a line needs two distinct points")
        if len(self.p.coords) != len(self.r.coords):
            raise GeometryError("points live in different spaces")

    @property
    def plucker(self) -> tuple[FieldElem, ...]:
        return plucker_coords(self)


def plucker_coords(line: ProjLine, normalize: bool = True) -> tuple[FieldElem, ...]:
    f = line.p.field
    w = plucker_rows(np.array([line.p.values()]), np.array([line.r.values()]), f, normalize)[0]
    if not w.any():
        raise GeometryError("degenerate span")
    return tuple(FieldElem(f, int(v)) for v in w)


@dataclass(frozen=True)
class Arc:
    points: tuple[ProjPoint, ...]
    tag: str
    t: int

    def __post_init__(self):
        if any(not p.in_sigma0 for p in self.points):
            raise GeometryError("arc points must lie in Sigma_0")

    @property
    def field(self) -> FieldSpec:
        return self.points[0].field

    def matrix(self) -> np.ndarray:
        return np.array([p.values() for p in self.points], dtype=np.int64)

    def __len__(self) -> int:
        return len(self.points)


def nrc_arc(t: int, q, include_infinity: bool = True) -> Arc:
    """Normal rational curve [0:1:x:...:x^(t-1)], optionally with [0:...:0:1]."""
    if t < 2:
        raise GeometryError("t must be at least 2")
    f = _field(q)
    pts = [ProjPoint.of(f, [0] + [f._pow(x, e) for e in range(t)]) for x in range(f.q)]
    if include_infinity:
        pts.append(ProjPoint.of(f, [0] * t + [1]))
    return Arc(tuple(pts), "NRC" if include_infinity else "NRC_minus", t)


def frobenius_arc(r: int, s: int) -> Arc:
    """[0:1:x:x^(2^s)] for x in GF(2^r), inside Sigma_0 of PG(3, 2^r)."""
    if not 1 <= s <= r or gcd(s, r) != 1:
        raise GeometryError(f"need 1 <= s <= r and gcd(s, r) = 1, got r={r}, s={s}")
    f = gf(2 ** r)
    if f.p != 2:
        raise GeometryError("Frobenius arc needs characteristic 2")
    e = 2 ** s
    pts = [ProjPoint.of(f, [0, 1, x, f._pow(x, e)]) for x in range(f.q)]
    return Arc(tuple(pts), f"Frobenius({s})", 3)


def rank(rows: np.ndarray, f: FieldSpec) -> int:
    """Rank over GF(q) by Gaussian elimination."""
    m = np.array(rows, dtype=np.int64)
    if m.size == 0:
        return 0
    add, mul, neg, inv = f.add_table, f.mul_table, f.neg_table, f.inv_table
    r = 0
    nrows, ncols = m.shape
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if m[i, c]), None)
        if piv is None:
            continue
        m[[r, piv]] = m[[piv, r]]
        m[r] = mul[m[r], inv[m[r, c]]]
        for i in range(nrows):
            if i != r and m[i, c]:
                m[i] = add[m[i], mul[m[r], neg[m[i, c]]]]
        r += 1
        if r == nrows:
            break
    return r


def is_arc(points: Iterable[ProjPoint], t: int, q, subset_size: int | None = None) -> bool:
    """Whether every ``subset_size`` of the points is linearly independent.

    Points live in Sigma_0 of PG(t, q), i.e. in PG(t-1, q) after dropping the
    first coordinate, whose hyperplanes are spanned by t-1 points; so the
    default size is t (no t points on a common hyperplane).
    """
    f = _field(q)
    pts = list(points)
    if any(not p.in_sigma0 for p in pts):
        raise GeometryError("is_arc expects points of Sigma_0")
    size = t if subset_size is None else subset_size
    vecs = np.array([p.values()[1:] for p in pts], dtype=np.int64)
    if len(pts) < size:
        return len(pts) == 0 or rank(vecs, f) == len(pts)
    return all(rank(vecs[list(c)], f) == size for c in combinations(range(len(pts)), size))


# -- graphs -------------------------------------------------------------------------

def build_arc_graph(t: int, q, arc: Arc) -> Graph:
    """G_arc: affine points of PG(t,q) versus lines meeting Sigma_0 in the arc.

    Part A holds points [1:a_1:...:a_t] (labels are the t+1 homogeneous
    coordinates), part B the lines (labels are normalised Plücker
    coordinates).  Both parts are sorted by label.
    """
    f = _field(q)
    if f.q ** t > ARC_GRAPH_LIMIT:
        raise GeometryError(f"q^t = {f.q ** t} exceeds {ARC_GRAPH_LIMIT}")
    if arc.t != t:
        raise GeometryError(f"arc lives in PG({arc.t}, q), not PG({t}, q)")
    aff = all_coords(t, f.q)
    n = len(aff)
    per_arc = f.q ** (t - 1)
    a_idx, b_idx, line_labels = [], [], []
    ones = np.ones((n, 1), dtype=np.int64)
    for ai, pt in enumerate(arc.points):
        v = np.array(pt.values()[1:], dtype=np.int64)
        j = int(np.argmax(v != 0))
        # canonical affine point on the line: coordinate j cleared
        canon = f.sub_table[aff, f.mul_table[aff[:, j][:, None], v[None, :]]]
        key = encode(np.delete(canon, j, axis=1), f.q) if t > 1 else np.zeros(n, dtype=np.int64)
        a_idx.append(np.arange(n))
        b_idx.append(ai * per_arc + key)
        reps = np.zeros((per_arc, t), dtype=np.int64)
        reps[key] = canon
        p1 = np.hstack([np.ones((per_arc, 1), dtype=np.int64), reps])
        p2 = np.broadcast_to(np.array(pt.values(), dtype=np.int64), p1.shape)
        line_labels.append(plucker_rows(p1, p2, f))
    n_lines = per_arc * len(arc)
    meta = {"family": f"arc:{arc.tag}", "k": t, **field_meta(f)}
    labels = [np.hstack([ones, aff]), np.concatenate(line_labels)]
    g = Graph.bipartite(n, n_lines, np.concatenate(a_idx), np.concatenate(b_idx), labels, meta)
    return relabel_sorted(g)


def _wenger_like(k: int, f: FieldSpec, exponents: Sequence[int], family: str) -> Graph:
    if 2 * f.q ** k > BIPARTITE_LIMIT:
        raise GeometryError(f"2*q^k = {2 * f.q ** k} exceeds {BIPARTITE_LIMIT}")
    a = all_coords(k, f.q)
    n = len(a)
    a_idx, b_idx = [], []
    for b1 in range(f.q):
        b = np.empty_like(a)
        b[:, 0] = b1
        for i, e in enumerate(exponents, start=1):
            # a_i + b_i = a_1 * b_1^e
            b[:, i] = f.sub_table[f.mul_table[a[:, 0], f._pow(b1, e)], a[:, i]]
        a_idx.append(np.arange(n))
        b_idx.append(encode(b, f.q))
    meta = {"family": family, "k": k, **field_meta(f), "regularity": f.q}
    return Graph.bipartite(n, n, np.concatenate(a_idx), np.concatenate(b_idx), [a, a], meta,
                           check_duplicates=False)


def build_wenger(k: int, q) -> Graph:
    """H(k,q): a_i + b_i = a_1 b_1^(i-1) for 2 <= i <= k."""
    if k < 2:
        raise GeometryError("k must be at least 2")
    return _wenger_like(k, _field(q), list(range(1, k)), "H")


def build_g2rs(r: int, s: int) -> Graph:
    """G(2^r, s): b_2 + a_2 = a_1 b_1 and b_3 + a_3 = a_1 b_1^(2^s)."""
    if not 1 <= s <= r or gcd(s, r) != 1:
        raise GeometryError(f"need 1 <= s <= r and gcd(s, r) = 1, got r={r}, s={s}")
    f = gf(2 ** r)
    g = _wenger_like(3, f, [1, 2 ** s], f"g2rs:s={s}")
    return g


def arc_to_wenger_map(line_plucker: Sequence[int] | np.ndarray, k: int) -> tuple[int, ...]:
    """(b_1, ..., b_k) = (w_13, w_23, w_24, ..., w_{2,k+1}) of a normalised line."""
    w = np.asarray(line_plucker, dtype=np.int64)
    pairs = pair_index(k)
    if w.shape[-1] != len(pairs):
        raise GeometryError(f"expected {len(pairs)} Plücker coordinates")
    if w[..., pairs.index((0, 1))].ravel().tolist() != [1] * max(1, w[..., 0].size):
        raise GeometryError("line does not meet Sigma_0 in the curve chart (w_12 != 1)")
    cols = [pairs.index((0, 2))] + [pairs.index((1, j)) for j in range(2, k + 1)]
    out = w[..., cols]
    return tuple(int(v) for v in out) if out.ndim == 1 else out


def arc_wenger_vertex_map(arc_graph: Graph, k: int, q: int) -> np.ndarray:
    """Global vertex map G_arc -> H(k,q) (or G(2^r,s)) built from labels."""
    pts, lines = arc_graph.labels
    if np.any(pts[:, 0] != 1):
        raise GeometryError("point part must hold affine points [1:a]")
    a_img = encode(pts[:, 1:], q)
    b_img = encode(arc_to_wenger_map(lines, k), q) + q ** k
    return np.concatenate([a_img, b_img])


def plucker_relations_hold(line_labels: np.ndarray, f: FieldSpec, k: int,
                           arc_exponents: Sequence[int] | None = None) -> bool:
    """w_1j = w_13^(j-2) and w_ij = w_13^(i-2) (w_2j - w_2i w_13^(j-i)) on every line."""
    w = np.asarray(line_labels, dtype=np.int64)
    pairs = pair_index(k)
    col = {p: i for i, p in enumerate(pairs)}
    x = w[:, col[(0, 2)]] if k >= 2 else np.zeros(len(w), dtype=np.int64)
    mul, sub = f.mul_table, f.sub_table
    ok = np.ones(len(w), dtype=bool)
    exps = list(range(k)) if arc_exponents is None else list(arc_exponents)
    pw = {e: f.pow_table(e) for e in set(exps) | set(range(k + 1))}
    for j in range(1, k + 1):
        ok &= w[:, col[(0, j)]] == pw[exps[j - 1]][x]
    if arc_exponents is None:
        for i in range(2, k + 1):
            for j in range(i + 1, k + 1):
                inner = sub[w[:, col[(1, j)]], mul[w[:, col[(1, i)]], pw[j - i][x]]]
                ok &= w[:, col[(i, j)]] == mul[pw[i - 1][x], inner]
    return bool(ok.all())
