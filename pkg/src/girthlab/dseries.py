"""D(k,q), D'(k,q) and the triple systems D3(k,q).

Coordinates follow the fixed order (1), (1,1), (1,2), (2,1), then for each
i >= 2 the block (i,i), (i,i)', (i,i+1), (i+1,i).  Internally a label is a
pair ``(kind, i)`` with kind ``d`` = a_ii, ``p`` = a'_ii, ``u`` = a_{i,i+1},
``l`` = a_{i+1,i}; position 0 is a_1 = a_{0,1} = a_{1,0}.

Every defining relation is triangular: relation r (r = 1..k-1) involves
only coordinates at positions <= r of the partner, so it can be solved for
the partner's coordinate r.  All builders below are vectorised over whole
coordinate arrays using the field's lookup tables.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np

from .field import FieldElem, FieldSpec, gf
from .graphcore import Graph, TripleSystem

BIPARTITE_LIMIT = 10 ** 7      # 2 q^k
EXPLICIT_TRIPLE_LIMIT = 10 ** 8  # q^(2k+1)
AUTO_EXPLICIT = 10 ** 6


class Family(str, Enum):
    D = "D"
    DPRIME = "Dprime"


class SizeError(ValueError):
    pass


# -- coordinate scheme -------------------------------------------------------------

def position(label: tuple[str, int]) -> int | None:
    """0-based position of a label, or None for the boundary conventions."""
    kind, i = label
    if kind in "ul" and i == 0:
        return 0
    if kind in "dp" and i == 1:
        return 1
    if i == 1:
        return 2 if kind == "u" else 3
    if i >= 2:
        return 4 * i - 4 + "dpul".index(kind)
    return None


def label_at(pos: int) -> tuple[str, int]:
    if pos == 0:
        return ("u", 0)
    if pos <= 3:
        return [("d", 1), ("u", 1), ("l", 1)][pos - 1]
    i, r = divmod(pos, 4)
    return ("dpul"[r], i + 1)


def label_name(pos: int) -> str:
    kind, i = label_at(pos)
    if pos == 0:
        return "(1)"
    return {"d": f"({i},{i})", "p": f"({i},{i})'", "u": f"({i},{i + 1})",
            "l": f"({i + 1},{i})"}[kind]


@dataclass(frozen=True)
class CoordScheme:
    k: int

    @property
    def labels(self) -> list[str]:
        return [label_name(p) for p in range(self.k)]


def relation(pos: int) -> tuple[str, int]:
    """``(kind, src)`` of the relation solved for position pos >= 1.

    kind ``A``: product term is a_src * b_1; kind ``B``: a_1 * b_src.
    """
    kind, i = label_at(pos)
    if kind == "d":
        return "A", position(("u", i - 1))
    if kind == "p":
        return "B", position(("l", i - 1))
    if kind == "u":
        return "B", position(("d", i))
    return "A", position(("p", i))


def _check_triangular(k_max: int = 64) -> None:
    for pos in range(1, k_max):
        assert label_at(pos) and position(label_at(pos)) == pos
        _, src = relation(pos)
        assert src is not None and src < pos, f"relation {pos} is not triangular"


_check_triangular()


def _dprime_lin(pos: int) -> int:
    return -1 if pos == 1 else 1


# -- vertices ------------------------------------------------------------------

@dataclass(frozen=True)
class DVertex:
    side: str
    coords: tuple[FieldElem, ...]

    def __post_init__(self):
        if self.side not in ("A", "B", "C"):
            raise ValueError(f"bad side {self.side!r}")

    @property
    def k(self) -> int:
        return len(self.coords)

    @property
    def field(self) -> FieldSpec:
        return self.coords[0].field

    def values(self) -> tuple[int, ...]:
        return tuple(c.value for c in self.coords)

    def __str__(self) -> str:
        return f"{self.side}:({','.join(str(c.value) for c in self.coords)})"


def vertex(side: str, f: FieldSpec, values: Sequence[int]) -> DVertex:
    return DVertex(side, tuple(FieldElem(f, int(v)) for v in values))


def all_coords(k: int, q: int) -> np.ndarray:
    """All of F_q^k as an (q^k, k) array, row index = encoded vertex index."""
    idx = np.arange(q ** k, dtype=np.int64)
    out = np.empty((q ** k, k), dtype=np.int64)
    for j in range(k):
        out[:, j] = (idx // q ** (k - 1 - j)) % q
    return out


def encode(coords: np.ndarray, q: int) -> np.ndarray:
    coords = np.asarray(coords, dtype=np.int64)
    out = np.zeros(coords.shape[:-1], dtype=np.int64)
    for j in range(coords.shape[-1]):
        out = out * q + coords[..., j]
    return out


# -- vectorised solvers ----------------------------------------------------------

def _col(x, n):
    x = np.asarray(x, dtype=np.int64)
    return np.broadcast_to(x, (n,)) if x.ndim == 0 else x


def solve_partner(family: Family, f: FieldSpec, known: np.ndarray, first, known_side: str = "A") -> np.ndarray:
    """Solve the D / D' relations for the partner of each row of ``known``.

    ``first`` is the partner's first coordinate (scalar or per-row array).
    With ``known_side="A"`` the rows are A-vertices and B-vertices are
    returned; with ``"B"`` the roles are swapped.
    """
    family = Family(family)
    add, mul, neg = f.add_table, f.mul_table, f.neg_table
    n, k = known.shape
    out = np.empty_like(known)
    out[:, 0] = _col(first, n)
    a_is_known = known_side == "A"
    for p in range(1, k):
        kind, src = relation(p)
        a_src = known[:, src] if a_is_known else out[:, src]
        b_src = out[:, src] if a_is_known else known[:, src]
        a_1 = known[:, 0] if a_is_known else out[:, 0]
        b_1 = out[:, 0] if a_is_known else known[:, 0]
        term = mul[a_src, b_1] if kind == "A" else mul[a_1, b_src]
        acc = add[known[:, p], term]
        if family is Family.DPRIME:
            lin = add[a_src, b_src]
            if _dprime_lin(p) < 0:
                lin = neg[lin]
            acc = add[acc, lin]
        out[:, p] = neg[acc]
    return out


def relations_hold(family: Family, f: FieldSpec, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Independent re-evaluation of all k-1 relations; True where all vanish."""
    family = Family(family)
    add, mul, neg = f.add_table, f.mul_table, f.neg_table
    ok = np.ones(len(a), dtype=bool)
    for p in range(1, a.shape[1]):
        kind, src = relation(p)
        term = mul[a[:, src], b[:, 0]] if kind == "A" else mul[a[:, 0], b[:, src]]
        val = add[add[a[:, p], b[:, p]], term]
        if family is Family.DPRIME:
            lin = add[a[:, src], b[:, src]]
            val = add[val, neg[lin] if p == 1 else lin]
        ok &= val == 0
    return ok


def solve_third_array(f: FieldSpec, u: np.ndarray, v: np.ndarray, first) -> np.ndarray:
    """Solve the D3 relations for w given rows u (part X) and v (part X+1).

    The relations are invariant under the cyclic shift A -> B -> C -> A, so
    the same routine serves any part as the unknown.
    """
    add, mul, neg = f.add_table, f.mul_table, f.neg_table
    n, k = u.shape
    w = np.empty_like(u)
    w[:, 0] = _col(first, n)
    for p in range(1, k):
        kind, src = relation(p)
        if kind == "A":
            t = add[add[mul[u[:, src], v[:, 0]], mul[v[:, src], w[:, 0]]], mul[w[:, src], u[:, 0]]]
        else:
            t = add[add[mul[u[:, 0], v[:, src]], mul[v[:, 0], w[:, src]]], mul[w[:, 0], u[:, src]]]
        w[:, p] = neg[add[add[u[:, p], v[:, p]], t]]
    return w


def hyperedge_holds(f: FieldSpec, a: np.ndarray, b: np.ndarray, c: np.ndarray) -> np.ndarray:
    add, mul = f.add_table, f.mul_table
    ok = np.ones(len(a), dtype=bool)
    for p in range(1, a.shape[1]):
        kind, src = relation(p)
        if kind == "A":
            t = add[add[mul[a[:, src], b[:, 0]], mul[b[:, src], c[:, 0]]], mul[c[:, src], a[:, 0]]]
        else:
            t = add[add[mul[a[:, 0], b[:, src]], mul[b[:, 0], c[:, src]]], mul[c[:, 0], a[:, src]]]
        ok &= add[add[add[a[:, p], b[:, p]], c[:, p]], t] == 0
    return ok


# -- scalar API ----------------------------------------------------------------

def _as_field(q) -> FieldSpec:
    return q if isinstance(q, FieldSpec) else gf(int(q))


def solve_neighbor(family: Family, k: int, q, a: DVertex, b1: FieldElem) -> DVertex:
    """The unique neighbour with first coordinate b1 (symmetric for side B)."""
    if k < 2:
        raise ValueError("k must be at least 2")
    f = _as_field(q)
    if a.k != k:
        raise ValueError(f"vertex has {a.k} coordinates, expected {k}")
    row = np.array([a.values()], dtype=np.int64)
    out = solve_partner(family, f, row, b1.value, known_side="A" if a.side == "A" else "B")
    return vertex("B" if a.side == "A" else "A", f, out[0])


def solve_third(k: int, q, a: DVertex, b: DVertex, c1: FieldElem) -> DVertex:
    """The unique C-vertex with first coordinate c1 completing {a, b, c}."""
    if k < 2:
        raise ValueError("k must be at least 2")
    f = _as_field(q)
    w = solve_third_array(f, np.array([a.values()]), np.array([b.values()]), c1.value)
    return vertex("C", f, w[0])


# -- builders ------------------------------------------------------------------

def field_meta(f: FieldSpec) -> dict:
    return {"p": f.p, "n": f.n, "modulus": f.modulus}


def build_bipartite(family: Family, k: int, q) -> Graph:
    """D(k,q) or D'(k,q) with parts indexed by encoded coordinates."""
    family = Family(family)
    f = _as_field(q)
    if k < 2:
        raise ValueError("k must be at least 2")
    if 2 * f.q ** k > BIPARTITE_LIMIT:
        raise SizeError(f"2*q^k = {2 * f.q ** k} exceeds {BIPARTITE_LIMIT}")
    coords = all_coords(k, f.q)
    n = len(coords)
    a_idx, b_idx = [], []
    base = np.arange(n, dtype=np.int64)
    for b1 in range(f.q):
        b = solve_partner(family, f, coords, b1)
        a_idx.append(base)
        b_idx.append(encode(b, f.q))
    meta = {"family": family.value, "k": k, **field_meta(f), "regularity": f.q}
    return Graph.bipartite(n, n, np.concatenate(a_idx), np.concatenate(b_idx),
                           [coords, coords], meta, check_duplicates=False)


class D3Generator:
    """Implicit D3(k,q): hyperedges and links computed on demand."""

    def __init__(self, k: int, f: FieldSpec):
        self.k, self.f = k, f
        self.coords = all_coords(k, f.q)

    def num_edges(self) -> int:
        return self.f.q ** (2 * self.k + 1)

    def triples_for_a(self, a_local: int) -> np.ndarray:
        q, n = self.f.q, len(self.coords)
        a = np.broadcast_to(self.coords[a_local], self.coords.shape)
        rows = []
        for c1 in range(q):
            c = solve_third_array(self.f, a, self.coords, c1)
            rows.append(np.stack([np.full(n, a_local), np.arange(n) + n,
                                  encode(c, q) + 2 * n], axis=1))
        return np.concatenate(rows)

    def all_triples(self) -> np.ndarray:
        return np.concatenate([self.triples_for_a(i) for i in range(len(self.coords))])

    def link(self, part: int, local: int) -> Graph:
        f, q, coords = self.f, self.f.q, self.coords
        n = len(coords)
        x = np.broadcast_to(coords[local], coords.shape)
        # F(a,b,c) = F(b,c,a) = F(c,a,b): solve for the part after the
        # enumerated one in cyclic order
        us, vs = [], []
        for w1 in range(q):
            w = encode(solve_third_array(f, x, coords, w1), q)
            if part == 0:      # enumerate b, solve c
                us.append(np.arange(n)); vs.append(w)
            elif part == 1:    # enumerate c, solve a; parts (A, C)
                us.append(w); vs.append(np.arange(n))
            else:              # enumerate a, solve b; parts (A, B)
                us.append(np.arange(n)); vs.append(w)
        meta = {"family": "link", "k": self.k, **field_meta(f), "regularity": q,
                "apex": f"{'ABC'[part]}:({','.join(map(str, coords[local]))})"}
        return Graph.bipartite(n, n, np.concatenate(us), np.concatenate(vs),
                               [coords, coords], meta, check_duplicates=False)


def build_triple_system(k: int, q, mode: str = "auto") -> TripleSystem:
    """D3(k,q) on parts A, B, C of size q^k each.

    ``mode`` is ``explicit`` (materialise every triple), ``implicit`` (links
    and triples computed on demand) or ``auto``.
    """
    f = _as_field(q)
    if k < 2:
        raise ValueError("k must be at least 2")
    m = f.q ** (2 * k + 1)
    if mode == "auto":
        mode = "explicit" if m <= AUTO_EXPLICIT else "implicit"
    if mode == "explicit" and m > EXPLICIT_TRIPLE_LIMIT:
        raise SizeError(f"q^(2k+1) = {m} exceeds {EXPLICIT_TRIPLE_LIMIT}")
    gen = D3Generator(k, f)
    n = f.q ** k
    meta = {"family": "D3", "k": k, **field_meta(f)}
    labels = [gen.coords] * 3
    if mode == "explicit":
        return TripleSystem((n, n, n), gen.all_triples(), labels, meta, generator=gen)
    return TripleSystem((n, n, n), None, labels, meta, generator=gen)


# -- explicit relabelings ----------------------------------------------------------

def table2_array(coords: np.ndarray, f: FieldSpec) -> np.ndarray:
    """Explicit isomorphism D'(k,q) -> D(k,q) on rows of coordinates (k <= 6).

    The same formula applies to both sides.
    """
    k = coords.shape[1]
    if k > 6:
        raise ValueError("the explicit isomorphism is only defined for k <= 6")
    add, sub = f.add_table, f.sub_table
    a = coords
    out = a.copy()
    if k > 1:
        out[:, 1] = sub[a[:, 1], a[:, 0]]                      # a11 - a1
    if k > 2:
        out[:, 2] = add[a[:, 2], a[:, 0]]                      # a12 + a1
    if k > 3:
        out[:, 3] = add[a[:, 3], a[:, 0]]                      # a21 + a1
    if k > 4:
        out[:, 4] = sub[add[add[a[:, 4], a[:, 2]], a[:, 1]], a[:, 0]]  # a22 + a12 + a11 - a1
    if k > 5:
        out[:, 5] = sub[add[add[a[:, 5], a[:, 3]], a[:, 1]], a[:, 0]]  # a'22 + a21 + a11 - a1
    return out


def table2_map(v: DVertex, k: int | None = None) -> DVertex:
    k = v.k if k is None else k
    if k > 6:
        raise ValueError("the explicit isomorphism is only defined for k <= 6")
    out = table2_array(np.array([v.values()[:k]]), v.field)
    return vertex(v.side, v.field, out[0])


# The relabeling from the link of (1,0,...,0) to D' subtracts 1 from the first
# coordinate: substituting a1 -> a1 + 1, b1 -> b1 + 1 in the link relations
# gives the D' relations.  Fixed by test_shift_sign_regression.
SHIFT_LINK_TO_DPRIME = -1


def shift_array(coords: np.ndarray, f: FieldSpec, direction: int) -> np.ndarray:
    if f.p != 3:
        raise ValueError("the a1 -> a1 + 1 reduction needs characteristic 3")
    if direction not in (1, -1):
        raise ValueError("direction must be +1 or -1")
    out = coords.copy()
    step = 1 if direction == 1 else f.neg_table[1]
    out[:, 0] = f.add_table[coords[:, 0], step]
    return out


def shift_map(v: DVertex, direction: int) -> DVertex:
    out = shift_array(np.array([v.values()]), v.field, direction)
    return vertex(v.side, v.field, out[0])


def index_map(g_coords: Sequence[np.ndarray], images: Sequence[np.ndarray], q: int,
              target_sizes: Sequence[int], part_order: Sequence[int] | None = None) -> np.ndarray:
    """Global vertex map from per-part coordinate images.

    ``images[p]`` holds, for each vertex of source part p, its coordinates in
    target part ``part_order[p]``.
    """
    part_order = list(range(len(images))) if part_order is None else list(part_order)
    offsets = np.cumsum((0,) + tuple(target_sizes))
    return np.concatenate([offsets[t] + encode(img, q) for img, t in zip(images, part_order)])
