"""Automorphisms of D3(q) in characteristic 3, the normalising chain and
the link scaling map.

Each automorphism adds ``x`` times a source coordinate to a target
coordinate, for a family of (target, source) label pairs, with the same
rule on all three parts.  Source labels outside the coordinate list resolve
through the boundary conventions a_00 = a'_00 = -1, a_{0,-1} = a_{-1,0} = 0,
a_{0,1} = a_{1,0} = a_1, a'_11 = a_11.  Images are computed from the
original coordinates (simultaneous substitution).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .dseries import (SHIFT_LINK_TO_DPRIME, DVertex, all_coords, encode, hyperedge_holds,
                      label_at, position, shift_array, solve_third_array, vertex)
from .field import FieldElem, FieldSpec

KINDS = ("t11", "t12", "t21", "t22", "t22p")
_MIN_M = {"t11": None, "t12": 1, "t21": 1, "t22": 2, "t22p": 2}


class CharacteristicError(ValueError):
    pass


class InapplicableError(ValueError):
    pass


def _require_char3(f: FieldSpec) -> None:
    if f.p != 3:
        raise CharacteristicError(f"these maps need characteristic 3, got {f.p}")


@dataclass(frozen=True)
class AutoSpec:
    """One map of the family: kind t11, t12 = t_{m,m+1}, t21 = t_{m+1,m},
    t22 = t_{m,m}, t22p = t'_{m,m}."""

    kind: str
    m: int | None
    x: int

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown kind {self.kind!r}")
        lo = _MIN_M[self.kind]
        if lo is None and self.m is not None:
            raise ValueError("t11 takes no block index")
        if lo is not None and (self.m is None or self.m < lo):
            raise ValueError(f"{self.kind} needs m >= {lo}")

    def with_x(self, x: int) -> "AutoSpec":
        return AutoSpec(self.kind, self.m, x)

    def token(self) -> str:
        return f"{self.kind}({'' if self.m is None else self.m};{self.x})"

    def primary(self) -> tuple[str, int]:
        """The coordinate that receives the constant -x."""
        return {"t11": ("d", 1), "t12": ("u", self.m), "t21": ("l", self.m),
                "t22": ("d", self.m), "t22p": ("p", self.m)}[self.kind]


def _rules(spec: AutoSpec, i: int, literal_b: bool = False) -> list[tuple[tuple, tuple]]:
    """(target, source) label pairs contributed by row index i."""
    if spec.kind == "t11":
        u_src = ("l", i - 1) if literal_b else ("u", i - 1)
        return [(("d", i), ("d", i - 1)), (("u", i), u_src),
                (("l", i), ("l", i - 1)), (("p", i), ("p", i - 1))]
    r = i - spec.m
    out = []
    if spec.kind == "t12":
        if r >= 1:
            out.append((("d", i), ("l", r - 1)))
        if r >= 0:
            out.append((("u", i), ("p", r)))
    elif spec.kind == "t21":
        if r >= 0:
            out.append((("l", i), ("d", r)))
        if r >= 1:
            out.append((("p", i), ("u", r - 1)))
    elif spec.kind == "t22":
        if r >= 0:
            out.append((("d", i), ("d", r)))
            out.append((("u", i), ("u", r)))
    else:
        if r >= 0:
            out.append((("l", i), ("l", r)))
            out.append((("p", i), ("p", r)))
    return out


def _source(label: tuple[str, int]):
    """Position of a source label, or a constant for convention symbols."""
    kind, j = label
    if kind in "dp" and j == 0:
        return ("const", -1)
    if j < 0:
        return ("const", 0)
    return ("pos", position(label))


def plan(spec: AutoSpec, k: int, literal_b: bool = False) -> list[tuple[int, tuple]]:
    """Resolved ``(target position, source)`` list for truncation k."""
    if position(spec.primary()) >= k:
        raise InapplicableError(f"{spec.token()} addresses coordinates beyond k={k}")
    out = []
    i_max = k // 4 + 2
    for i in range(0, i_max + 1):
        for target, src in _rules(spec, i, literal_b):
            tpos = position(target)
            # convention aliases are not coordinates of their own
            if tpos is None or tpos == 0 or tpos >= k or label_at(tpos) != target:
                continue
            s = _source(src)
            if s[0] == "pos" and s[1] >= tpos:
                raise InapplicableError(f"{spec.token()} reads {src} for {target}: not triangular")
            out.append((tpos, s))
    return out


def apply_array(spec: AutoSpec, coords: np.ndarray, f: FieldSpec, literal_b: bool = False) -> np.ndarray:
    _require_char3(f)
    add, mul, neg = f.add_table, f.mul_table, f.neg_table
    x = spec.x % f.q if spec.x >= 0 else int(neg[-spec.x % f.q])
    out = coords.copy()
    for tpos, (what, val) in plan(spec, coords.shape[1], literal_b):
        if what == "const":
            if val == 0:
                continue
            delta = neg[x]  # -1 * x
            out[:, tpos] = add[out[:, tpos], delta]
        else:
            out[:, tpos] = add[out[:, tpos], mul[coords[:, val], x]]
    return out


def apply_auto(spec: AutoSpec, v: DVertex, k: int | None = None) -> DVertex:
    k = v.k if k is None else k
    out = apply_array(spec, np.array([v.values()[:k]]), v.field)
    return vertex(v.side, v.field, out[0])


@dataclass(frozen=True)
class AutoChain:
    """Maps applied left to right."""

    specs: tuple[AutoSpec, ...]

    def apply_array(self, coords: np.ndarray, f: FieldSpec) -> np.ndarray:
        for s in self.specs:
            coords = apply_array(s, coords, f)
        return coords

    def apply(self, v: DVertex) -> DVertex:
        out = self.apply_array(np.array([v.values()]), v.field)
        return vertex(v.side, v.field, out[0])

    def __str__(self) -> str:
        return "∘".join(s.token() for s in self.specs)


_TOKEN = re.compile(r"^(t11|t12|t21|t22p|t22)\((\d*);(-?\d+)\)$")


def parse_chain(text: str) -> AutoChain:
    specs = []
    for tok in filter(None, (t.strip() for t in text.split("∘"))):
        m = _TOKEN.match(tok)
        if not m:
            raise ValueError(f"bad automorphism token {tok!r}")
        kind, mm, x = m.groups()
        specs.append(AutoSpec(kind, int(mm) if mm else None, int(x)))
    return AutoChain(tuple(specs))


def _zeroing_spec(pos: int, x: int) -> AutoSpec:
    kind, i = label_at(pos)
    if pos == 1:
        return AutoSpec("t11", None, x)
    return AutoSpec({"u": "t12", "l": "t21", "d": "t22", "p": "t22p"}[kind], i, x)


def normalize_vertex(a: DVertex, s: int) -> AutoChain:
    """Chain sending a to (a1, 0, ..., 0, *, ...) with s zeros after a1.

    Greedy: each step zeroes the next coordinate of the running image, using
    the map whose constant term hits that coordinate.
    """
    f = a.field
    _require_char3(f)
    if not 0 <= s <= a.k - 1:
        raise ValueError(f"s must lie in [0, {a.k - 1}]")
    cur = np.array([a.values()], dtype=np.int64)
    specs = []
    for pos in range(1, s + 1):
        spec = _zeroing_spec(pos, int(cur[0, pos]))
        specs.append(spec)
        cur = apply_array(spec, cur, f)
        assert cur[0, pos] == 0
    return AutoChain(tuple(specs))


def scaling_weights(k: int) -> list[int]:
    """Power of a1 dividing each coordinate under the link scaling map."""
    w = []
    for pos in range(k):
        kind, i = label_at(pos)
        if pos == 0:
            w.append(1)
        elif kind in "dp":
            w.append(2 * i)
        else:
            w.append(2 * i + 1)
    return w


def link_scaling_array(a1: int, coords: np.ndarray, f: FieldSpec) -> np.ndarray:
    if a1 == 0:
        raise ZeroDivisionError("link scaling needs a1 != 0")
    inv = int(f.inv_table[a1])
    out = coords.copy()
    for pos, w in enumerate(scaling_weights(coords.shape[1])):
        out[:, pos] = f.mul_table[coords[:, pos], f._pow(inv, w)]
    return out


def link_scaling(a1: FieldElem, v: DVertex) -> DVertex:
    out = link_scaling_array(a1.value, np.array([v.values()]), v.field)
    return vertex(v.side, v.field, out[0])


# -- verification ----------------------------------------------------------------

@dataclass
class AutoVerdict:
    ok: bool
    checked: int
    exhaustive: bool
    inverse_ok: bool
    counterexample: dict | None = None

    def as_dict(self) -> dict:
        return {"ok": self.ok, "checked": self.checked, "exhaustive": self.exhaustive,
                "inverse_ok": self.inverse_ok, "counterexample": self.counterexample}


def _triples(k: int, f: FieldSpec, sample_size: int, seed: int, exhaustive_limit: int):
    total = f.q ** (2 * k + 1)
    if total <= exhaustive_limit:
        coords = all_coords(k, f.q)
        n = len(coords)
        a = coords[np.repeat(np.arange(n), n * f.q)]
        b = coords[np.tile(np.repeat(np.arange(n), f.q), n)]
        c1 = np.tile(np.arange(f.q), n * n)
        exhaustive = True
    else:
        rng = np.random.default_rng(seed)
        a = rng.integers(0, f.q, (sample_size, k))
        b = rng.integers(0, f.q, (sample_size, k))
        c1 = rng.integers(0, f.q, sample_size)
        exhaustive = False
    c = solve_third_array(f, a, b, c1)
    return a, b, c, exhaustive


def _violated(f, a, b, c) -> int:
    """Index of the first failing relation for a single triple."""
    for p in range(2, a.shape[1] + 1):
        if not hyperedge_holds(f, a[:, :p], b[:, :p], c[:, :p])[0]:
            return p - 1
    return -1


def verify_auto(spec: AutoSpec | AutoChain, k: int, f: FieldSpec, sample_size: int = 2000,
                seed: int = 0, exhaustive_limit: int = 10 ** 6, literal_b: bool = False) -> AutoVerdict:
    """Check that hyperedges of D3(k,q) map to hyperedges.

    Also checks whether spec(x) followed by spec(-x) is the identity (single
    maps only; reported, not folded into ``ok``).
    """
    _require_char3(f)
    a, b, c, exhaustive = _triples(k, f, sample_size, seed, exhaustive_limit)
    if isinstance(spec, AutoChain):
        fa, fb, fc = (spec.apply_array(v, f) for v in (a, b, c))
        inverse_ok = True
    else:
        fa, fb, fc = (apply_array(spec, v, f, literal_b) for v in (a, b, c))
        back = apply_array(spec.with_x(-spec.x), fa, f, literal_b)
        inverse_ok = bool(np.array_equal(back, a))
    good = hyperedge_holds(f, fa, fb, fc)
    ok = bool(good.all())
    cex = None
    if not ok:
        i = int(np.nonzero(~good)[0][0])
        cex = {"a": a[i].tolist(), "b": b[i].tolist(), "c": c[i].tolist(),
               "relation": _violated(f, fa[i:i + 1], fb[i:i + 1], fc[i:i + 1])}
    return AutoVerdict(ok, len(a), exhaustive, inverse_ok, cex)


def applicable_specs(k: int, xs: Iterable[int]) -> list[AutoSpec]:
    """Every (kind, m, x) whose primary coordinate lies inside the truncation."""
    out = []
    xs = list(xs)
    for kind in KINDS:
        ms = [None] if kind == "t11" else range(_MIN_M[kind], k + 1)
        for m in ms:
            for x in xs:
                s = AutoSpec(kind, m, x)
                if position(s.primary()) < k:
                    out.append(s)
    return out


# -- links ----------------------------------------------------------------------

@dataclass
class LinkClass:
    family: str             # "D" or "Dprime"
    vertex_map: np.ndarray  # link vertex -> target vertex
    chain: AutoChain


def classify_link(h, x: int) -> LinkClass:
    """Explicit isomorphism from the link of x in D3(k,q) to D(k,q) or D'(k,q).

    By cyclic symmetry every link is read as the link of a C-vertex; the
    normalising chain moves the apex to (x1, 0, ..., 0); x1 = 0 gives D, and
    otherwise link scaling plus the a1 shift gives D'.
    """
    gen = h.generator
    f, k, n = gen.f, gen.k, len(gen.coords)
    _require_char3(f)
    part, local = h.locate(x)
    link = gen.link(part, local)
    u, v = link.labels
    if part == 1:
        u, v = v, u
    chain = normalize_vertex(vertex("C", f, gen.coords[local]), k - 1)
    iu, iv = chain.apply_array(u, f), chain.apply_array(v, f)
    x1 = int(gen.coords[local][0])
    family = "D"
    if x1:
        iu, iv = (shift_array(link_scaling_array(x1, z, f), f, SHIFT_LINK_TO_DPRIME) for z in (iu, iv))
        family = "Dprime"
    m_u, m_v = encode(iu, f.q), n + encode(iv, f.q)
    m = np.concatenate([m_v, m_u]) if part == 1 else np.concatenate([m_u, m_v])
    return LinkClass(family, m, chain)
