"""Command line front end.

Data goes to stdout as JSON lines, a short human summary to stderr.  The
exit code is 0 iff every requested check passed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction

import numpy as np

from . import __version__, analysis, claims, deletion, geometry, kernels
from .dseries import Family, build_bipartite, build_triple_system, vertex
from .field import FieldError, FieldSpec, gf, parse_field
from .graphcore import Graph, GraphFormatError, TripleSystem, deserialize, link_of, serialize
from .symmetry import classify_link, normalize_vertex


class CliError(Exception):
    pass


def _threads(args) -> int:
    if args.threads is not None:
        return args.threads
    return int(os.environ.get("GIRTHLAB_THREADS", "1"))


def _field_meta(f: FieldSpec | None) -> dict | None:
    return None if f is None else {"p": f.p, "n": f.n, "modulus": list(f.modulus), "q": f.q}


def _manifest(args, field: FieldSpec | None = None, seed: int | None = None, t0: float = 0.0) -> dict:
    params = {k: v for k, v in vars(args).items() if k not in ("func", "command") and v is not None}
    m = {"command": args.command, "parameters": params, "field": _field_meta(field),
         "tool_version": __version__, "backend": kernels.BACKEND, "threads": _threads(args),
         "wall_clock_s": round(time.perf_counter() - t0, 3)}
    if seed is not None:
        m["seed"] = seed
    return m


def _emit(record: dict) -> None:
    sys.stdout.write(json.dumps(record, default=str) + "\n")
    sys.stdout.flush()


def _say(msg: str) -> None:
    print(msg, file=sys.stderr)


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise CliError(f"--{missing[0]} is required for family {args.family}")


# -- construct ----------------------------------------------------------------------

def build_object(args) -> tuple[Graph | TripleSystem, FieldSpec | None]:
    fam = args.family
    if fam in ("D", "Dprime", "D3", "H", "arc"):
        _need(args, "q")
        f = parse_field(args.q)
    if fam in ("D", "Dprime"):
        _need(args, "k")
        return build_bipartite(Family(fam), args.k, f), f
    if fam == "D3":
        _need(args, "k")
        return build_triple_system(args.k, f, "explicit"), f
    if fam == "H":
        _need(args, "k")
        return geometry.build_wenger(args.k, f), f
    if fam == "arc":
        t = args.t if args.t is not None else args.k
        if t is None:
            raise CliError("--t is required for family arc")
        if args.arc == "frobenius":
            _need(args, "s")
            if f.p != 2:
                raise CliError("the Frobenius arc needs q = 2^r")
            arc = geometry.frobenius_arc(f.n, args.s)
        else:
            arc = geometry.nrc_arc(t, f, include_infinity=args.arc == "nrc")
        return geometry.build_arc_graph(t, f, arc), f
    if fam == "g2rs":
        _need(args, "r", "s")
        g = geometry.build_g2rs(args.r, args.s)
        return g, gf(2 ** args.r)
    raise CliError(f"unknown family {fam}")


def cmd_construct(args) -> int:
    t0 = time.perf_counter()
    obj, f = build_object(args)
    if args.out in (None, "-"):
        serialize(obj, sys.stdout)
    else:
        with open(args.out, "w") as fh:
            serialize(obj, fh)
    kind = "triples" if isinstance(obj, TripleSystem) else "edges"
    rec = {"record": "construct", "vertices": obj.n, kind: obj.num_edges,
           "part_sizes": list(obj.part_sizes), "out": args.out, "manifest": _manifest(args, f, t0=t0)}
    if args.out not in (None, "-"):
        _emit(rec)
    _say(f"{args.family}: {obj.n} vertices, {obj.num_edges} {kind}")
    return 0


# -- analyze ------------------------------------------------------------------------

def _vertex_ref(g: Graph, text: str, part: int) -> int:
    text = text.strip()
    if ":" in text:
        name, coords = text.split(":", 1)
        return g.find("ABC".index(name), [int(c) for c in coords.strip("()").split(",") if c])
    local = int(text)
    return g.vid(min(part, len(g.part_sizes) - 1), local) if len(g.part_sizes) > 1 else local


def _parse_cycles(g: Graph, spec: str) -> tuple[tuple[int, int], int | None]:
    parts = spec.split(";") if ";" in spec else spec.split(",")
    if len(parts) != 3:
        raise CliError("--cycles takes u,v,L (use ';' as separator with coordinate labels)")
    u, v = _vertex_ref(g, parts[0], 0), _vertex_ref(g, parts[1], 1)
    L = None if parts[2].strip() == "auto" else int(parts[2])
    return (u, v), L


def cmd_analyze(args) -> int:
    t0 = time.perf_counter()
    with open(args.path) as fh:
        g = deserialize(fh)
    if isinstance(g, TripleSystem):
        if args.suspension is None:
            raise CliError("triple systems support only --suspension K")
        v = analysis.is_suspension_free(g, args.suspension)
        rec = {"record": "analyze", "graph_id": args.path, "suspension_free": v.ok,
               "witness": None if v.ok else {"apex": g.label(v.apex), "cycle": [g.label(w) for w in v.cycle]}}
        rec["manifest"] = _manifest(args, t0=t0)
        _emit(rec)
        _say(f"{args.path}: suspension-free for k={args.suspension}: {v.ok}")
        return 0
    rep = analysis.Report(args.path)
    ok = True
    if args.girth or not (args.diameter or args.cycles or args.signature or args.has_cycle):
        gr = analysis.girth(g, args.girth_cap)
        rep.girth, rep.girth_lb = gr.value, gr.lower_bound
        rep.extra["girth_text"] = str(gr)
    if args.diameter:
        base = _vertex_ref(g, args.base, 0)
        rep.diameter, size = analysis.component_diameter(g, base)
        rep.extra["component_size"] = size
    if args.cycles:
        e, L = _parse_cycles(g, args.cycles)
        rep.cycle_count, rep.min_cycle_len = analysis.cycles_through_edge(g, e, L)
        rep.base_edge = [g.label(e[0]), g.label(e[1])]
        if args.expect is not None and rep.cycle_count != args.expect:
            lo = rep.min_cycle_len or 4
            sweep = analysis.cycle_sweep(g, e, range(lo, analysis.MAX_CYCLE_LENGTH + 1, 2))
            match = [L for L, c in sweep.items() if c == args.expect]
            rep.extra["sweep"] = sweep
            rep.extra["matching_length"] = match[0] if match else None
            ok = bool(match)
    if args.has_cycle:
        has, cyc = analysis.has_cycle_of_length(g, args.has_cycle)
        rep.extra[f"has_c{args.has_cycle}"] = has
        rep.extra["witness"] = [g.label(v) for v in cyc] if cyc else None
    if args.signature:
        base = _vertex_ref(g, args.base, 0)
        nb = g.neighbors(base)
        if not nb:
            raise CliError("signature needs a base vertex with a neighbour")
        sig = analysis.signature(g, base, (base, nb[0]), args.girth_cap)
        rep.extra["signature"] = sig.__dict__
    rep.runtime_ms = round((time.perf_counter() - t0) * 1000, 3)
    rec = {"record": "analyze", **rep.as_dict(), "manifest": _manifest(args, t0=t0)}
    _emit(rec)
    _say(f"{args.path}: " + ", ".join(f"{k}={v}" for k, v in rep.as_dict().items()
                                       if k in ("girth", "girth_lb", "diameter", "min_cycle_len", "cycle_count")))
    return 0 if ok else 1


# -- verify -------------------------------------------------------------------------

def _claim_kwargs(name: str, args) -> dict:
    kw = {}
    if name == "arc-wenger" and args.k is not None and args.q is not None:
        kw["cases"] = ((args.k, int(args.q)),)
    elif name == "c6-free" and args.r is not None and args.s is not None:
        kw["cases"] = ((args.r, args.s),)
        kw["identical_rs"] = (args.r,) if args.s == 1 else ()
    elif name in ("separation-diameter", "separation-cycles", "link-classification"):
        if args.k is not None:
            kw["k"] = args.k
        if args.q is not None:
            kw["q"] = int(args.q)
    elif name == "deletion" and args.seed is not None:
        kw["seeds"] = (args.seed,)
    return kw


def cmd_verify(args) -> int:
    t0 = time.perf_counter()
    try:
        fn = claims.resolve(args.claim)
    except KeyError as e:
        raise CliError(str(e.args[0]))
    name = claims.ALIASES.get(args.claim, args.claim)
    res = fn(**_claim_kwargs(name, args))
    _emit({"record": "verify", **res.as_dict(), "manifest": _manifest(args, t0=t0)})
    _say(res.line())
    return 0 if res.passed else 1


# -- random-delete ------------------------------------------------------------------

def cmd_random_delete(args) -> int:
    t0 = time.perf_counter()
    p = Fraction(args.p) if args.p is not None else deletion.practical_p(args.n, args.k, args.c)
    h = deletion.sample_g3(args.n, p, args.seed)
    out, rep = deletion.deletion_process(h, args.k, args.seed)
    free = analysis.is_suspension_free(out, args.k).ok
    if args.out:
        with open(args.out, "w") as fh:
            serialize(out, fh)
    _emit({"record": "deletion", **rep.as_dict(), "final_free": free,
           "manifest": _manifest(args, seed=args.seed, t0=t0)})
    _say(f"G3({args.n}, {float(p):.4g}): {rep.initial_edges} -> {rep.final_edges} triples, "
         f"{rep.edges_deleted} deleted, free={free}")
    return 0 if free else 1


# -- normalize ----------------------------------------------------------------------

def cmd_normalize(args) -> int:
    t0 = time.perf_counter()
    f = parse_field(args.q)
    vals = [int(x) for x in args.vertex.split(",")]
    a = vertex("A", f, vals)
    s = a.k - 1 if args.s is None else args.s
    chain = normalize_vertex(a, s)
    img = chain.apply(a).values()
    ok = all(v == 0 for v in img[1:s + 1])
    _emit({"record": "normalize", "vertex": vals, "s": s, "chain": str(chain), "image": list(img),
           "ok": ok, "manifest": _manifest(args, f, t0=t0)})
    _say(f"{tuple(vals)} -> {tuple(img)} via {chain or 'identity'}")
    return 0 if ok else 1


# -- isocheck -----------------------------------------------------------------------

def cmd_isocheck(args) -> int:
    t0 = time.perf_counter()
    out = {"record": "isocheck", "map": args.map}
    f = None
    if args.map == "table2":
        f = parse_field(args.q)
        dp, d = build_bipartite(Family.DPRIME, args.k, f), build_bipartite(Family.D, args.k, f)
        v = analysis.verify_iso_map(dp, d, claims.table2_vertex_map(dp, d, f.q))
    elif args.map == "arc-wenger":
        f = parse_field(args.q)
        g = geometry.build_arc_graph(args.k, f, geometry.nrc_arc(args.k, f, include_infinity=False))
        h = geometry.build_wenger(args.k, f)
        v = analysis.verify_iso_map(g, h, geometry.arc_wenger_vertex_map(g, args.k, f.q))
    elif args.map == "frobenius":
        f = gf(2 ** args.r)
        g = geometry.build_arc_graph(3, f, geometry.frobenius_arc(args.r, args.s))
        h = geometry.build_g2rs(args.r, args.s)
        v = analysis.verify_iso_map(g, h, geometry.arc_wenger_vertex_map(g, 3, f.q))
    elif args.map == "link":
        f = parse_field(args.q)
        h = build_triple_system(args.k, f, "implicit")
        fails, tally = [], {"D": 0, "Dprime": 0}
        targets = {"D": build_bipartite(Family.D, args.k, f), "Dprime": build_bipartite(Family.DPRIME, args.k, f)}
        xs = range(h.n) if args.vertex is None else [_d3_vertex(h, args.vertex)]
        for x in xs:
            cls = classify_link(h, x)
            r = analysis.verify_iso_map(link_of(h, x), targets[cls.family], cls.vertex_map)
            tally[cls.family] += 1
            if not r.ok:
                fails.append(h.label(x))
        v = analysis.IsoVerdict(not fails, f"{tally}")
        out["unmatched"] = fails[:10]
    else:
        raise CliError(f"unknown map {args.map}")
    out.update({"ok": v.ok, "reason": v.reason, "collision": v.collision, "bad_edge": v.bad_edge,
                "manifest": _manifest(args, f, t0=t0)})
    _emit(out)
    _say(f"{args.map}: {'pass' if v.ok else 'FAIL'} ({v.reason})")
    return 0 if v.ok else 1


def _d3_vertex(h: TripleSystem, text: str) -> int:
    name, coords = text.split(":", 1)
    part = "ABC".index(name)
    vals = np.array([int(c) for c in coords.strip("()").split(",")])
    q = h.generator.f.q
    return h.part_offset(part) + int(sum(int(c) * q ** (len(vals) - 1 - j) for j, c in enumerate(vals)))


# -- parser -------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="girthlab", description=__doc__.splitlines()[0])
    ap.add_argument("--threads", type=int, default=None,
                    help="worker cap (also GIRTHLAB_THREADS); kernels currently run sequentially")
    ap.add_argument("--version", action="version", version=f"girthlab {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="build a graph or triple system and write the edge list")
    c.add_argument("--family", required=True, choices=["D", "Dprime", "D3", "H", "arc", "g2rs"])
    c.add_argument("--k", type=int)
    c.add_argument("--t", type=int, help="projective dimension for arc graphs (defaults to --k)")
    c.add_argument("--q", help="prime power, or p^n:c0,c1,... for an explicit modulus")
    c.add_argument("--r", type=int)
    c.add_argument("--s", type=int)
    c.add_argument("--arc", choices=["nrc", "nrc_minus", "frobenius"], help="arc family (default nrc_minus)")
    c.add_argument("--out", help="output path; '-' or omitted writes to stdout")
    c.set_defaults(func=cmd_construct)

    a = sub.add_parser("analyze", help="girth, diameter, cycle counts of an edge-list file")
    a.add_argument("path")
    a.add_argument("--girth", action="store_true")
    a.add_argument("--girth-cap", type=int)
    a.add_argument("--diameter", action="store_true", help="diameter of the component of --base")
    a.add_argument("--base", default="0", help="base vertex: local index in part A or a label A:(..)")
    a.add_argument("--cycles", help="u,v,L with L an integer or 'auto' (shortest length)")
    a.add_argument("--expect", type=int, help="expected count; sweeps even lengths on mismatch")
    a.add_argument("--has-cycle", type=int, metavar="L")
    a.add_argument("--signature", action="store_true")
    a.add_argument("--suspension", type=int, metavar="K", help="for triple systems: suspended 2K-cycle check")
    a.set_defaults(func=cmd_analyze)

    v = sub.add_parser("verify", help="run a claim check")
    v.add_argument("claim", help="one of: " + ", ".join(sorted(claims.CLAIMS)))
    v.add_argument("--k", type=int)
    v.add_argument("--q")
    v.add_argument("--r", type=int)
    v.add_argument("--s", type=int)
    v.add_argument("--seed", type=int)
    v.set_defaults(func=cmd_verify)

    r = sub.add_parser("random-delete", help="sample G3(n,p) and delete suspended cycles")
    r.add_argument("--n", type=int, required=True)
    r.add_argument("--k", type=int, default=2)
    r.add_argument("--seed", type=int, required=True)
    r.add_argument("--c", type=float, default=0.5, help="p = c * n^(-(2k-2)/(2k-1)) unless --p is given")
    r.add_argument("--p", help="exact rational p, e.g. 1/50")
    r.add_argument("--out")
    r.set_defaults(func=cmd_random_delete)

    n = sub.add_parser("normalize", help="automorphism chain normalising a vertex of D3")
    n.add_argument("--q", required=True)
    n.add_argument("--vertex", required=True, help="comma separated coordinates")
    n.add_argument("--s", type=int)
    n.set_defaults(func=cmd_normalize)

    i = sub.add_parser("isocheck", help="verify an explicit isomorphism")
    i.add_argument("--map", required=True, choices=["table2", "arc-wenger", "frobenius", "link"])
    i.add_argument("--k", type=int)
    i.add_argument("--q")
    i.add_argument("--r", type=int)
    i.add_argument("--s", type=int)
    i.add_argument("--vertex", help="link apex such as C:(1,2,0); all vertices when omitted")
    i.set_defaults(func=cmd_isocheck)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except BrokenPipeError:
        sys.stderr.close()
        return 0
    except (CliError, FieldError, GraphFormatError, ValueError, KeyError, OSError) as e:
        msg = e.args[0] if isinstance(e, KeyError) and e.args else e
        _say(f"error: {msg}")
        return 2


if __name__ == "__main__":
    sys.exit(main())
