import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from girthlab.analysis import verify_iso_map
from girthlab.field import gf
from girthlab.geometry import (Arc, GeometryError, ProjLine, ProjPoint, arc_to_wenger_map,
                               arc_wenger_vertex_map, build_arc_graph, build_g2rs, build_wenger,
                               frobenius_arc, is_arc, nrc_arc, plucker_coords, plucker_relations_hold,
                               plucker_rows, rank)


def test_point_normalisation():
    f = gf(5)
    p = ProjPoint.of(f, [0, 2, 4])
    assert p.values() == (0, 1, 2)
    assert p == ProjPoint.of(f, [0, 3, 6])
    with pytest.raises(GeometryError):
        ProjPoint.of(f, [0, 0, 0])


def test_nrc_sizes():
    assert len(nrc_arc(2, 3)) == 4
    for q in (3, 4, 5, 9):
        arc = nrc_arc(3, q, include_infinity=False)
        assert len(arc) == q and arc.tag == "NRC_minus"
    assert nrc_arc(3, 3).points[0].values() == (0, 1, 0, 0)


def test_frobenius_arc_examples():
    f = gf(8)
    a1 = frobenius_arc(3, 1)
    assert len(a1) == 8
    assert a1.matrix().tolist() == nrc_arc(3, 8, include_infinity=False).matrix().tolist()
    a2 = frobenius_arc(3, 2)
    assert all(p.values()[3] == f._pow(p.values()[2], 4) for p in a2.points)
    with pytest.raises(GeometryError):
        frobenius_arc(2, 2)


def test_is_arc_examples():
    assert is_arc(nrc_arc(3, 5).points, 3, 5)
    assert is_arc(nrc_arc(2, 3).points, 2, 3)
    f = gf(3)
    collinear = [ProjPoint.of(f, v) for v in ([0, 1, 0, 0], [0, 0, 1, 0], [0, 1, 1, 0])]
    assert not is_arc(collinear, 3, 3)
    assert is_arc(frobenius_arc(3, 2).points, 3, 8)


def test_non_coprime_power_breaks_the_arc():
    f = gf(16)
    pts = [ProjPoint.of(f, [0, 1, x, f._pow(x, 4)]) for x in range(16)]
    assert not is_arc(pts, 3, 16)


def test_rank():
    f = gf(3)
    assert rank(np.array([[1, 0, 0], [0, 1, 0], [1, 1, 0]]), f) == 2
    assert rank(np.eye(3, dtype=np.int64), f) == 3


def test_plucker_example():
    f = gf(5)
    for x in range(5):
        line = ProjLine(ProjPoint.of(f, [1, 0, 0, 0]), ProjPoint.of(f, [0, 1, x, x * x]))
        w = [c.value for c in plucker_coords(line)]
        assert w == [1, x, (x * x) % 5, 0, 0, 0]


def test_swapping_spanning_points():
    f = gf(7)
    p, r = ProjPoint.of(f, [1, 2, 3, 4]), ProjPoint.of(f, [0, 1, 5, 6])
    raw = plucker_coords(ProjLine(p, r), normalize=False)
    swapped = plucker_coords(ProjLine(r, p), normalize=False)
    assert [(-a).value for a in raw] == [b.value for b in swapped]
    assert plucker_coords(ProjLine(p, r)) == plucker_coords(ProjLine(r, p))


@settings(max_examples=50, deadline=None)
@given(st.sampled_from([3, 4, 5, 8, 9]), st.integers(2, 4), st.data())
def test_plucker_invariant_under_change_of_span(q, t, data):
    f = gf(q)
    draw = lambda: np.array([data.draw(st.integers(0, q - 1)) for _ in range(t + 1)])  # noqa: E731
    p1, p2 = draw(), draw()
    if rank(np.stack([p1, p2]), f) < 2:
        return
    a, b, c, d = (data.draw(st.integers(0, q - 1)) for _ in range(4))
    if f._add(f._mul(a, d), f._neg(f._mul(b, c))) == 0:
        return
    r1 = f.add_table[f.mul_table[a, p1], f.mul_table[b, p2]]
    r2 = f.add_table[f.mul_table[c, p1], f.mul_table[d, p2]]
    assert np.array_equal(plucker_rows(p1[None], p2[None], f), plucker_rows(r1[None], r2[None], f))


@pytest.mark.parametrize("q", [3, 4, 5])
def test_arc_graph_sizes_and_degrees(q):
    g = build_arc_graph(3, q, nrc_arc(3, q, include_infinity=False))
    assert g.part_sizes == (q ** 3, q ** 3)
    deg = g.degrees()
    assert (deg[g.part_offset(1):] == q).all()
    assert (deg[:g.part_offset(1)] == q).all()


def test_point_degree_is_arc_size():
    arc = nrc_arc(3, 3)
    g = build_arc_graph(3, 3, arc)
    assert (g.degrees()[:27] == len(arc)).all()
    assert g.part_sizes[1] == 9 * len(arc)


def test_arc_graph_rejects_wrong_space():
    with pytest.raises(GeometryError):
        build_arc_graph(4, 3, nrc_arc(3, 3))


@pytest.mark.parametrize("k,q", [(3, 3), (3, 4), (4, 3), (4, 5)])
def test_plucker_relations(k, q):
    g = build_arc_graph(k, q, nrc_arc(k, q, include_infinity=False))
    assert plucker_relations_hold(g.labels[1], gf(q), k)


def test_arc_to_wenger_example():
    f = gf(5)
    for x in range(5):
        line = ProjLine(ProjPoint.of(f, [1, 0, 0, 0]), ProjPoint.of(f, [0, 1, x, x * x]))
        assert arc_to_wenger_map([c.value for c in line.plucker], 3) == (x, 0, 0)


def test_arc_to_wenger_needs_curve_chart():
    with pytest.raises(GeometryError):
        arc_to_wenger_map([0, 0, 0, 1, 0, 0], 3)


@pytest.mark.parametrize("k,q", [(3, 3), (3, 4), (3, 5), (4, 3)])
def test_arc_graph_is_wenger(k, q):
    g = build_arc_graph(k, q, nrc_arc(k, q, include_infinity=False))
    m = arc_wenger_vertex_map(g, k, q)
    assert len(np.unique(m[g.part_offset(1):])) == q ** k
    assert verify_iso_map(g, build_wenger(k, q), m).ok


def test_wenger_examples():
    h = build_wenger(3, 3)
    assert h.n == 54 and h.num_edges == 81
    assert h.neighbors(0) == [27 + 9 * t for t in range(3)]


def test_g2rs_examples():
    g = build_g2rs(3, 1)
    assert g.n == 1024 and g.regular_degree() == 8
    assert g.neighbors(0) == [512 + 64 * b for b in range(8)]
    w = build_wenger(3, 8)
    assert np.array_equal(g.indices, w.indices) and np.array_equal(g.indptr, w.indptr)


@pytest.mark.parametrize("s", [1, 2])
def test_frobenius_arc_graph_is_g2rs(s):
    g = build_arc_graph(3, 8, frobenius_arc(3, s))
    m = arc_wenger_vertex_map(g, 3, 8)
    assert verify_iso_map(g, build_g2rs(3, s), m).ok
    assert plucker_relations_hold(g.labels[1], gf(8), 3, arc_exponents=[0, 1, 2 ** s])


def test_arc_points_must_be_in_sigma0():
    f = gf(3)
    with pytest.raises(GeometryError):
        Arc((ProjPoint.of(f, [1, 0, 0]),), "bad", 2)
