import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from girthlab.analysis import verify_iso_map
from girthlab.dseries import (SHIFT_LINK_TO_DPRIME, CoordScheme, Family, SizeError, all_coords,
                              build_bipartite, build_triple_system, encode, label_name, position,
                              relations_hold, shift_array, shift_map, solve_neighbor, solve_partner,
                              solve_third, table2_map, vertex)
from girthlab.field import FieldElem, gf
from girthlab.graphcore import link_of


def test_coordinate_order():
    labels = CoordScheme(10).labels
    assert labels[:4] == ["(1)", "(1,1)", "(1,2)", "(2,1)"]
    assert labels[4:8] == ["(2,2)", "(2,2)'", "(2,3)", "(3,2)"]
    assert label_name(8) == "(3,3)"
    assert position(("d", 3)) == 8


def test_zero_neighbours_in_D():
    f = gf(3)
    zero = vertex("A", f, [0, 0, 0])
    for t in range(3):
        b = solve_neighbor(Family.D, 3, 3, zero, FieldElem(f, t))
        assert b.values() == (t, 0, 0) and b.side == "B"


def test_dprime_example_neighbour():
    f = gf(3)
    b = solve_neighbor(Family.DPRIME, 2, 3, vertex("A", f, [0, 0]), FieldElem(f, 1))
    assert b.values() == (1, 1)


def test_solve_third_examples():
    f = gf(3)
    z = vertex("A", f, [0, 0])
    assert solve_third(2, 3, z, vertex("B", f, [0, 0]), FieldElem(f, 0)).values() == (0, 0)
    for t in range(3):
        assert solve_third(2, 3, z, vertex("B", f, [0, 0]), FieldElem(f, t)).values() == (t, 0)


@pytest.mark.parametrize("family", list(Family))
@pytest.mark.parametrize("k,q", [(2, 3), (3, 3), (2, 4), (3, 5), (4, 3), (3, 9), (2, 8)])
def test_bipartite_counts_and_relations(family, k, q):
    g = build_bipartite(family, k, q)
    assert g.part_sizes == (q ** k, q ** k)
    assert g.num_edges == q ** (k + 1)
    assert g.regular_degree() == q
    g.validate()
    e = g.edge_array()
    a, b = g.labels[0][e[:, 0]], g.labels[1][e[:, 1] - q ** k]
    assert relations_hold(family, gf(q), a, b).all()


def test_zero_zero_is_always_an_edge():
    for family in Family:
        for k, q in [(2, 3), (5, 3), (3, 4)]:
            g = build_bipartite(family, k, q)
            assert g.has_edge(0, g.part_offset(1))


def test_size_guard():
    with pytest.raises(SizeError):
        build_bipartite(Family.D, 15, 3)


def test_partner_solving_is_symmetric():
    f = gf(5)
    coords = all_coords(3, 5)
    for family in Family:
        b = solve_partner(family, f, coords, 2)
        back = solve_partner(family, f, b, coords[:, 0], known_side="B")
        assert np.array_equal(back, coords)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([3, 4, 5, 9]), st.integers(2, 8), st.data())
def test_neighbours_distinct_per_first_coordinate(q, k, data):
    f = gf(q)
    a = np.array([[data.draw(st.integers(0, q - 1)) for _ in range(k)]])
    for family in Family:
        bs = {tuple(solve_partner(family, f, a, t)[0]) for t in range(q)}
        assert len(bs) == q


def test_triple_system_counts():
    h = build_triple_system(2, 3)
    assert h.part_sizes == (9, 9, 9) and h.num_edges == 243
    assert [0, 9, 18] in h.edge_array().tolist()
    assert build_triple_system(3, 3).num_edges == 2187


def test_implicit_and_explicit_links_agree():
    hx = build_triple_system(2, 3, "explicit")
    hi = build_triple_system(2, 3, "implicit")
    hx.generator = None
    for x in range(hx.n):
        a, b = link_of(hx, x), link_of(hi, x)
        assert np.array_equal(a.edge_array(), b.edge_array())


@pytest.mark.parametrize("k", [2, 3, 4])
def test_link_of_zero_is_D(k):
    h = build_triple_system(k, 3)
    link = link_of(h, 0)
    d = build_bipartite(Family.D, k, 3)
    assert np.array_equal(link.edge_array(), d.edge_array())


@pytest.mark.parametrize("k,q", [(2, 3), (3, 3), (2, 9)])
def test_links_are_regular(k, q):
    h = build_triple_system(k, q, "implicit")
    for x in (0, h.n // 2, h.n - 1):
        link = link_of(h, x)
        assert link.part_sizes == (q ** k, q ** k) and link.regular_degree() == q


def test_link_of_unit_vertex_edge_count():
    h = build_triple_system(2, 3)
    c = h.part_offset(2) + encode(np.array([1, 0]), 3)
    assert link_of(h, int(c)).num_edges == 27


def test_table2_examples():
    f = gf(3)
    assert table2_map(vertex("A", f, [0] * 6)).values() == (0,) * 6
    assert table2_map(vertex("A", f, [1, 1, 0, 0, 0, 0])).values() == (1, 0, 1, 1, 0, 0)
    with pytest.raises(ValueError):
        table2_map(vertex("A", f, [0] * 7))


@given(st.lists(st.integers(0, 8), min_size=6, max_size=6), st.integers(2, 5))
def test_table2_restricts(vals, k):
    f = gf(9)
    full = table2_map(vertex("B", f, vals)).values()
    assert table2_map(vertex("B", f, vals[:k])).values() == full[:k]


def test_shift_examples():
    f = gf(3)
    assert shift_map(vertex("A", f, [0, 0, 0]), 1).values() == (1, 0, 0)
    assert shift_map(vertex("A", f, [2, 0, 0]), 1).values() == (0, 0, 0)
    v = vertex("B", f, [1, 2, 0, 1])
    assert shift_map(shift_map(v, 1), -1) == v
    with pytest.raises(ValueError):
        shift_map(vertex("A", gf(4), [0, 0]), 1)


def _shifted_link_is_dprime(k, q, direction):
    h = build_triple_system(k, q, "implicit")
    x = h.part_offset(2) + int(encode(np.array([1] + [0] * (k - 1)), q))
    link = link_of(h, x)
    f = gf(q)
    imgs = [shift_array(lab, f, direction) for lab in link.labels]
    m = np.concatenate([encode(imgs[0], q), q ** k + encode(imgs[1], q)])
    return verify_iso_map(link, build_bipartite(Family.DPRIME, k, q), m).ok


def test_shift_sign_regression():
    # only one direction turns the link of (1,0,...,0) into D'
    assert _shifted_link_is_dprime(2, 3, SHIFT_LINK_TO_DPRIME)
    assert not _shifted_link_is_dprime(2, 3, -SHIFT_LINK_TO_DPRIME)


@pytest.mark.parametrize("k,q", [(3, 3), (4, 3), (2, 9), (3, 9), (4, 9)])
def test_shifted_unit_link_is_dprime(k, q):
    assert _shifted_link_is_dprime(k, q, SHIFT_LINK_TO_DPRIME)
