import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from girthlab.analysis import verify_iso_map
from girthlab.dseries import build_triple_system, encode, vertex
from girthlab.field import FieldElem, gf
from girthlab.graphcore import link_of
from girthlab.symmetry import (AutoChain, AutoSpec, CharacteristicError, InapplicableError, apply_array,
                               apply_auto, applicable_specs, classify_link, link_scaling,
                               link_scaling_array, normalize_vertex, parse_chain, plan, verify_auto)


def test_t11_lowers_a11():
    f = gf(3)
    for x in range(3):
        v = apply_auto(AutoSpec("t11", None, x), vertex("A", f, [2, 1]))
        assert v.values() == (2, (1 - x) % 3)


def test_t11_on_zero_at_k2():
    f = gf(3)
    for x in range(3):
        assert apply_auto(AutoSpec("t11", None, x), vertex("A", f, [0, 0])).values() == (0, -x % 3)


def test_zero_parameter_is_identity():
    f = gf(9)
    rows = np.random.default_rng(1).integers(0, 9, (50, 9))
    for spec in applicable_specs(9, [0]):
        assert np.array_equal(apply_array(spec, rows, f), rows)


def test_spec_validation():
    with pytest.raises(ValueError):
        AutoSpec("t22", 1, 0)
    with pytest.raises(ValueError):
        AutoSpec("t11", 2, 0)
    with pytest.raises(InapplicableError):
        plan(AutoSpec("t22", 3, 1), 5)


def test_characteristic_gate():
    with pytest.raises(CharacteristicError):
        verify_auto(AutoSpec("t11", None, 1), 2, gf(4))


def test_chain_token_round_trip():
    text = "t11(;2)∘t12(1;1)∘t22p(2;0)"
    chain = parse_chain(text)
    assert str(chain) == text
    with pytest.raises(ValueError):
        parse_chain("t33(1;1)")


@pytest.mark.parametrize("k", [2, 3])
def test_every_map_preserves_hyperedges_exhaustively(k):
    f = gf(3)
    for spec in applicable_specs(k, range(3)):
        v = verify_auto(spec, k, f, exhaustive_limit=10 ** 7)
        assert v.ok and v.exhaustive and v.checked == 3 ** (2 * k + 1)


@pytest.mark.parametrize("q", [3, 9])
@pytest.mark.parametrize("k", [4, 6, 9])
def test_maps_preserve_hyperedges_sampled(q, k):
    f = gf(q)
    for spec in applicable_specs(k, [1, q - 1]):
        v = verify_auto(spec, k, f, sample_size=300, seed=k)
        assert v.ok, (spec.token(), v.counterexample)


def test_t23_needs_its_coordinate():
    # (2,3) is the seventh coordinate, so the map only exists from k=7 on
    with pytest.raises(InapplicableError):
        verify_auto(AutoSpec("t12", 2, 1), 6, gf(3), sample_size=10)
    for k in (7, 9):
        assert verify_auto(AutoSpec("t12", 2, 1), k, gf(3), sample_size=2000).ok


@pytest.mark.parametrize("k", [2, 3, 4])
def test_inverse_law_for_short_truncations(k):
    for spec in applicable_specs(k, [1, 2]):
        assert verify_auto(spec, k, gf(3), sample_size=200).inverse_ok


def test_t11_inverse_law_fails_from_k5_but_map_stays_bijective():
    f = gf(3)
    spec = AutoSpec("t11", None, 1)
    assert not verify_auto(spec, 5, f, sample_size=200).inverse_ok
    rows = np.array(np.meshgrid(*[range(3)] * 5, indexing="ij")).reshape(5, -1).T
    img = apply_array(spec, rows, f)
    assert len(np.unique(encode(img, 3))) == 3 ** 5


def test_literal_b_row_fails_where_the_pattern_passes():
    f = gf(3)
    spec = AutoSpec("t11", None, 1)
    assert verify_auto(spec, 8, f, sample_size=500).ok
    assert not verify_auto(spec, 8, f, sample_size=500, literal_b=True).ok


def test_normalize_example():
    f = gf(3)
    a = vertex("A", f, [1, 2])
    chain = normalize_vertex(a, 1)
    assert chain.specs == (AutoSpec("t11", None, 2),)
    assert chain.apply(a).values() == (1, 0)


def test_normalize_already_normal():
    f = gf(3)
    chain = normalize_vertex(vertex("A", f, [2, 0, 0, 0]), 3)
    assert all(s.x == 0 for s in chain.specs)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([3, 9]), st.integers(2, 6), st.data())
def test_normalize_zeroes_prefix(q, k, data):
    f = gf(q)
    vals = [data.draw(st.integers(0, q - 1)) for _ in range(k)]
    s = data.draw(st.integers(0, k - 1))
    a = vertex("A", f, vals)
    chain = normalize_vertex(a, s)
    img = chain.apply(a).values()
    assert img[0] == vals[0] and all(v == 0 for v in img[1:s + 1])


@settings(max_examples=10, deadline=None)
@given(st.integers(2, 5), st.data())
def test_normalizing_chain_is_an_automorphism(k, data):
    f = gf(3)
    a = vertex("A", f, [data.draw(st.integers(0, 2)) for _ in range(k)])
    chain = normalize_vertex(a, k - 1)
    assert isinstance(chain, AutoChain)
    assert verify_auto(chain, k, f, sample_size=300).ok


def test_link_scaling_examples():
    f = gf(3)
    assert link_scaling(FieldElem(f, 2), vertex("B", f, [1, 1])).values() == (2, 1)
    v = vertex("B", f, [2, 1, 0, 2])
    assert link_scaling(FieldElem(f, 1), v) == v
    assert link_scaling(FieldElem(f, 2), vertex("B", f, [0] * 4)).values() == (0,) * 4
    with pytest.raises(ZeroDivisionError):
        link_scaling(FieldElem(f, 0), v)


@pytest.mark.parametrize("q", [3, 4, 9])
@pytest.mark.parametrize("k", [2, 3])
def test_link_scaling_carries_links_to_the_unit_link(q, k):
    f = gf(q)
    h = build_triple_system(k, q, "implicit")
    unit = link_of(h, h.part_offset(2) + q ** (k - 1))
    for a1 in range(1, q):
        x = h.part_offset(2) + a1 * q ** (k - 1)
        link = link_of(h, x)
        imgs = [link_scaling_array(a1, lab, f) for lab in link.labels]
        m = np.concatenate([encode(imgs[0], q), q ** k + encode(imgs[1], q)])
        assert verify_iso_map(link, unit, m).ok


@pytest.mark.parametrize("k,q", [(2, 3), (3, 3), (2, 9)])
def test_every_link_is_D_or_Dprime(k, q):
    from girthlab.dseries import Family, build_bipartite
    h = build_triple_system(k, q, "implicit")
    targets = {"D": build_bipartite(Family.D, k, q), "Dprime": build_bipartite(Family.DPRIME, k, q)}
    seen = {"D": 0, "Dprime": 0}
    for x in range(h.n):
        cls = classify_link(h, x)
        assert verify_iso_map(link_of(h, x), targets[cls.family], cls.vertex_map).ok
        seen[cls.family] += 1
    assert seen == {"D": 3 * q ** (k - 1), "Dprime": 3 * (q - 1) * q ** (k - 1)}
