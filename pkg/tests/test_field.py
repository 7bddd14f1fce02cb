import itertools
from math import gcd

import pytest
from hypothesis import given, strategies as st

from girthlab.field import (DEFAULT_MODULI, FieldElem, FieldError, add, elements, frob_pow, gf, inv,
                            is_permutation_power, make_field, mul, neg, parse_field, pow_)

SMALL_Q = [2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 32, 81]


def E(f, v):
    return FieldElem(f, v)


def test_prime_field_modulus_is_x():
    f = make_field(3, 1)
    assert f.q == 3 and f.modulus == (0, 1)


def test_gf9_x_squared_is_minus_one():
    f = make_field(3, 2, [1, 0, 1])
    x = E(f, 3)
    assert mul(x, x).value == 2


def test_gf8_x_has_order_seven():
    f = make_field(2, 3, [1, 1, 0, 1])
    x = E(f, 2)
    assert pow_(x, 7) == E(f, 1)
    assert all(pow_(x, e) != E(f, 1) for e in range(1, 7))


def test_small_sums():
    f3, f8, f9 = gf(3), gf(8), gf(9)
    assert add(E(f3, 2), E(f3, 2)) == E(f3, 1)
    assert add(E(f8, 2), E(f8, 2)) == E(f8, 0)
    assert neg(E(f9, 1)) == E(f9, 2)


def test_inverse_of_one_and_zero():
    f = gf(9)
    assert inv(E(f, 1)) == E(f, 1)
    with pytest.raises(ZeroDivisionError):
        inv(E(f, 0))


def test_frobenius_examples():
    f = gf(8)
    x = E(f, 2)
    assert frob_pow(x, 1) == x * x
    assert frob_pow(x, 2).value == 0b110          # x^2 + x
    for a in elements(gf(9)):
        assert frob_pow(a, 0) == a


def test_elements_listing():
    assert [e.value for e in elements(gf(3))] == [0, 1, 2]
    assert len(set(elements(gf(4)))) == 4
    e9 = elements(gf(9))
    assert len(set(e9)) == 9 and e9[0].value == 0


@pytest.mark.parametrize("bad", [
    lambda: make_field(4, 1),
    lambda: make_field(3, 2, [1, 0, 2]),      # x^2 + 2 = (x+1)(x+2)
    lambda: make_field(2, 2, [1, 1, 0]),      # not monic of degree 2
    lambda: make_field(11, 2),                # no table entry
])
def test_rejected_fields(bad):
    with pytest.raises(FieldError):
        bad()


def test_mixed_fields_rejected():
    with pytest.raises(FieldError):
        E(gf(3), 1) + E(gf(9), 1)
    with pytest.raises(FieldError):
        E(gf(3), 3)


def test_parse_field_forms():
    assert parse_field("9") == gf(9)
    f = parse_field("3^2:2,1,1")
    assert (f.p, f.n, f.modulus) == (3, 2, (2, 1, 1))
    assert f.header() == "3 2 2,1,1"


def test_table_moduli_are_valid():
    for q, mod in DEFAULT_MODULI.items():
        f = gf(q)
        assert f.modulus == tuple(mod) and f.q == q


@pytest.mark.parametrize("q", [q for q in SMALL_Q if q <= 81])
def test_field_axioms_exhaustive(q):
    f = gf(q)
    els = elements(f)
    one = E(f, 1)
    for a in els:
        if a.value:
            assert a * inv(a) == one
    # distributivity and associativity over all triples for small q, a slice otherwise
    triples = itertools.product(els, repeat=3) if q <= 27 else (
        (a, b, c) for a in els for b in els[:9] for c in els[:9])
    for a, b, c in triples:
        assert (a + b) + c == a + (b + c)
        assert a * (b + c) == a * b + a * c
        assert (a * b) * c == a * (b * c)


@pytest.mark.parametrize("q", [q for q in SMALL_Q if q <= 81])
def test_frobenius_is_additive(q):
    f = gf(q)
    for a in elements(f):
        for b in elements(f):
            assert pow_(a + b, f.p) == pow_(a, f.p) + pow_(b, f.p)


@pytest.mark.parametrize("r", [2, 3, 4, 5])
def test_power_2s_minus_1_permutes_when_coprime(r):
    f = gf(2 ** r)
    for s in range(1, r + 1):
        coprime = gcd(s, r) == 1
        if coprime:
            assert is_permutation_power(f, 2 ** s - 1)
        elif 2 ** s - 1 > 1:
            assert not is_permutation_power(f, 2 ** s - 1)


@given(st.sampled_from(SMALL_Q), st.data())
def test_encoding_round_trip(q, data):
    f = gf(q)
    v = data.draw(st.integers(0, q - 1))
    assert f.encode(f.coeffs(v)) == v


@given(st.sampled_from(SMALL_Q), st.data())
def test_tables_match_scalar_arithmetic(q, data):
    f = gf(q)
    a, b = data.draw(st.integers(0, q - 1)), data.draw(st.integers(0, q - 1))
    assert f.add_table[a, b] == f._add(a, b)
    assert f.mul_table[a, b] == f._mul(a, b)
    assert f.sub_table[a, b] == f._add(a, f._neg(b))
    e = data.draw(st.integers(0, 40))
    assert pow_(E(f, a), e).value == f._pow(a, e)
