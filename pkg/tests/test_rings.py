from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from minorsums.rings import QQ, ZZ, RingError, RingSpec, Zmod, from_integer, sign_power, two_pow

RINGS = [ZZ, QQ, Zmod(2), Zmod(5), Zmod(6), Zmod(7)]
ints = st.integers(min_value=-10**6, max_value=10**6)


def test_from_integer_examples():
    assert from_integer(ZZ, 7) == 7
    assert from_integer(Zmod(2), 2) == 0
    assert from_integer(Zmod(5), -6) == 4
    assert from_integer(QQ, 3) == Fraction(3)


def test_sign_power_examples():
    assert sign_power(ZZ, 0) == 1
    assert sign_power(ZZ, -1) == -1
    assert sign_power(Zmod(2), 3) == 1
    assert sign_power(Zmod(5), 1) == 4


def test_two_pow_examples():
    assert two_pow(ZZ, 3) == 8
    assert two_pow(Zmod(2), 1) == 0
    assert two_pow(Zmod(7), 4) == 2
    with pytest.raises(RingError):
        two_pow(ZZ, -1)


@pytest.mark.parametrize("kind, modulus", [("int", 5), ("rat", 3), ("mod", None), ("mod", 1),
                                           ("mod", 0), ("poly", None)])
def test_invalid_specs(kind, modulus):
    with pytest.raises(RingError):
        RingSpec(kind, modulus)


def test_modulus_two_is_constructible():
    R = Zmod(2)
    assert R.add(R.one, R.one) == R.zero


@pytest.mark.parametrize("ring", RINGS, ids=str)
@settings(max_examples=200, deadline=None)
@given(a=ints, b=ints, c=ints)
def test_ring_axioms(ring, a, b, c):
    x, y, z = (ring.from_integer(v) for v in (a, b, c))
    add, mul = ring.add, ring.mul
    assert add(add(x, y), z) == add(x, add(y, z))
    assert mul(mul(x, y), z) == mul(x, mul(y, z))
    assert add(x, y) == add(y, x)
    assert mul(x, y) == mul(y, x)
    assert mul(x, add(y, z)) == add(mul(x, y), mul(x, z))
    assert add(x, ring.zero) == x
    assert mul(x, ring.one) == x
    assert add(ring.neg(x), x) == ring.zero
    assert ring.sub(x, y) == add(x, ring.neg(y))


@pytest.mark.parametrize("ring", RINGS, ids=str)
@given(a=ints, b=ints)
def test_from_integer_is_a_homomorphism(ring, a, b):
    f = ring.from_integer
    assert f(a + b) == ring.add(f(a), f(b))
    assert f(a * b) == ring.mul(f(a), f(b))


@pytest.mark.parametrize("ring", RINGS, ids=str)
def test_factorials_embed_consistently(ring):
    for k in range(9):
        assert ring.from_integer(factorial(k)) == ring.prod(ring.from_integer(i) for i in range(1, k + 1))


@pytest.mark.parametrize("ring", RINGS, ids=str)
def test_sign_power_is_additive(ring):
    for a in range(-10, 11):
        for b in range(-10, 11):
            assert ring.sign_power(a + b) == ring.mul(ring.sign_power(a), ring.sign_power(b))


@pytest.mark.parametrize("ring", RINGS, ids=str)
def test_two_pow_matches_repeated_doubling(ring):
    acc = ring.one
    for e in range(12):
        assert ring.two_pow(e) == acc
        acc = ring.add(acc, acc)


@pytest.mark.parametrize("text, spec", [("int", ZZ), ("rat", QQ), ("mod:6", Zmod(6)),
                                        (" mod:2 ", Zmod(2))])
def test_parse_flag(text, spec):
    assert RingSpec.parse(text) == spec


@pytest.mark.parametrize("text", ["", "mod", "mod:x", "mod:1", "real"])
def test_parse_flag_rejects(text):
    with pytest.raises(RingError):
        RingSpec.parse(text)


@pytest.mark.parametrize("ring", RINGS, ids=str)
def test_json_round_trip(ring):
    assert RingSpec.from_json(ring.to_json()) == ring


def test_json_shapes():
    assert ZZ.to_json() == {"kind": "int"}
    assert Zmod(5).to_json() == {"kind": "mod", "modulus": 5}
    with pytest.raises(RingError):
        RingSpec.from_json({"kind": "mod"})
    with pytest.raises(RingError):
        RingSpec.from_json({"kind": "int", "extra": 1})


def test_element_serialization():
    assert QQ.format(Fraction(-3, 4)) == "-3/4"
    assert QQ.format(Fraction(2)) == "2"
    assert QQ.parse_element("-3/4") == Fraction(-3, 4)
    assert Zmod(5).parse_element("-1") == 4
    assert ZZ.parse_element("123456789012345678901234567890") == 123456789012345678901234567890
    for bad in ("1.5", "x", None, True):
        with pytest.raises(RingError):
            ZZ.parse_element(bad)
    with pytest.raises(RingError):
        QQ.parse_element("1/0")


def test_arbitrary_precision():
    big = 10**40
    assert ZZ.mul(big, big) == 10**80
    assert QQ.mul(Fraction(big), Fraction(1, big)) == 1
