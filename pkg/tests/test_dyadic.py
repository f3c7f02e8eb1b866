from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from polyreal.dyadic import (
    EXPONENT_BOUND,
    Dyadic,
    bit_length,
    exact_arith,
    floor_ceil,
    mod2_reduce,
    round_to_precision,
)
from polyreal.errors import DyadicOverflow
from strategies import dyadics, precisions


def D(m, e=0):
    return Dyadic(m, e)


def test_examples_exact_arith():
    assert exact_arith("add", D(3, -1), D(1, -2)) == D(7, -2)
    assert exact_arith("mul", D(3, -1), D(5)) == D(15, -1)
    assert exact_arith("neg", D(3, -1)) == D(-3, -1)


def test_examples_rounding():
    assert round_to_precision(D(7, -2), 1, "down") == D(3, -1)
    assert round_to_precision(D(7, -2), 1, "up") == D(2)
    for mode in ("down", "up", "nearest"):
        assert round_to_precision(D(13, -5), 5, mode) == D(13, -5)


def test_examples_floor_ceil_and_mod2():
    assert floor_ceil(D(7, -2)) == (1, 2)
    assert floor_ceil(D(-7, -2)) == (-2, -1)
    assert floor_ceil(D(5)) == (5, 5)
    assert mod2_reduce(D(29, -2)) == (D(5, -2), 3)
    assert mod2_reduce(D(-1, -1)) == (D(3, -1), -1)
    assert mod2_reduce(D(4)) == (D(0), 2)


def test_canonical_form():
    assert D(12, -3) == D(3, -1)
    assert (D(12, -3).mantissa, D(12, -3).exponent) == (3, -1)
    z = D(0, 17)
    assert (z.mantissa, z.exponent) == (0, 0)


def test_overflow_is_an_error():
    with pytest.raises(DyadicOverflow):
        D(1, EXPONENT_BOUND + 1)
    with pytest.raises(DyadicOverflow):
        D(1, EXPONENT_BOUND).scale2(1)


def test_text_round_trip_and_decimal():
    for d in (D(7, -2), D(-3, 5), D(0), D(1, -40)):
        assert Dyadic.parse(str(d)) == d
    assert Dyadic.parse("1.75") == D(7, -2)
    assert D(-7, -2).to_decimal() == "-1.75"
    assert D(1, -3).to_decimal(2) == "0.12"
    with pytest.raises(ValueError):
        Dyadic.parse("0.1")


def test_bit_length():
    assert [bit_length(j) for j in (0, 1, 2, 3, 4, -5)] == [0, 1, 2, 2, 3, 3]


@given(dyadics, dyadics, dyadics)
def test_ring_laws_bit_exact(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == Dyadic(0)
    assert (a + b).to_fraction() == a.to_fraction() + b.to_fraction()
    assert (a * b).to_fraction() == a.to_fraction() * b.to_fraction()


@given(dyadics, precisions)
def test_rounding_brackets(a, n):
    lo = round_to_precision(a, n, "down")
    hi = round_to_precision(a, n, "up")
    near = round_to_precision(a, n, "nearest")
    step = Fraction(1, 2**n)
    assert lo <= a <= hi
    assert hi.to_fraction() - lo.to_fraction() <= step
    assert abs(near.to_fraction() - a.to_fraction()) <= step / 2
    for r in (lo, hi, near):
        assert (r.to_fraction() / step).denominator == 1


@given(dyadics)
def test_floor_ceil_property(a):
    f, c = floor_ceil(a)
    q = a.to_fraction()
    assert f <= q <= c
    assert c - f == (0 if q.denominator == 1 else 1)


@given(dyadics)
def test_mod2_reconstructs(a):
    r, q = mod2_reduce(a)
    assert Dyadic(2 * q) + r == a
    assert Dyadic(0) <= r < Dyadic(2)


@given(dyadics)
def test_ordering_matches_fractions(a):
    b = a + Dyadic(1, -100)
    assert a < b and b > a and a <= a and not a < a
    assert (a == a.to_fraction()) and hash(a) == hash(a.to_fraction())


@given(st.integers(-(2**70), 2**70))
def test_integers_embed(k):
    d = Dyadic(k)
    assert d.is_integer() and int(d) == k and d.floor() == d.ceil() == k
