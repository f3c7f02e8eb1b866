import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import contains, cospi_ref, mp_pi, mp_value, sinpi_ref
from polyreal.dyadic import Dyadic, mod2_reduce
from polyreal.interval import Interval, cospi_enclosure, hull_arith, pi_enclosure, sinpi_enclosure
from strategies import small_dyadics


def P(x):
    return Interval.point(Dyadic.coerce(x))


def test_hull_arith_examples():
    assert hull_arith("add", P(1), P(2), 10) == P(3)
    sq = hull_arith("mul", Interval.of(-1, 1), Interval.of(-1, 1), 10)
    assert sq.contains(Interval.of(-1, 1))
    x = Interval.of(Dyadic(-3, -2), Dyadic(5, -1))
    assert hull_arith("sub", x, x, 10).contains(0)
    assert hull_arith("scale", x, Dyadic(3), 10) == Interval.of(Dyadic(-9, -2), Dyadic(15, -1))
    with pytest.raises(ValueError):
        hull_arith("div", x, x, 10)


def test_empty_interval_rejected():
    with pytest.raises(ValueError):
        Interval.of(2, 1)


@pytest.mark.parametrize("w", [1, 2, 5, 8, 20, 64, 200])
def test_pi_enclosure_contains_reference(w):
    iv = pi_enclosure(w)
    assert contains(iv, mp_pi())
    assert iv.width() <= Dyadic(1, -w)
    assert Interval.of(3, Dyadic(7, -1)).contains(iv)


def test_pi_enclosures_nested():
    prev = pi_enclosure(1)
    for w in range(2, 80):
        cur = pi_enclosure(w)
        assert prev.contains(cur), w
        prev = cur


@pytest.mark.parametrize(
    "x, fn, want",
    [
        (Fraction(1, 2), sinpi_enclosure, 1),
        (Fraction(0), sinpi_enclosure, 0),
        (Fraction(-3), sinpi_enclosure, 0),
        (Fraction(7), sinpi_enclosure, 0),
        (Fraction(0), cospi_enclosure, 1),
        (Fraction(1, 2), cospi_enclosure, 0),
    ],
)
def test_trig_exact_points(x, fn, want):
    assert fn(P(Dyadic.from_fraction(x)), 30).contains(want)


def test_trig_non_dyadic_points():
    # 1/6 and 1/3 are not dyadic: enclose a tiny interval around them
    sixth = Interval.around(Dyadic(round(Fraction(2**60, 6)), -60), Dyadic(1, -59))
    third = Interval.around(Dyadic(round(Fraction(2**60, 3)), -60), Dyadic(1, -59))
    assert sinpi_enclosure(sixth, 40).contains(Fraction(1, 2))
    assert cospi_enclosure(third, 40).contains(Fraction(1, 2))


def test_trig_soundness_10k_points():
    rng = random.Random(20240501)
    for _ in range(10_000):
        w = rng.randint(8, 64)
        e = rng.randint(-30, -1)
        d = Dyadic(rng.randint(-(8 << -e), 8 << -e), e)
        q = d.to_fraction()
        s = sinpi_enclosure(P(d), w)
        c = cospi_enclosure(P(d), w)
        assert contains(s, sinpi_ref(q)), (d, w)
        assert contains(c, cospi_ref(q)), (d, w)


def test_trig_convergence_constant():
    rng = random.Random(7)
    worst = 0
    for _ in range(300):
        d = Dyadic(rng.randint(-(1 << 24), 1 << 24), -20)
        for w in (8, 16, 32, 64):
            width = sinpi_enclosure(P(d), w).width().to_fraction()
            worst = max(worst, width * 2**w)
    # measured constant; outward rounding to 2^-(w+2) at each end bounds it by 1
    assert worst <= 1


def test_interval_enclosure_of_ranges():
    # monotone piece and one containing a peak
    a = sinpi_enclosure(Interval.of(Dyadic(1, -3), Dyadic(3, -3)), 30)
    assert contains(a, sinpi_ref(Fraction(1, 8))) and contains(a, sinpi_ref(Fraction(3, 8)))
    b = sinpi_enclosure(Interval.of(Dyadic(3, -3), Dyadic(5, -3)), 30)
    assert b.contains(1)
    assert sinpi_enclosure(Interval.of(0, 2), 30) == Interval.of(-1, 1)


@given(small_dyadics, st.integers(8, 64))
def test_periodicity_bit_exact(d, w):
    assert sinpi_enclosure(P(d), w) == sinpi_enclosure(P(d + Dyadic(2)), w)
    r, _ = mod2_reduce(d)
    assert sinpi_enclosure(P(d), w) == sinpi_enclosure(P(r), w)


@given(small_dyadics, small_dyadics, small_dyadics, small_dyadics, st.integers(4, 40))
def test_hull_arith_sound(a, b, c, d, w):
    x = Interval.of(min(a, b), max(a, b))
    y = Interval.of(min(c, d), max(c, d))
    for op in ("add", "sub", "mul"):
        r = hull_arith(op, x, y, w)
        for u in (x.lo, x.hi, x.mid()):
            for v in (y.lo, y.hi, y.mid()):
                exact = {"add": u + v, "sub": u - v, "mul": u * v}[op]
                assert r.contains(exact)


@given(small_dyadics, st.integers(1, 30))
def test_sinpi_hull_contains_endpoints(d, k):
    x = Interval.of(d, d + Dyadic(k, -4))
    enc = sinpi_enclosure(x, 24)
    for t in (x.lo, x.mid(), x.hi):
        assert contains(enc, sinpi_ref(t.to_fraction()))


def test_mp_value_helper():
    assert mp_value(Fraction(1, 4)) == 0.25
