"""Outward-rounded intervals over dyadic endpoints, plus rigorous pi, sin(pi x), cos(pi x).

Every operation returns an interval containing the exact image of its inputs.  The
working precision ``w`` is an absolute grid: endpoints are rounded outward onto
multiples of ``2**-w``.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction

from .dyadic import HALF, ONE, ZERO, Dyadic, DyadicLike, mod2_reduce, round_to_precision


@dataclass(frozen=True, slots=True)
class Interval:
    lo: Dyadic
    hi: Dyadic

    def __post_init__(self):
        if self.hi < self.lo:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, x: DyadicLike) -> "Interval":
        x = Dyadic.coerce(x)
        return cls(x, x)

    @classmethod
    def of(cls, lo: DyadicLike, hi: DyadicLike) -> "Interval":
        return cls(Dyadic.coerce(lo), Dyadic.coerce(hi))

    @classmethod
    def around(cls, x: DyadicLike, radius: DyadicLike) -> "Interval":
        x, r = Dyadic.coerce(x), Dyadic.coerce(radius)
        return cls(x - r, x + r)

    def width(self) -> Dyadic:
        return self.hi - self.lo

    def mid(self) -> Dyadic:
        return (self.lo + self.hi).scale2(-1)

    def is_point(self) -> bool:
        return self.lo == self.hi

    def contains(self, v) -> bool:
        if isinstance(v, Interval):
            return self.lo <= v.lo and v.hi <= self.hi
        if isinstance(v, Fraction):
            return self.lo.to_fraction() <= v <= self.hi.to_fraction()
        v = Dyadic.coerce(v)
        return self.lo <= v <= self.hi

    __contains__ = contains

    def intersects(self, other: "Interval") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def intersect(self, other: "Interval") -> "Interval":
        lo = max(self.lo, other.lo)
        hi = min(self.hi, other.hi)
        if hi < lo:
            raise ValueError("disjoint intervals")
        return Interval(lo, hi)

    def hull(self, other: "Interval") -> "Interval":
        return Interval(min(self.lo, other.lo), max(self.hi, other.hi))

    def widen(self, r: DyadicLike) -> "Interval":
        r = Dyadic.coerce(r)
        return Interval(self.lo - r, self.hi + r)

    def outward(self, w: int) -> "Interval":
        return Interval(round_to_precision(self.lo, w, "down"), round_to_precision(self.hi, w, "up"))

    def shift(self, d: DyadicLike) -> "Interval":
        d = Dyadic.coerce(d)
        return Interval(self.lo + d, self.hi + d)

    # exact (unrounded) arithmetic; the rounded forms live in hull_arith
    def __add__(self, other):
        other = _as_interval(other)
        return Interval(self.lo + other.lo, self.hi + other.hi)

    __radd__ = __add__

    def __neg__(self):
        return Interval(-self.hi, -self.lo)

    def __sub__(self, other):
        other = _as_interval(other)
        return Interval(self.lo - other.hi, self.hi - other.lo)

    def __rsub__(self, other):
        return _as_interval(other) - self

    def __mul__(self, other):
        other = _as_interval(other)
        if self.is_point() and other.is_point():
            p = self.lo * other.lo
            return Interval(p, p)
        ps = (self.lo * other.lo, self.lo * other.hi, self.hi * other.lo, self.hi * other.hi)
        return Interval(min(ps), max(ps))

    __rmul__ = __mul__

    def __str__(self):
        return f"[{self.lo}, {self.hi}]"

    def to_json(self):
        return {"lo": str(self.lo), "hi": str(self.hi)}


def _as_interval(v) -> Interval:
    if isinstance(v, Interval):
        return v
    return Interval.point(v)


def hull_arith(op: str, a: Interval, b, w: int) -> Interval:
    """Rounded interval arithmetic: ``add``, ``sub``, ``mul``, or ``scale`` by a dyadic ``b``."""
    if op == "add":
        r = a + b
    elif op == "sub":
        r = a - b
    elif op == "mul":
        r = a * b
    elif op == "scale":
        r = a * Interval.point(b)
    else:
        raise ValueError(f"unknown interval operation {op!r}")
    return r.outward(w)


# -- pi -------------------------------------------------------------------------


def _arctan_inv(k: int, prec: int) -> tuple[int, int]:
    """Fixed-point ``arctan(1/k) * 2**prec`` as ``(value, error bound)`` in units of 2**-prec."""
    k2 = k * k
    power = (1 << prec) // k
    total = 0
    i = 0
    while power:
        term = power // (2 * i + 1)
        total += -term if i & 1 else term
        power //= k2
        i += 1
    # each retained term is off by < 3 units; the omitted tail is < 2 units
    return total, 3 * i + 2


class _PiCache:
    """Nested master enclosures of pi; entries are immutable once published."""

    def __init__(self):
        self._lock = threading.Lock()
        self._master: Interval | None = None
        self._prec = 0

    def master(self, need: int) -> Interval:
        master, prec = self._master, self._prec
        if master is not None and prec >= need:
            return master
        with self._lock:
            if self._master is not None and self._prec >= need:
                return self._master
            prec = max(need, 2 * self._prec, 64)
            guard = prec.bit_length() + 8
            p = prec + guard
            a5, e5 = _arctan_inv(5, p)
            a239, e239 = _arctan_inv(239, p)
            centre = 16 * a5 - 4 * a239
            err = 16 * e5 + 4 * e239
            fresh = Interval(Dyadic(centre - err, -p), Dyadic(centre + err, -p))
            if self._master is not None:
                fresh = fresh.intersect(self._master)
            self._master, self._prec = fresh, prec
            return fresh


_PI = _PiCache()


def pi_enclosure(w: int) -> Interval:
    """Interval of width at most ``2**-w`` containing pi, nested as ``w`` grows."""
    if w < 1:
        raise ValueError("precision must be >= 1")
    return _PI.master(w + 8).outward(w + 2)


# -- sin(pi x), cos(pi x) -------------------------------------------------------


def _series(u: Dyadic, prec: int, kind: str) -> tuple[int, int]:
    """Bounds ``(lo, hi)`` in units of 2**-prec on sin(u) or cos(u), for 0 <= u <= 1."""
    u2 = u * u
    m2, e2 = u2.mantissa, u2.exponent
    if kind == "sin":
        t_lo = round_to_precision(u, prec, "down")
        t_hi = round_to_precision(u, prec, "up")
        lo = int(t_lo.scale2(prec))
        hi = int(t_hi.scale2(prec))
        first = 2
    else:
        lo = hi = 1 << prec
        first = 1
    s_lo, s_hi = lo, hi
    k = 0
    while True:
        k += 1
        d = (2 * k - 2 + first) * (2 * k - 1 + first)
        if e2 >= 0:
            n_lo, n_hi, den = (lo * m2) << e2, (hi * m2) << e2, d
        else:
            n_lo, n_hi, den = lo * m2, hi * m2, d << -e2
        lo, hi = n_lo // den, -((-n_hi) // den)
        if hi <= 1:
            # alternating series with decreasing terms: remainder is below the next term
            return s_lo - hi, s_hi + hi
        if k & 1:
            s_lo, s_hi = s_lo - hi, s_hi - lo
        else:
            s_lo, s_hi = s_lo + lo, s_hi + hi


def _sinpi_point(d: Dyadic, w: int) -> Interval:
    r, _ = mod2_reduce(d)
    negate = False
    if r >= ONE:
        r = r - ONE
        negate = True
    if r > HALF:
        r = ONE - r
    # r in [0, 1/2]
    if r.is_zero():
        return Interval(ZERO, ZERO)
    if r == HALF:
        v = -ONE if negate else ONE
        return Interval(v, v)
    prec = w + 12
    pi = _PI.master(prec + 8)
    quarter = Dyadic(1, -2)
    if r <= quarter:
        u_lo = round_to_precision(pi.lo * r, prec + 4, "down")
        u_hi = round_to_precision(pi.hi * r, prec + 4, "up")
        lo, _ = _series(u_lo, prec, "sin")
        _, hi = _series(u_hi, prec, "sin")
    else:
        s = HALF - r
        u_lo = round_to_precision(pi.lo * s, prec + 4, "down")
        u_hi = round_to_precision(pi.hi * s, prec + 4, "up")
        lo, _ = _series(u_hi, prec, "cos")
        _, hi = _series(u_lo, prec, "cos")
    lo_d = max(Dyadic(lo, -prec), ZERO)
    hi_d = min(Dyadic(hi, -prec), ONE)
    if negate:
        lo_d, hi_d = -hi_d, -lo_d
    return Interval(lo_d, hi_d)


_PEAKS = ((Dyadic(1, -1), ONE), (Dyadic(3, -1), -ONE), (Dyadic(5, -1), ONE), (Dyadic(7, -1), -ONE))
_FULL = Interval(-ONE, ONE)


def sinpi_enclosure(x: Interval, w: int) -> Interval:
    """Enclosure of ``{sin(pi t) : t in x}`` rounded outward to ``2**-(w+2)``."""
    if x.width() >= 2:
        return _FULL
    r, q = mod2_reduce(x.lo)
    a = r
    b = x.hi - Dyadic(2 * q)
    enc = _sinpi_point(a, w)
    if b != a:
        enc = enc.hull(_sinpi_point(b, w))
        # sin(pi t) is monotone between consecutive half-integers
        for t, v in _PEAKS:
            if a <= t <= b:
                enc = enc.hull(Interval(v, v))
    return enc.outward(w + 2)


def cospi_enclosure(x: Interval, w: int) -> Interval:
    """Enclosure of ``{cos(pi t) : t in x}`` via the exact shift cos(pi t) = sin(pi (t + 1/2))."""
    return sinpi_enclosure(x.shift(HALF), w)
