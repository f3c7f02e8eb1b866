"""Exact dyadic rationals ``m * 2**e`` with an odd (or zero) mantissa.

Canonical form makes equality structural: two values are equal exactly when their
``(mantissa, exponent)`` pairs are identical, so dyadics can be used directly as
memo keys and rendered deterministically.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Union

from .errors import DyadicOverflow

# Bound on |exponent|; overflow is fatal rather than wrapping.
EXPONENT_BOUND = 2**31

ROUND_MODES = ("down", "up", "nearest")

_TEXT_RE = re.compile(r"^\s*([+-]?\d+)\s*\*\s*2\s*\^\s*\(?\s*([+-]?\d+)\s*\)?\s*$")
_DECIMAL_RE = re.compile(r"^\s*([+-]?)(\d*)(?:\.(\d*))?\s*$")


class Dyadic:
    __slots__ = ("mantissa", "exponent")

    mantissa: int
    exponent: int

    def __init__(self, mantissa: int = 0, exponent: int = 0):
        mantissa = int(mantissa)
        exponent = int(exponent)
        if mantissa == 0:
            exponent = 0
        else:
            tz = (mantissa & -mantissa).bit_length() - 1
            if tz:
                mantissa >>= tz
                exponent += tz
        if not -EXPONENT_BOUND <= exponent <= EXPONENT_BOUND:
            raise DyadicOverflow(f"exponent {exponent} outside +-{EXPONENT_BOUND}")
        object.__setattr__(self, "mantissa", mantissa)
        object.__setattr__(self, "exponent", exponent)

    def __setattr__(self, name, value):
        raise AttributeError("Dyadic is immutable")

    # -- construction -------------------------------------------------------

    @classmethod
    def coerce(cls, value: "DyadicLike") -> "Dyadic":
        if isinstance(value, Dyadic):
            return value
        if isinstance(value, bool):
            return cls(int(value))
        if isinstance(value, int):
            return cls(value)
        if isinstance(value, Fraction):
            return cls.from_fraction(value)
        if isinstance(value, float):
            return cls.from_fraction(Fraction(value))
        raise TypeError(f"cannot convert {type(value).__name__} to Dyadic")

    @classmethod
    def from_fraction(cls, q: Fraction) -> "Dyadic":
        q = Fraction(q)
        den = q.denominator
        if den & (den - 1):
            raise ValueError(f"{q} is not a dyadic rational")
        return cls(q.numerator, -(den.bit_length() - 1))

    @classmethod
    def parse(cls, text: str) -> "Dyadic":
        """Parse ``m*2^e``, an integer, or a finite binary-exact decimal such as ``1.75``."""
        m = _TEXT_RE.match(text)
        if m:
            return cls(int(m.group(1)), int(m.group(2)))
        m = _DECIMAL_RE.match(text)
        if m and (m.group(2) or m.group(3)):
            sign, whole, frac = m.group(1), m.group(2) or "0", m.group(3) or ""
            q = Fraction(int(whole + frac), 10 ** len(frac))
            if sign == "-":
                q = -q
            return cls.from_fraction(q)
        raise ValueError(f"not a dyadic literal: {text!r}")

    # -- views ----------------------------------------------------------------

    def to_fraction(self) -> Fraction:
        if self.exponent >= 0:
            return Fraction(self.mantissa << self.exponent)
        return Fraction(self.mantissa, 1 << -self.exponent)

    def __float__(self) -> float:
        return float(self.to_fraction())

    def is_zero(self) -> bool:
        return self.mantissa == 0

    def is_integer(self) -> bool:
        return self.exponent >= 0

    def sign(self) -> int:
        return (self.mantissa > 0) - (self.mantissa < 0)

    def __int__(self) -> int:
        if not self.is_integer():
            raise ValueError(f"{self} is not an integer")
        return self.mantissa << self.exponent

    def magnitude_bits(self) -> int:
        """Least ``b`` with ``|self| < 2**b`` (0 for zero)."""
        if self.mantissa == 0:
            return 0
        return abs(self.mantissa).bit_length() + self.exponent

    # -- ring operations --------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Dyadic):
            try:
                other = Dyadic.coerce(other)
            except TypeError:
                return NotImplemented
        if self.mantissa == 0:
            return other
        if other.mantissa == 0:
            return self
        e = min(self.exponent, other.exponent)
        m = (self.mantissa << (self.exponent - e)) + (other.mantissa << (other.exponent - e))
        return Dyadic(m, e)

    __radd__ = __add__

    def __neg__(self):
        return Dyadic(-self.mantissa, self.exponent)

    def __pos__(self):
        return self

    def __abs__(self):
        return self if self.mantissa >= 0 else -self

    def __sub__(self, other):
        if not isinstance(other, Dyadic):
            try:
                other = Dyadic.coerce(other)
            except TypeError:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return Dyadic.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Dyadic):
            try:
                other = Dyadic.coerce(other)
            except TypeError:
                return NotImplemented
        return Dyadic(self.mantissa * other.mantissa, self.exponent + other.exponent)

    __rmul__ = __mul__

    def scale2(self, k: int) -> "Dyadic":
        """Exact multiplication by ``2**k``."""
        if self.mantissa == 0:
            return self
        return Dyadic(self.mantissa, self.exponent + k)

    # -- order --------------------------------------------------------------------

    def _cmp(self, other) -> int:
        other = Dyadic.coerce(other)
        d = (self - other).mantissa
        return (d > 0) - (d < 0)

    def __eq__(self, other):
        if isinstance(other, Dyadic):
            return self.mantissa == other.mantissa and self.exponent == other.exponent
        if isinstance(other, (int, Fraction)):
            return self.to_fraction() == other
        return NotImplemented

    def __hash__(self):
        # consistent with int/Fraction equality
        return hash(self.to_fraction())

    def __lt__(self, other):
        if isinstance(other, Fraction):
            return self.to_fraction() < other
        return self._cmp(other) < 0

    def __le__(self, other):
        if isinstance(other, Fraction):
            return self.to_fraction() <= other
        return self._cmp(other) <= 0

    def __gt__(self, other):
        if isinstance(other, Fraction):
            return self.to_fraction() > other
        return self._cmp(other) > 0

    def __ge__(self, other):
        if isinstance(other, Fraction):
            return self.to_fraction() >= other
        return self._cmp(other) >= 0

    # -- integer parts and rounding ------------------------------------------

    def floor(self) -> int:
        if self.exponent >= 0:
            return self.mantissa << self.exponent
        return self.mantissa >> -self.exponent

    def ceil(self) -> int:
        return -((-self).floor())

    def round_to(self, n: int, mode: str = "nearest") -> "Dyadic":
        return round_to_precision(self, n, mode)

    # -- rendering ----------------------------------------------------------------

    def __str__(self):
        return f"{self.mantissa}*2^{self.exponent}"

    def __repr__(self):
        return f"Dyadic({self.mantissa}, {self.exponent})"

    def to_decimal(self, digits: int | None = None) -> str:
        """Exact decimal expansion, or truncated toward zero to ``digits`` places."""
        if self.exponent >= 0:
            return str(self.mantissa << self.exponent)
        k = -self.exponent
        neg = self.mantissa < 0
        scaled = abs(self.mantissa) * 5**k  # value * 10**k
        places = k
        if digits is not None and digits < k:
            scaled //= 10 ** (k - digits)
            places = digits
        whole, frac = divmod(scaled, 10**places)
        body = str(whole) if places == 0 else f"{whole}.{frac:0{places}d}".rstrip("0").rstrip(".")
        if neg and scaled:
            body = "-" + body
        return body


DyadicLike = Union[Dyadic, int, Fraction]

ZERO = Dyadic(0)
ONE = Dyadic(1)
HALF = Dyadic(1, -1)


def exact_arith(op: str, a: DyadicLike, b: DyadicLike | None = None) -> Dyadic:
    a = Dyadic.coerce(a)
    if op == "neg":
        return -a
    b = Dyadic.coerce(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def round_to_precision(a: Dyadic, n: int, mode: str = "nearest") -> Dyadic:
    """Round onto the grid ``2**-n``; ``nearest`` breaks ties toward an even multiple."""
    if mode not in ROUND_MODES:
        raise ValueError(f"unknown rounding mode {mode!r}")
    a = Dyadic.coerce(a)
    if a.exponent >= -n:
        return a
    shift = -n - a.exponent
    q = a.mantissa >> shift
    rem = a.mantissa - (q << shift)
    if rem:
        if mode == "up":
            q += 1
        elif mode == "nearest":
            half = 1 << (shift - 1)
            if rem > half or (rem == half and q & 1):
                q += 1
    return Dyadic(q, -n)


def floor_ceil(a: DyadicLike) -> tuple[int, int]:
    a = Dyadic.coerce(a)
    return a.floor(), a.ceil()


def mod2_reduce(a: DyadicLike) -> tuple[Dyadic, int]:
    """Return ``(r, q)`` with ``a == 2*q + r`` and ``0 <= r < 2``, exactly."""
    a = Dyadic.coerce(a)
    q = a.scale2(-1).floor()
    r = a - Dyadic(2 * q)
    return r, q


def bit_length(j: int) -> int:
    """Length of the binary representation of ``|j|`` (0 has length 0)."""
    return abs(int(j)).bit_length()
