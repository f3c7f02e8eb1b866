"""Reals as query-able sources of dyadic approximations at binary rate.

A :class:`CauchyReal` answers ``query(n)`` with a dyadic ``d`` such that
``|x - d| <= 2**-n``.  Queries are counted so the harness can report the precision
an oracle machine actually asked for.
"""

from __future__ import annotations

import random
import threading
from fractions import Fraction
from typing import Callable

from .dyadic import Dyadic, DyadicLike, round_to_precision
from .errors import BudgetExceeded
from .interval import _PI

DEFAULT_PRECISION_BUDGET = 1 << 20


class CauchyReal:
    def __init__(
        self,
        approx: Callable[[int], Dyadic],
        *,
        name: str | None = None,
        exact: Dyadic | None = None,
        budget: int | None = DEFAULT_PRECISION_BUDGET,
        cache: bool = True,
    ):
        self._approx = approx
        self.name = name
        self.exact = exact
        self.budget = budget
        self._use_cache = cache
        self._cache: tuple[int, Dyadic] | None = None
        self._lock = threading.Lock()
        self.queries = 0
        self.max_precision = -1

    def __repr__(self):
        return f"CauchyReal({self.name or '?'})"

    def query(self, n: int) -> Dyadic:
        if n < 0:
            raise ValueError("precision must be >= 0")
        if self.budget is not None and n > self.budget:
            raise BudgetExceeded(f"query at precision {n} exceeds budget {self.budget}")
        with self._lock:
            self.queries += 1
            if n > self.max_precision:
                self.max_precision = n
            cached = self._cache
        if self._use_cache and cached is not None and cached[0] >= n:
            return cached[1]
        d = Dyadic.coerce(self._approx(n))
        if self._use_cache:
            with self._lock:
                if self._cache is None or self._cache[0] < n:
                    self._cache = (n, d)
        return d

    def reset_accounting(self):
        self.queries = 0
        self.max_precision = -1

    # -- constructors -------------------------------------------------------------

    @classmethod
    def from_dyadic(cls, d: DyadicLike, mode: str = "exact", **kw) -> "CauchyReal":
        """``mode="exact"`` always answers ``d``; ``"truncate"`` answers floor(2**n d) / 2**n."""
        d = Dyadic.coerce(d)
        if mode == "exact":
            return cls(lambda n: d, name=str(d), exact=d, **kw)
        if mode == "truncate":
            return cls(lambda n: round_to_precision(d, n, "down"), name=f"trunc({d})", **kw)
        raise ValueError(f"unknown mode {mode!r}")

    @classmethod
    def from_int(cls, k: int, **kw) -> "CauchyReal":
        return cls.from_dyadic(Dyadic(k), **kw)

    @classmethod
    def from_rational(cls, p: int, q: int = 1, **kw) -> "CauchyReal":
        """Long division: answers floor(2**n p / q) / 2**n."""
        frac = Fraction(p, q)
        p, q = frac.numerator, frac.denominator
        if q & (q - 1) == 0:
            return cls.from_dyadic(Dyadic.from_fraction(frac), **kw)
        return cls(lambda n: Dyadic((p << n) // q, -n), name=f"{p}/{q}", **kw)

    @classmethod
    def from_fraction(cls, frac: Fraction, **kw) -> "CauchyReal":
        frac = Fraction(frac)
        return cls.from_rational(frac.numerator, frac.denominator, **kw)

    @classmethod
    def pi(cls, **kw) -> "CauchyReal":
        return cls(lambda n: _PI.master(n + 2).mid().round_to(n + 1), name="pi", **kw)

    @classmethod
    def parse(cls, text: str, **kw) -> "CauchyReal":
        """Accepts ``m*2^e``, decimals, ``p/q``, and ``pi``."""
        text = text.strip()
        if text == "pi":
            return cls.pi(**kw)
        if "/" in text:
            p, q = text.split("/", 1)
            return cls.from_rational(int(p), int(q), **kw)
        try:
            return cls.from_dyadic(Dyadic.parse(text), **kw)
        except ValueError:
            return cls.from_fraction(Fraction(text), **kw)

    def perturbed(self, seed: int) -> "CauchyReal":
        """A different representative of the same real: answers wobble by up to 2**-(n+1)."""
        base = self

        def approx(n: int) -> Dyadic:
            rng = random.Random(seed * 1_000_003 + n)
            d = base.query(n + 2).round_to(n + 2)
            return d + Dyadic(rng.choice((-1, 0, 1)), -(n + 1))

        return CauchyReal(approx, name=f"wobble({self.name}, {seed})", budget=self.budget)

    # -- size -------------------------------------------------------------------------

    def extension_parameter(self) -> int:
        """Least ``j >= 0`` certifying ``|x| <= 2**j - 1/4`` from the coarse query at n=2.

        The extra quarter keeps approximants queried at precision >= 2 inside
        ``[-2**j, 2**j]`` as well.
        """
        return extension_from_approx(self.query(2))

    # -- arithmetic ---------------------------------------------------------------

    def __add__(self, other):
        other = _as_creal(other)
        a, b = self, other
        return CauchyReal(
            lambda n: (a.query(n + 2) + b.query(n + 2)).round_to(n + 1),
            name=f"({a.name}+{b.name})",
        )

    __radd__ = __add__

    def __neg__(self):
        a = self
        return CauchyReal(lambda n: -a.query(n), name=f"-{a.name}", exact=None if a.exact is None else -a.exact)

    def __sub__(self, other):
        return self + (-_as_creal(other))

    def __rsub__(self, other):
        return _as_creal(other) - self

    def __mul__(self, other):
        other = _as_creal(other)
        a, b = self, other

        def approx(n: int) -> Dyadic:
            ka = (abs(a.query(0)) + 1).magnitude_bits()
            kb = (abs(b.query(0)) + 1).magnitude_bits()
            da = a.query(n + kb + 3)
            db = b.query(n + ka + 2)
            return (da * db).round_to(n + 1)

        return CauchyReal(approx, name=f"({a.name}*{b.name})")

    __rmul__ = __mul__

    def scale2(self, k: int) -> "CauchyReal":
        a = self
        return CauchyReal(lambda n: a.query(max(n + k, 0)).scale2(k), name=f"{a.name}*2^{k}")


def extension_from_approx(d: DyadicLike, radius: DyadicLike = Dyadic(1, -2)) -> int:
    """Least ``j >= 0`` with ``|d| + radius + 1/4 <= 2**j``."""
    bound = abs(Dyadic.coerce(d)) + Dyadic.coerce(radius) + Dyadic(1, -2)
    j = 0
    while Dyadic(1, j) < bound:
        j += 1
    return j


def _as_creal(v) -> CauchyReal:
    if isinstance(v, CauchyReal):
        return v
    if isinstance(v, Fraction):
        return CauchyReal.from_fraction(v)
    return CauchyReal.from_dyadic(Dyadic.coerce(v))


def from_dyadic(d: DyadicLike, mode: str = "exact") -> CauchyReal:
    return CauchyReal.from_dyadic(d, mode)


def query(x: CauchyReal, n: int) -> Dyadic:
    return x.query(n)
