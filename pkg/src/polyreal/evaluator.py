"""Guaranteed-precision evaluation of well-tiered W terms.

Basic semantics over intervals:

* ``c(;x,y,z) = x*y + (1-x)*z``
* ``parity(;x) = max(0, (pi/2) sin(pi x))``
* ``p(;x)``: on ``[2n, 2n+1]`` it equals ``n``; on ``[2n+1, 2n+2]`` it equals
  ``n + (1 + cos(pi x))/2``.  It is non-decreasing, so an interval maps to the hull of
  its endpoint images.

Safe integration is evaluated without any ODE solving.  At the naturals the
recursion ``f(0)=g``, ``f(2n+1)=h1(n; f(n))``, ``f(2n+2)=h0(n+1; f(n+1))`` is run
(memoized, depth O(log k)); on a unit interval ``[m, m+1]`` the value interpolates
``f(m)`` and ``f(m+1)`` with weight ``(1 - cos(pi (x - m)))/2``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Sequence

from .creal import CauchyReal
from .dyadic import HALF, ONE, ZERO, Dyadic
from .errors import BudgetExceeded, DomainError, NeedsRefinement
from .interval import Interval, cospi_enclosure, pi_enclosure, sinpi_enclosure
from .terms import (
    SI,
    Add,
    Basic,
    Cond,
    Const0,
    Const1,
    Parity,
    Pred,
    Proj,
    Recursion,
    SComp,
    Sub,
    Term,
)
from .tiers import signature_of

DEFAULT_ROUNDS = int(os.environ.get("POLYREAL_ROUNDS", "12"))
PRECISION_MARGIN = 16
MAX_PIECES = 4

_UNIT = Interval(ZERO, ONE)


@dataclass
class EvalStats:
    si_expansions: int = 0
    memo_hits: int = 0
    nodes: int = 0


@dataclass
class EvalContext:
    """Per-evaluation state: working precision ``w`` (bits) and a memo of SI values."""

    w: int
    max_pieces: int = MAX_PIECES
    memo: dict = field(default_factory=dict)
    stats: EvalStats = field(default_factory=EvalStats)
    _pinned: list = field(default_factory=list)


PointBox = Sequence[Interval]


def _box_key(box: PointBox) -> tuple:
    return tuple((b.lo.mantissa, b.lo.exponent, b.hi.mantissa, b.hi.exponent) for b in box)


# -- basic functions ---------------------------------------------------------------


def eval_parity(x: Interval, ctx: EvalContext) -> Interval:
    w = ctx.w
    s = sinpi_enclosure(x, w)
    if s.is_point() and s.lo.is_zero():
        return s
    half_pi = pi_enclosure(w + 4) * Interval.point(HALF)
    v = (half_pi * s).outward(w)
    return Interval(max(v.lo, ZERO), max(v.hi, ZERO))


def _pred_point(a: Dyadic, w: int) -> Interval:
    if a.is_integer():
        return Interval.point(Dyadic(int(a) >> 1))
    m = a.floor()
    if m % 2 == 0:
        return Interval.point(Dyadic(m // 2))
    n = (m - 1) // 2
    c = cospi_enclosure(Interval.point(a), w)
    v = ((Interval.point(ONE) + c) * Interval.point(HALF)).intersect(_UNIT)
    return v.shift(Dyadic(n)).outward(w)


def eval_pred(x: Interval, ctx: EvalContext) -> Interval:
    """Enclosure of the continuous predecessor on ``x`` (monotone, so endpoint-wise)."""
    lo = _pred_point(x.lo, ctx.w)
    if x.is_point():
        return lo
    hi = _pred_point(x.hi, ctx.w)
    return Interval(lo.lo, hi.hi)


def eval_cond(x: Interval, y: Interval, z: Interval, ctx: EvalContext) -> Interval:
    w = ctx.w
    return ((x * y).outward(w) + ((Interval.point(ONE) - x) * z).outward(w)).outward(w)


# -- safe integration --------------------------------------------------------------


def si_integer_values(node: Recursion, k: int, args: PointBox, ctx: EvalContext) -> Interval:
    """Enclosure of f(k, args) for a natural ``k`` by recursion on notation."""
    if k < 0:
        raise DomainError(f"safe integration is defined for a recursion variable >= 0, got {k}")
    args = tuple(args)
    akey = _box_key(args)
    nid = id(node)
    ctx._pinned.append(node)
    chain = []
    while True:
        key = (nid, k, akey)
        if key in ctx.memo:
            ctx.stats.memo_hits += 1
            value = ctx.memo[key]
            break
        if k == 0:
            ctx.stats.si_expansions += 1
            value = eval_interval(node.g, args, ctx)
            ctx.memo[key] = value
            break
        chain.append(k)
        k //= 2
    for k in reversed(chain):
        ctx.stats.si_expansions += 1
        step = node.h1 if k & 1 else node.h0
        value = eval_interval(step, (Interval.point(Dyadic(k // 2)),) + args + (value,), ctx)
        ctx.memo[(nid, k, akey)] = value
    return value


def interpolation_weight(t: Interval, ctx: EvalContext) -> Interval:
    """Enclosure of (1 - cos(pi t))/2 for ``t`` inside [0, 1] (increasing there)."""
    lo_c = cospi_enclosure(Interval.point(t.lo), ctx.w)
    hi_c = lo_c if t.is_point() else cospi_enclosure(Interval.point(t.hi), ctx.w)
    lo = (ONE - lo_c.hi).scale2(-1)
    hi = (ONE - hi_c.lo).scale2(-1)
    return Interval(max(lo, ZERO), min(hi, ONE))


def closed_form_si(node: Recursion, x: Interval, args: PointBox, ctx: EvalContext, m: int | None = None) -> Interval:
    """Enclosure of f on ``x`` inside one unit interval ``[m, m+1]``, ``m >= 0``.

    Even ``m = 2n``: f(x) = f(2n) + (f(2n+1) - f(2n)) (1 - cos(pi x))/2.
    Odd ``m = 2n+1``: f(x) = f(2n+1) + (f(2n+2) - f(2n+1)) (1 + cos(pi x))/2.
    Both are ``f(m) + (f(m+1) - f(m)) (1 - cos(pi (x - m)))/2``.
    """
    if m is None:
        m = x.lo.floor()
    if m < 0:
        raise DomainError("safe integration is defined for a recursion variable >= 0")
    dm = Dyadic(m)
    if x.lo < dm or x.hi > dm + ONE:
        raise ValueError(f"{x} is not inside [{m}, {m + 1}]")
    a = si_integer_values(node, m, args, ctx)
    if x.is_point() and x.lo == dm:
        return a
    b = si_integer_values(node, m + 1, args, ctx)
    if x.is_point() and x.lo == dm + ONE:
        return b
    omega = interpolation_weight(x.shift(-dm), ctx)
    w = ctx.w
    v = (a + ((b - a) * omega).outward(w)).outward(w)
    # f(x) is a convex combination of f(m) and f(m+1)
    return v.intersect(a.hull(b))


def _eval_si(t: Recursion, box: PointBox, ctx: EvalContext) -> Interval:
    x, rest = box[0], tuple(box[1:])
    if x.hi < ZERO:
        raise DomainError(f"safe integration at a negative recursion variable {x}")
    if x.lo < ZERO:
        x = Interval(ZERO, x.hi)
    rest = tuple(b.outward(ctx.w) for b in rest)
    if x.is_point() and x.lo.is_integer():
        return si_integer_values(t, int(x.lo), rest, ctx)
    m_lo = x.lo.floor()
    m_hi = x.hi.ceil() - 1
    if m_hi - m_lo + 1 > ctx.max_pieces:
        raise NeedsRefinement(f"recursion variable {x} spans too many unit intervals")
    out = None
    for m in range(m_lo, m_hi + 1):
        dm = Dyadic(m)
        piece = x.intersect(Interval(dm, dm + ONE))
        v = closed_form_si(t, piece, rest, ctx, m)
        out = v if out is None else out.hull(v)
    return out


# -- dispatcher --------------------------------------------------------------------


def eval_interval(t: Term, box: PointBox, ctx: EvalContext) -> Interval:
    """Sound enclosure of the value set of ``t`` over ``box`` (normal then safe arguments)."""
    ctx.stats.nodes += 1
    if isinstance(t, Basic):
        if isinstance(t, Const0):
            return Interval(ZERO, ZERO)
        if isinstance(t, Const1):
            return Interval(ONE, ONE)
        if isinstance(t, Add):
            return (box[0] + box[1]).outward(ctx.w)
        if isinstance(t, Sub):
            return (box[0] - box[1]).outward(ctx.w)
        if isinstance(t, Cond):
            return eval_cond(box[0], box[1], box[2], ctx)
        if isinstance(t, Parity):
            return eval_parity(box[0], ctx)
        if isinstance(t, Pred):
            return eval_pred(box[0], ctx)
    elif isinstance(t, Proj):
        return box[t.i - 1]
    elif isinstance(t, SComp):
        inner = [eval_interval(a, box, ctx) for a in t.normals]
        inner += [eval_interval(a, box, ctx) for a in t.safes]
        return eval_interval(t.h, inner, ctx)
    elif isinstance(t, SI):
        return _eval_si(t, box, ctx)
    raise TypeError(f"not a W term: {type(t).__name__}")


# -- adaptive loop -----------------------------------------------------------------


@dataclass
class EvalResult:
    value: Dyadic
    enclosure: Interval
    rounds: int
    working_precision: int
    stats: EvalStats

    def to_json(self):
        return {
            "value": str(self.value),
            "decimal": self.value.to_decimal(),
            "enclosure": self.enclosure.to_json(),
            "rounds": self.rounds,
            "working_precision": self.working_precision,
        }


def _input_box(x: CauchyReal, w: int) -> Interval:
    if x.exact is not None:
        return Interval.point(x.exact)
    return Interval.around(x.query(w), Dyadic(1, -w))


def evaluate(
    t: Term,
    point: Sequence[CauchyReal],
    n: int,
    *,
    budget: int | None = None,
    w0: int | None = None,
) -> EvalResult:
    """Adaptive evaluation: raise the working precision until the enclosure is ``<= 2**-n`` wide."""
    if n < 0:
        raise ValueError("precision must be >= 0")
    sig = signature_of(t)
    point = list(point)
    if len(point) != sig.arity:
        raise ValueError(f"term has arity {sig.arity} {sig}, got {len(point)} argument(s)")
    budget = DEFAULT_ROUNDS if budget is None else budget
    w = w0 if w0 is not None else n + PRECISION_MARGIN
    target = Dyadic(1, -n)
    last = None
    for rounds in range(1, budget + 1):
        ctx = EvalContext(w)
        box = [_input_box(x, w) for x in point]
        try:
            enc = eval_interval(t, box, ctx)
        except NeedsRefinement:
            w *= 2
            continue
        last = enc
        if enc.width() <= target:
            value = enc.mid().round_to(n + 2)
            return EvalResult(value, enc, rounds, w, ctx.stats)
        w *= 2
    raise BudgetExceeded(f"no {n}-bit answer after {budget} rounds (last enclosure {last})")


def eval_to_precision(t: Term, point: Sequence[CauchyReal], n: int, **kw) -> Dyadic:
    """Dyadic within ``2**-n`` of the value of ``t`` at ``point``."""
    return evaluate(t, point, n, **kw).value


def eval_at(t: Term, args: Sequence, n: int = 20, **kw) -> Dyadic:
    """Convenience wrapper taking dyadic/int/Fraction/CauchyReal arguments."""
    from .creal import _as_creal

    return eval_to_precision(t, [_as_creal(a) for a in args], n, **kw)
