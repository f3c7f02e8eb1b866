"""Exact Bellantoni-Cook interpreter over the naturals and its extension into W.

    B = [0, U, s0, s1, pr, cond ; SComp, SRec]

``Proj`` and ``SComp`` nodes are shared with :mod:`polyreal.terms`; tier checking is
the same procedure (``SRec`` is a :class:`~polyreal.terms.Recursion`).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import terms as W
from .errors import DomainError
from .terms import CLOSED, Basic, Proj, Recursion, SComp, Signature, Term


@dataclass(frozen=True, slots=True)
class Zero(Basic):
    SIGNATURE = CLOSED
    HEAD = "0"


@dataclass(frozen=True, slots=True)
class S0(Basic):
    SIGNATURE = Signature(0, 1)
    HEAD = "s0"


@dataclass(frozen=True, slots=True)
class S1(Basic):
    SIGNATURE = Signature(0, 1)
    HEAD = "s1"


@dataclass(frozen=True, slots=True)
class Pr(Basic):
    SIGNATURE = Signature(0, 1)
    HEAD = "pr"


@dataclass(frozen=True, slots=True)
class BCond(Basic):
    """cond(;x,y,z) = y if x is even, z if x is odd."""

    SIGNATURE = Signature(0, 3)
    HEAD = "bcond"


@dataclass(frozen=True, slots=True)
class SRec(Recursion):
    g: Term
    h0: Term
    h1: Term


BC_BASICS: dict[str, type] = {cls.HEAD: cls for cls in (Zero, S0, S1, Pr, BCond)}


def bc_eval(t: Term, args: Sequence[int] = ()) -> int:
    """Exact value of a BC term at natural-number arguments (normal then safe)."""
    args = tuple(int(a) for a in args)
    for a in args:
        if a < 0:
            raise DomainError(f"BC terms are defined on the naturals, got {a}")
    return _Eval().run(t, args)


class _Eval:
    def __init__(self):
        self.memo: dict[tuple[int, int, tuple[int, ...]], int] = {}
        self._keep: list[Term] = []

    def run(self, t: Term, args: tuple[int, ...]) -> int:
        if isinstance(t, Zero):
            return 0
        if isinstance(t, S0):
            return 2 * args[0]
        if isinstance(t, S1):
            return 2 * args[0] + 1
        if isinstance(t, Pr):
            return args[0] // 2
        if isinstance(t, BCond):
            x, y, z = args
            return y if x % 2 == 0 else z
        if isinstance(t, Proj):
            return args[t.i - 1]
        if isinstance(t, SComp):
            inner = tuple(self.run(a, args) for a in t.normals) + tuple(self.run(a, args) for a in t.safes)
            return self.run(t.h, inner)
        if isinstance(t, SRec):
            return self._srec(t, args)
        raise TypeError(f"not a BC term: {type(t).__name__}")

    def _srec(self, t: SRec, args: tuple[int, ...]) -> int:
        k, rest = args[0], args[1:]
        self._keep.append(t)
        chain = []
        while True:
            key = (id(t), k, rest)
            if key in self.memo or k == 0:
                break
            chain.append(k)
            k //= 2
        value = self.memo.get((id(t), k, rest))
        if value is None:
            value = self.run(t.g, rest)
            self.memo[(id(t), 0, rest)] = value
        for k in reversed(chain):
            # f(2n+1) = h1(n; f(n)); f(2n+2) = h0(n+1; f(n+1)); both recurse on k // 2
            step = t.h1 if k & 1 else t.h0
            value = self.run(step, (k // 2,) + rest + (value,))
            self.memo[(id(t), k, rest)] = value
        return value


def translate_to_W(t: Term) -> Term:
    """Map a BC term to a W term that agrees with it on the naturals."""
    if isinstance(t, Zero):
        return W.Const0()
    if isinstance(t, S0):
        return W.succ0()
    if isinstance(t, S1):
        return W.succ1()
    if isinstance(t, Pr):
        return W.Pred()
    if isinstance(t, BCond):
        return W.cond_discrete()
    if isinstance(t, Proj):
        return t
    if isinstance(t, SComp):
        return SComp(
            translate_to_W(t.h),
            tuple(translate_to_W(a) for a in t.normals),
            tuple(translate_to_W(a) for a in t.safes),
        )
    if isinstance(t, SRec):
        return W.SI(translate_to_W(t.g), translate_to_W(t.h0), translate_to_W(t.h1))
    raise TypeError(f"not a BC term: {type(t).__name__}")


def peaceful_wrap(f: Term) -> Term:
    """SI-built f^ with f^(n) = f(n) on the naturals and f^ peaceful.

    Uses g^() = f(0), h0^(x; y) = f(2x), h1^(x; y) = f(2x + 1); ``f`` must have
    signature (1;0).
    """
    from .tiers import signature_of

    if signature_of(f) != Signature(1, 0):
        raise ValueError("peaceful_wrap needs a term of signature (1;0)")
    x = Proj(1, 0, 1)
    two_x = W.apply_safe(W.Add(), x, x)
    two_x1 = W.apply_safe(W.Add(), two_x, W.Const1())
    g_hat = SComp(f, (W.Const0(),), ())

    def step(arg: Term) -> Term:
        # (1;1) wrapper: keep the normal slot, drop the previous value
        return SComp(Proj(1, 1, 1), (SComp(f, (arg,), ()),), (Proj(1, 1, 2),))

    return W.SI(g_hat, step(two_x), step(two_x1))
