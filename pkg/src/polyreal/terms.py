"""Abstract syntax of the tiered real function algebra W.

    W = [0, 1, +, -, U, c, parity, p ; SComp, SI]

Arguments split into normal positions (first) and safe positions.  Nodes carry no
declared signature; :mod:`polyreal.tiers` synthesizes it bottom-up.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple


class Signature(NamedTuple):
    normal: int
    safe: int

    @property
    def arity(self) -> int:
        return self.normal + self.safe

    def __str__(self):
        return f"({self.normal};{self.safe})"


CLOSED = Signature(0, 0)


class Term:
    """Base class of W (and, via subclasses in :mod:`polyreal.bc`, BC) terms."""

    __slots__ = ()


class Basic(Term):
    """A basic function with a fixed signature."""

    __slots__ = ()
    SIGNATURE: Signature
    HEAD: str


@dataclass(frozen=True, slots=True)
class Const0(Basic):
    SIGNATURE = CLOSED
    HEAD = "0"


@dataclass(frozen=True, slots=True)
class Const1(Basic):
    SIGNATURE = CLOSED
    HEAD = "1"


@dataclass(frozen=True, slots=True)
class Add(Basic):
    SIGNATURE = Signature(0, 2)
    HEAD = "add"


@dataclass(frozen=True, slots=True)
class Sub(Basic):
    SIGNATURE = Signature(0, 2)
    HEAD = "sub"


@dataclass(frozen=True, slots=True)
class Cond(Basic):
    """c(;x,y,z) = x*y + (1-x)*z."""

    SIGNATURE = Signature(0, 3)
    HEAD = "cond"


@dataclass(frozen=True, slots=True)
class Parity(Basic):
    """parity(;x) = max(0, (pi/2) sin(pi x))."""

    SIGNATURE = Signature(0, 1)
    HEAD = "parity"


@dataclass(frozen=True, slots=True)
class Pred(Basic):
    """p(;x) = integral of parity over [0, x-1]; floor(x/2) on the integers."""

    SIGNATURE = Signature(0, 1)
    HEAD = "pred"


@dataclass(frozen=True, slots=True)
class Proj(Term):
    """U_i^{m+n}: returns argument ``i`` (1-based) of ``m`` normal and ``n`` safe arguments."""

    m: int
    n: int
    i: int

    def __post_init__(self):
        if self.m < 0 or self.n < 0:
            raise ValueError("projection arities must be >= 0")
        if not 1 <= self.i <= self.m + self.n:
            raise ValueError(f"projection index {self.i} outside 1..{self.m + self.n}")

    @property
    def signature(self) -> Signature:
        return Signature(self.m, self.n)


@dataclass(frozen=True, slots=True)
class SComp(Term):
    """f(xs; ys) = h(normals(xs;); safes(xs; ys))."""

    h: Term
    normals: tuple[Term, ...] = ()
    safes: tuple[Term, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "normals", tuple(self.normals))
        object.__setattr__(self, "safes", tuple(self.safes))


class Recursion(Term):
    """Shared shape of SI (here) and SRec (in :mod:`polyreal.bc`)."""

    __slots__ = ()
    g: Term
    h0: Term
    h1: Term


@dataclass(frozen=True, slots=True)
class SI(Recursion):
    """Safe integration.  On the naturals: f(0)=g, f(2n+1)=h1(n; f(n)), f(2n+2)=h0(n+1; f(n+1))."""

    g: Term
    h0: Term
    h1: Term


BASICS: dict[str, type] = {cls.HEAD: cls for cls in (Const0, Const1, Add, Sub, Cond, Parity, Pred)}


def children(t: Term) -> list[tuple[str, Term]]:
    if isinstance(t, SComp):
        out = [("h", t.h)]
        out += [(f"normals[{i}]", a) for i, a in enumerate(t.normals)]
        out += [(f"safes[{i}]", a) for i, a in enumerate(t.safes)]
        return out
    if isinstance(t, Recursion):
        return [("g", t.g), ("h0", t.h0), ("h1", t.h1)]
    return []


def size(t: Term) -> int:
    return 1 + sum(size(c) for _, c in children(t))


def depth(t: Term) -> int:
    return 1 + max((depth(c) for _, c in children(t)), default=0)


# -- small construction helpers --------------------------------------------------


def comp(h: Term, normals=(), safes=()) -> SComp:
    return SComp(h, tuple(normals), tuple(safes))


def apply_safe(h: Term, *args: Term) -> SComp:
    """Compose a purely-safe function ``h`` with argument terms in its safe slots."""
    return SComp(h, (), tuple(args))


def zero_of(sig: Signature) -> Term:
    """The constant 0 at signature ``sig`` (x1 - x1, or the closed 0)."""
    if sig.arity == 0:
        return Const0()
    x = Proj(sig.normal, sig.safe, 1)
    return apply_safe(Sub(), x, x)


# -- derived builders ----------------------------------------------------------------


def succ0() -> Term:
    """s0(;x) = 2x."""
    x = Proj(0, 1, 1)
    return apply_safe(Add(), x, x)


def succ1() -> Term:
    """s1(;x) = 2x + 1."""
    return apply_safe(Add(), apply_safe(succ0(), Proj(0, 1, 1)), Const1())


def pred_shift() -> Term:
    """p'(;x) = p(;x - 1) + 1."""
    x = Proj(0, 1, 1)
    return apply_safe(Add(), apply_safe(Pred(), apply_safe(Sub(), x, Const1())), Const1())


def cond_discrete() -> Term:
    """c_d(;x,y,z) = c(;x - 2p(;x), z, y): y on even x, z on odd x."""
    x, y, z = (Proj(0, 3, i) for i in (1, 2, 3))
    px = apply_safe(Pred(), x)
    bit = apply_safe(Sub(), x, apply_safe(Add(), px, px))
    return apply_safe(Cond(), bit, z, y)


def int_const(k: int) -> Term:
    """Closed term for the integer ``k`` built by binary doubling (size O(log |k|))."""
    if k < 0:
        return apply_safe(Sub(), Const0(), int_const(-k))
    if k == 0:
        return Const0()
    if k == 1:
        return Const1()
    half = int_const(k >> 1)
    return apply_safe(succ1() if k & 1 else succ0(), half)


def mul_safe() -> Term:
    """mul(;x,y) = c(;x, y, 0) = x*y."""
    return apply_safe(Cond(), Proj(0, 2, 1), Proj(0, 2, 2), Const0())


DERIVED = {
    "succ0": succ0,
    "succ1": succ1,
    "pred-shift": pred_shift,
    "cond-d": cond_discrete,
    "mul": mul_safe,
}


def derived_builders(name: str, k: int | None = None) -> Term:
    if name == "int_const":
        if k is None:
            raise ValueError("int_const needs k")
        return int_const(k)
    key = {"pred_shift": "pred-shift", "cond_discrete": "cond-d", "cond_d": "cond-d"}.get(name, name)
    if key not in DERIVED:
        raise ValueError(f"unknown derived builder {name!r}")
    return DERIVED[key]()
