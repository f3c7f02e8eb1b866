"""Fixture terms and reference functions used by the tests, the CLI and the scripts."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from typing import Callable

from .creal import CauchyReal
from .dyadic import Dyadic
from .harness import RefFunction, SharpT
from .syntax import parse, parse_bc
from .terms import (
    SI,
    Add,
    Cond,
    Const0,
    Const1,
    Pred,
    Proj,
    SComp,
    Signature,
    Sub,
    Term,
    apply_safe,
    mul_safe,
    succ0,
    succ1,
    zero_of,
)

# -- data files ------------------------------------------------------------------------


def data_path(name: str):
    return resources.files("polyreal") / "data" / name


def load_term(name: str) -> Term:
    return parse(data_path(name).read_text())


# -- SI fixtures -------------------------------------------------------------------------


def nat_id() -> Term:
    """g = 0, h0(x; v) = 2v, h1(x; v) = 2v + 1: the identity on the naturals."""
    v = Proj(1, 1, 2)
    return SI(Const0(), apply_safe(succ0(), v), apply_safe(succ1(), v))


def nat_len() -> Term:
    """Binary length: f(0) = 0, f(k) = f(k // 2) + 1."""
    step = apply_safe(Add(), Proj(1, 1, 2), Const1())
    return SI(Const0(), step, step)


def prefix_sum() -> Term:
    """f(0) = 0, f(k) = f(k // 2) + k // 2 (sum of the proper binary prefixes of k)."""
    step = apply_safe(Add(), Proj(1, 1, 1), Proj(1, 1, 2))
    return SI(Const0(), step, step)


def affine_shift() -> Term:
    """f(x; y, z) = y 2**len(x) + z (2**len(x) - 1), signature (1;2)."""
    prev = Proj(1, 3, 4)
    step = apply_safe(Add(), apply_safe(Add(), prev, prev), Proj(1, 3, 3))
    return SI(Proj(0, 2, 1), step, step)


def mixed_steps() -> Term:
    """Ternary SI with different even/odd steps: f(0)=z, even: f + y, odd: p(f + z)."""
    prev, y, z = Proj(1, 3, 4), Proj(1, 3, 2), Proj(1, 3, 3)
    h0 = apply_safe(Add(), prev, y)
    h1 = apply_safe(Pred(), apply_safe(Add(), prev, z))
    return SI(Proj(0, 2, 2), h0, h1)


def shift_right() -> Term:
    """shift(w; v) = floor(v / 2**len(w)), signature (1;1)."""
    step = apply_safe(Pred(), Proj(1, 2, 3))
    return SI(Proj(0, 1, 1), step, step)


SI_UNARY: dict[str, Callable[[], Term]] = {
    "nat_id": nat_id,
    "nat_len": nat_len,
    "prefix_sum": prefix_sum,
}
SI_TERNARY: dict[str, Callable[[], Term]] = {
    "affine_shift": affine_shift,
    "mixed_steps": mixed_steps,
}


# -- terms for the definability checks ---------------------------------------------------


def t_definer() -> Term:
    """g(x, y, z;) = floor(2xy / 2**len(yz)), within 1 of y x / #_1[yz]."""
    x, y, z = (Proj(3, 0, i) for i in (1, 2, 3))
    yz = apply_safe(mul_safe(), y, z)
    xy = apply_safe(mul_safe(), x, y)
    return SComp(shift_right(), (yz,), (apply_safe(Add(), xy, xy),))


def t_zero() -> Term:
    return zero_of(Signature(3, 0))


def _x2() -> Term:
    return Proj(0, 2, 1)


def _y2() -> Term:
    return Proj(0, 2, 2)


DEFINERS: dict[str, Callable[[], Term]] = {
    "identity": lambda: Proj(2, 0, 1),
    "neg": lambda: apply_safe(Sub(), Const0(), _x2()),
    "succ": lambda: apply_safe(Add(), _x2(), _y2()),
    "triple": lambda: apply_safe(Add(), apply_safe(Add(), _x2(), _x2()), _x2()),
    "half": lambda: apply_safe(Pred(), _x2()),
    "quarter": lambda: apply_safe(Pred(), apply_safe(Pred(), _x2())),
    "two": lambda: apply_safe(Add(), _y2(), _y2()),
    "zero": lambda: zero_of(Signature(2, 0)),
}


def _const(c: int) -> Callable[[CauchyReal], CauchyReal]:
    return lambda x: CauchyReal.from_int(c)


def _square_psi(d: Dyadic, n: int) -> Dyadic:
    return (d * d).round_to(n + 2)


REF_FUNCTIONS: dict[str, RefFunction] = {
    "identity": RefFunction(
        "identity", lambda x: x, lambda q: q, lipschitz_exp=0, modulus=lambda k, n: n, smooth_degree=1, smooth_M=2
    ),
    "neg": RefFunction("neg", lambda x: -x, lambda q: -q, lipschitz_exp=0, modulus=lambda k, n: n),
    "succ": RefFunction("succ", lambda x: x + 1, lambda q: q + 1, lipschitz_exp=0, modulus=lambda k, n: n),
    "triple": RefFunction("triple", lambda x: x * 3, lambda q: 3 * q, lipschitz_exp=2, modulus=lambda k, n: n + 2),
    "half": RefFunction("half", lambda x: x.scale2(-1), lambda q: q / 2, lipschitz_exp=0, modulus=lambda k, n: n),
    "quarter": RefFunction("quarter", lambda x: x.scale2(-2), lambda q: q / 4, lipschitz_exp=0, modulus=lambda k, n: n),
    "two": RefFunction("two", _const(2), lambda q: Fraction(2), lipschitz_exp=0, modulus=lambda k, n: 0),
    "square": RefFunction(
        "square",
        lambda x: x * x,
        lambda q: q * q,
        modulus=lambda k, n: k + n + 1,
        local_lipschitz=lambda j: 1 << (j + 1),
    ),
}

#: approximation functions paired with REF_FUNCTIONS for the modulus machine
PSI: dict[str, Callable[[Dyadic, int], Dyadic]] = {
    "identity": lambda d, n: d,
    "square": _square_psi,
    "triple": lambda d, n: d * 3,
}

SHARP_LINEAR = SharpT((0, 1))


# -- BC corpus ---------------------------------------------------------------------------

_ID = "(srec 0 (comp (s0) () ((proj 1 1 2))) (comp (s1) () ((proj 1 1 2))))"
_ONES = "(srec 0 (comp (s1) () ((proj 1 1 2))) (comp (s1) () ((proj 1 1 2))))"
_SHIFT = "(srec (proj 0 1 1) (comp (s0) () ((proj 1 2 3))) (comp (s0) () ((proj 1 2 3))))"
_ONE = "(comp (s1) () (0))"

BC_SOURCES: dict[str, str] = {
    "s0": "(s0)",
    "s1": "(s1)",
    "pr": "(pr)",
    "pr_pr": "(comp (pr) () ((comp (pr) () ((proj 0 1 1)))))",
    "s1_s0": "(comp (s1) () ((comp (s0) () ((proj 0 1 1)))))",
    "pr_s0": "(comp (pr) () ((comp (s0) () ((proj 0 1 1)))))",
    "mod2": f"(comp (bcond) () ((proj 0 1 1) 0 {_ONE}))",
    "is_even": f"(comp (bcond) () ((proj 0 1 1) {_ONE} 0))",
    "id_rec": _ID,
    "all_ones": _ONES,
    "complement": "(srec 0 (comp (s1) () ((proj 1 1 2))) (comp (s0) () ((proj 1 1 2))))",
    "popcount_parity": f"(srec 0 (proj 1 1 2) (comp (bcond) () ((proj 1 1 2) {_ONE} 0)))",
    "low_bit": f"(srec 0 0 {_ONE})",
    "const_zero": "(srec 0 0 0)",
    "shift_left": _SHIFT,
    "append": "(srec (proj 0 1 1) (comp (s0) () ((proj 1 2 3))) (comp (s1) () ((proj 1 2 3))))",
    "select": "(comp (bcond) () ((proj 1 2 1) (proj 1 2 2) (proj 1 2 3)))",
    "branch_normal": "(comp (bcond) () ((proj 1 0 1) (comp (s0) () ((proj 1 0 1))) (comp (s1) () ((proj 1 0 1)))))",
    "pr_of_id": f"(comp (pr) () ((comp {_ID} ((proj 1 0 1)) ())))",
    "nested": f"(srec 0 (comp (proj 1 1 1) ((comp {_ONES} ((proj 1 0 1)) ())) ((proj 1 1 2))) (comp (s1) () ((proj 1 1 2))))",
    "id_of_ones": f"(comp {_ID} ((comp {_ONES} ((proj 1 0 1)) ())) ())",
    "shift_by_self": f"(comp {_SHIFT} ((proj 1 0 1)) ((proj 1 0 1)))",
}


@dataclass(frozen=True)
class BCFixture:
    name: str
    term: Term
    arity: int


def bc_corpus() -> list[BCFixture]:
    from .tiers import signature_of

    out = []
    for name, src in BC_SOURCES.items():
        t = parse_bc(src)
        out.append(BCFixture(name, t, signature_of(t).arity))
    return out


# -- tier-checker corpus -----------------------------------------------------------------


def _bad_core(i: int) -> Term:
    # ambient (1;1); a safe input lands in a normal slot of nat_id
    if i % 2 == 0:
        arg = Proj(1, 1, 2)
    else:
        arg = apply_safe(Add(), Proj(1, 1, 1), Proj(1, 1, 2))
    return SComp(nat_id(), (arg,), ())


def _good_core(i: int) -> Term:
    inner = SComp(nat_id(), (Proj(1, 0, 1),), ())
    keep = Proj(1, 1, 2) if i % 2 == 0 else apply_safe(Add(), Proj(1, 1, 1), Proj(1, 1, 2))
    return SComp(Proj(1, 1, 1), (inner,), (keep,))


# name -> (builder, path label, signature in, signature out)
_CONTEXTS = {
    "pred": (lambda X: apply_safe(Pred(), X), "/safes[0]", (1, 1), (1, 1)),
    "add": (lambda X: apply_safe(Add(), Proj(1, 1, 2), X), "/safes[1]", (1, 1), (1, 1)),
    "cond": (lambda X: apply_safe(Cond(), Proj(1, 1, 1), X, Const1()), "/safes[1]", (1, 1), (1, 1)),
    "step0": (lambda X: SI(Const0(), X, Proj(1, 1, 2)), "/h0", (1, 1), (1, 0)),
    "step1": (lambda X: SI(Const0(), Proj(1, 1, 2), X), "/h1", (1, 1), (1, 0)),
    "lift": (lambda Y: SComp(Proj(1, 1, 1), (Y,), (Proj(1, 1, 2),)), "/normals[0]", (1, 0), (1, 1)),
    "normal": (lambda Y: SComp(nat_id(), (Y,), ()), "/normals[0]", (1, 0), (1, 0)),
}

_CHAINS = [
    [],
    ["pred"],
    ["add"],
    ["step0"],
    ["step1", "normal"],
    ["pred", "cond", "step0"],
    ["step0", "lift", "add"],
    ["add", "step1", "normal", "lift", "pred"],
    ["cond", "step0", "lift", "step1", "normal"],
    ["pred", "add", "cond", "step0", "normal", "lift", "step1"],
]


@dataclass(frozen=True)
class TierCase:
    name: str
    bad: Term
    good: Term
    path: str
    depth: int


def tier_corpus() -> list[TierCase]:
    """Ten ill-tiered terms (one safe-into-normal violation each) and well-tiered siblings."""
    cases = []
    for i, chain in enumerate(_CHAINS):
        bad, good = _bad_core(i), _good_core(i)
        path = "/normals[0]"
        sig = (1, 1)
        for name in chain:
            build, label, s_in, s_out = _CONTEXTS[name]
            if s_in != sig:
                raise AssertionError(f"context {name} expects {s_in}, chain has {sig}")
            bad, good = build(bad), build(good)
            path = label + path
            sig = s_out
        cases.append(TierCase(f"depth{len(chain)}_" + ("-".join(chain) or "root"), bad, good, path, len(chain)))
    return cases
