"""Random well-tiered W terms for property tests.

Terms are built top-down for a requested signature.  The generator tracks which
normal inputs are known to be natural numbers, so every SI recursion variable is
fed either by such an input or by a small non-negative constant; evaluation at the
advertised argument ranges therefore never leaves the domain of SI.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .terms import (
    SI,
    Add,
    Cond,
    Const0,
    Const1,
    Parity,
    Pred,
    Proj,
    SComp,
    Signature,
    Sub,
    Term,
    apply_safe,
    cond_discrete,
    int_const,
    succ0,
    succ1,
    zero_of,
)
from .tiers import signature_of


@dataclass(frozen=True)
class GenConfig:
    max_depth: int = 4
    max_si_nesting: int = 2
    max_const: int = 3
    p_si: float = 0.3


@dataclass(frozen=True)
class Generated:
    term: Term
    signature: Signature
    #: 0-based positions of arguments that must be natural numbers (SI recursion inputs)
    natural_args: tuple[int, ...]


def lift(t: Term, sig: Signature, m: int, n: int) -> Term:
    """Re-type ``t`` (closed, (m;0) or (m;n)) as a term of signature (m;n) with the same value."""
    if sig == (m, n):
        return t
    if sig == (0, 0):
        return apply_safe(Add(), t, zero_of(Signature(m, n)))
    if sig == (m, 0):
        return SComp(Proj(1, n, 1), (t,), tuple(Proj(m, n, m + j) for j in range(1, n + 1)))
    raise ValueError(f"cannot lift {sig} to ({m};{n})")


_SAFE_OPS = (
    (Add, 2),
    (Sub, 2),
    (Cond, 3),
    (Parity, 1),
    (Pred, 1),
)


class _Gen:
    def __init__(self, rng: random.Random, cfg: GenConfig):
        self.rng = rng
        self.cfg = cfg

    def const(self) -> Term:
        k = self.rng.randint(0, self.cfg.max_const)
        return int_const(k)

    def leaf(self, m: int, n: int) -> Term:
        if m + n == 0:
            return self.rng.choice((Const0(), Const1()))
        return Proj(m, n, self.rng.randint(1, m + n))

    def arg(self, m: int, n: int, nat: frozenset, depth: int, si_left: int) -> Term:
        """A term usable as an SComp argument in ambient (m;n): closed or exactly (m;n)."""
        if self.rng.random() < 0.15:
            return self.const()
        return self.term(m, n, nat, depth, si_left)

    def term(self, m: int, n: int, nat: frozenset, depth: int, si_left: int) -> Term:
        rng = self.rng
        if depth <= 0 or m + n == 0:
            return self.leaf(m, n)
        r = rng.random()
        if si_left > 0 and m >= 1 and r < self.cfg.p_si:
            return self.si_app(m, n, nat, depth, si_left)
        if r < 0.55:
            return self.basic_app(m, n, nat, depth, si_left)
        if r < 0.7:
            op = rng.choice((succ0, succ1))()
            a = self.term(m, n, nat, depth - 1, si_left)
            return apply_safe(op, a)
        if r < 0.8:
            args = [self.arg(m, n, nat, depth - 1, si_left) for _ in range(3)]
            args[0] = self.term(m, n, nat, depth - 1, si_left)
            return apply_safe(cond_discrete(), *args)
        return self.leaf(m, n)

    def basic_app(self, m: int, n: int, nat: frozenset, depth: int, si_left: int) -> Term:
        op, k = self.rng.choice(_SAFE_OPS)
        args = [self.arg(m, n, nat, depth - 1, si_left) for _ in range(k)]
        # one argument must carry the ambient signature
        args[self.rng.randrange(k)] = self.term(m, n, nat, depth - 1, si_left)
        return SComp(op(), (), tuple(args))

    def si_app(self, m: int, n: int, nat: frozenset, depth: int, si_left: int) -> Term:
        rng = self.rng
        p = rng.randint(0, min(m, 1))
        q = rng.randint(0, min(n, 1))
        # normal inputs handed to g: index 1..p of the SI's own normals (after the recursion var)
        normals_in: list[Term] = []
        g_nat = set()
        for j in range(p):
            if nat and rng.random() < 0.5:
                i = rng.choice(sorted(nat))
                normals_in.append(Proj(m, 0, i))
                g_nat.add(j + 1)
            else:
                normals_in.append(self.term(m, 0, frozenset(), depth - 2, 0))
        g = self.term(p, q, frozenset(g_nat), depth - 1, si_left - 1)
        step_nat = frozenset({1} | {j + 1 for j in g_nat})
        h0 = self.term(1 + p, q + 1, step_nat, depth - 1, si_left - 1)
        h1 = self.term(1 + p, q + 1, step_nat, depth - 1, si_left - 1)
        si = SI(g, h0, h1)
        if nat and rng.random() < 0.85:
            rec = Proj(m, 0, rng.choice(sorted(nat)))
        else:
            rec = int_const(rng.randint(0, 5))
        safes = tuple(self.arg(m, n, nat, depth - 2, si_left - 1) for _ in range(q))
        t = SComp(si, (rec,) + tuple(normals_in), safes)
        return lift(t, signature_of(t), m, n)


def random_term(
    rng: random.Random,
    signature: Signature | tuple[int, int] = (1, 1),
    cfg: GenConfig = GenConfig(),
) -> Generated:
    """A random well-tiered term of the given signature.

    The first normal argument (if any) is the designated natural-number input.
    """
    m, n = signature
    nat = frozenset({1}) if m >= 1 else frozenset()
    t = _Gen(rng, cfg).term(m, n, nat, cfg.max_depth, cfg.max_si_nesting)
    t = lift(t, signature_of(t), m, n)
    return Generated(t, signature_of(t), tuple(i - 1 for i in sorted(nat)))


def random_terms(seed: int, count: int, cfg: GenConfig = GenConfig()) -> list[Generated]:
    rng = random.Random(seed)
    sigs = [(1, 0), (1, 1), (2, 0), (1, 2), (2, 1)]
    return [random_term(rng, rng.choice(sigs), cfg) for _ in range(count)]
