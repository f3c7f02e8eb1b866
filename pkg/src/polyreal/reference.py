"""Floating-point reference semantics, used only to cross-check the exact evaluator.

Safe integration is solved here as the initial value problem it is defined by,

    f(0) = g,
    f'(x) = parity(x)   [h1(p(x); f(p(x)))    - f(2 p(x))]
          + parity(x-1) [h0(p'(x); f(p'(x)))  - f(2 p'(x) - 1)],

on a uniform grid, with p computed by Gauss-Legendre quadrature of parity.  None of
the interpolation formulas used by :mod:`polyreal.evaluator` appear here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .terms import SI, Add, Cond, Const0, Const1, Parity, Pred, Proj, SComp, Sub, Term

_NODES, _WEIGHTS = np.polynomial.legendre.leggauss(24)


def parity_f(x: float) -> float:
    return max(0.0, math.pi / 2 * math.sin(math.pi * x))


def _integrate_parity(a: float, b: float) -> float:
    """Quadrature of parity over [a, b], with a <= b inside one unit interval."""
    if b <= a:
        return 0.0
    mid, half = (a + b) / 2, (b - a) / 2
    xs = mid + half * _NODES
    vals = np.maximum(0.0, np.pi / 2 * np.sin(np.pi * xs))
    return float(half * np.dot(_WEIGHTS, vals))


def _parity_integral_0(u: float) -> float:
    """Integral of parity over [0, u] for 0 <= u <= 2."""
    return _integrate_parity(0.0, min(u, 1.0)) + _integrate_parity(1.0, max(u, 1.0))


_PERIOD = _parity_integral_0(2.0)


def pred_f(x: float) -> float:
    """p(x) = integral of parity over [0, x - 1]; whole periods of length 2 are summed at once."""
    u = x - 1.0
    q = math.floor(u / 2)
    return q * _PERIOD + _parity_integral_0(u - 2 * q)


@dataclass
class FloatEvaluator:
    """Evaluates W terms in floating point; SI nodes are integrated numerically."""

    step: float = 2.0**-10
    _solutions: dict = field(default_factory=dict)
    _keep: list = field(default_factory=list)

    def __call__(self, t: Term, args) -> float:
        return self.eval(t, tuple(float(a) for a in args))

    def eval(self, t: Term, args: tuple) -> float:
        if isinstance(t, Const0):
            return 0.0
        if isinstance(t, Const1):
            return 1.0
        if isinstance(t, Add):
            return args[0] + args[1]
        if isinstance(t, Sub):
            return args[0] - args[1]
        if isinstance(t, Cond):
            x, y, z = args
            return x * y + (1 - x) * z
        if isinstance(t, Parity):
            return parity_f(args[0])
        if isinstance(t, Pred):
            return pred_f(args[0])
        if isinstance(t, Proj):
            return args[t.i - 1]
        if isinstance(t, SComp):
            inner = tuple(self.eval(a, args) for a in t.normals) + tuple(self.eval(a, args) for a in t.safes)
            return self.eval(t.h, inner)
        if isinstance(t, SI):
            xs, fs = self.si_solution(t, args[1:], max(args[0], 0.0))
            return float(np.interp(args[0], xs, fs))
        raise TypeError(f"not a W term: {type(t).__name__}")

    def si_solution(self, node: SI, rest: tuple, upto: float):
        """Grid and values of x -> f(x, rest) on [0, ceil(upto)], by classical RK4."""
        end = max(1, math.ceil(upto))
        key = (id(node), tuple(rest))
        have = self._solutions.get(key)
        if have is not None and have[0][-1] >= end:
            return have
        self._keep.append(node)
        per_unit = round(1 / self.step)
        count = end * per_unit
        h = 1.0 / per_unit
        xs = np.linspace(0.0, float(end), count + 1)
        fs = np.empty(count + 1)
        fs[0] = self.eval(node.g, tuple(rest))
        known = 1

        def f_at(u: float) -> float:
            # values are only needed at points already integrated
            return float(np.interp(u, xs[:known], fs[:known]))

        def rhs(x: float) -> float:
            out = 0.0
            w1 = parity_f(x)
            if w1 > 0:
                px = pred_f(x)
                out += w1 * (self.eval(node.h1, (px,) + tuple(rest) + (f_at(px),)) - f_at(2 * px))
            w0 = parity_f(x - 1)
            if w0 > 0:
                pp = pred_f(x - 1) + 1
                out += w0 * (self.eval(node.h0, (pp,) + tuple(rest) + (f_at(pp),)) - f_at(2 * pp - 1))
            return out

        for i in range(count):
            x = xs[i]
            k1 = rhs(x)
            k2 = rhs(x + h / 2)
            k4 = rhs(x + h)
            fs[i + 1] = fs[i] + h / 6 * (k1 + 4 * k2 + k4)
            known = i + 2
        self._solutions[key] = (xs, fs)
        return xs, fs
