"""Grid checks for definability, smoothness and peacefulness, plus the oracle machines
that turn an integer characterization back into a real-number algorithm.

Every grid check supports or refutes a universally quantified statement on the
sampled grid only; reports say "supported on grid", never "proved".
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .bc import bc_eval
from .creal import CauchyReal, extension_from_approx
from .dyadic import Dyadic, bit_length
from .errors import PolyrealError
from .evaluator import evaluate, eval_to_precision
from .interval import Interval
from .terms import Term
from .tiers import signature_of

# -- configuration -------------------------------------------------------------------


@dataclass(frozen=True)
class GridSpec:
    """Integer ranges (inclusive) for x, y, z.  ``samples=None`` sweeps the full product."""

    x: tuple[int, int] = (-8, 8)
    y: tuple[int, int] = (1, 8)
    z: tuple[int, int] = (1, 8)
    samples: int | None = None
    seed: int = 0

    def __post_init__(self):
        for name in ("x", "y", "z"):
            lo, hi = getattr(self, name)
            if lo > hi:
                raise ValueError(f"empty {name} range {lo}..{hi}")
        if self.y[0] < 1 or self.z[0] < 1:
            raise ValueError("y and z range over integers >= 1")
        if self.samples is not None and self.samples < 0:
            raise ValueError("samples must be >= 0")

    def ranges(self, dims: int) -> list[range]:
        return [range(lo, hi + 1) for lo, hi in (self.x, self.y, self.z)[:dims]]

    def points(self, dims: int) -> list[tuple[int, ...]]:
        rs = self.ranges(dims)
        if self.samples is None:
            return list(itertools.product(*rs))
        rng = random.Random(self.seed)
        return [tuple(rng.choice(r) for r in rs) for _ in range(self.samples)]


@dataclass(frozen=True)
class SharpT:
    """#_T[x] = 2**T(floor(log2 x)) with T a polynomial given by coefficients (c0, c1, ...)."""

    coeffs: tuple[int, ...] = (0, 1)

    def __post_init__(self):
        if any(c < 0 for c in self.coeffs):
            raise ValueError("coefficients must be >= 0 so T is monotone and non-negative")

    def T(self, k: int) -> int:
        return sum(c * k**i for i, c in enumerate(self.coeffs))

    @staticmethod
    def floor_log2(x) -> int:
        x = Fraction(x)
        if x < 1:
            raise ValueError("#_T is defined for x >= 1")
        q = x.numerator // x.denominator
        return q.bit_length() - 1

    def __call__(self, x) -> int:
        return 1 << self.T(self.floor_log2(x))

    def to_json(self):
        return {"coeffs": list(self.coeffs)}


@dataclass
class RefFunction:
    """A reference real function with declared (and tested) regularity data.

    ``exact`` gives rational values when the function maps rationals to rationals;
    otherwise ``real`` is queried.
    """

    name: str
    real: Callable[[CauchyReal], CauchyReal]
    exact: Callable[[Fraction], Fraction] | None = None
    lipschitz_exp: int | None = None
    modulus: Callable[[int, int], int] | None = None
    local_lipschitz: Callable[[int], int] | None = None
    smooth_degree: int | None = None
    smooth_M: int | None = None

    def value(self, x: Fraction, n: int) -> Fraction:
        """f(x) within 2**-n (exactly, when ``exact`` is available)."""
        if self.exact is not None:
            return Fraction(self.exact(Fraction(x)))
        return self.real(CauchyReal.from_fraction(Fraction(x))).query(n).to_fraction()

    @property
    def is_exact(self) -> bool:
        return self.exact is not None


# -- reports -------------------------------------------------------------------------


def _num(v):
    if v is None:
        return None
    if isinstance(v, (Fraction, Dyadic)):
        return float(v)
    return v


@dataclass
class Report:
    check: str
    bound: Fraction
    tolerance: Fraction
    seed: int
    points: list[dict] = field(default_factory=list)
    excluded: int = 0
    violations: int = 0
    errors: int = 0
    max_residual: Fraction | None = None
    params: dict = field(default_factory=dict)

    def add(self, args, residual: Fraction | None, ok: bool, error: str | None = None, **extra):
        rec = {"args": [_num(a) if not isinstance(a, int) else a for a in args], "ok": ok}
        if residual is not None:
            rec["residual"] = float(residual)
            if self.max_residual is None or residual > self.max_residual:
                self.max_residual = residual
        if error is not None:
            rec["error"] = error
            self.errors += 1
        rec.update(extra)
        self.points.append(rec)
        if not ok:
            self.violations += 1

    @property
    def admissible(self) -> int:
        return len(self.points)

    @property
    def vacuous(self) -> bool:
        return self.admissible == 0

    @property
    def passed(self) -> bool:
        return self.violations == 0

    @property
    def verdict(self) -> str:
        if self.vacuous:
            return "vacuous"
        return "supported on grid" if self.passed else "refuted on grid"

    def first_violation(self) -> dict | None:
        return next((p for p in self.points if not p["ok"]), None)

    def to_json(self, with_points: bool = True) -> dict:
        out = {
            "check": self.check,
            "pass": self.passed,
            "vacuous": self.vacuous,
            "verdict": self.verdict,
            "bound": float(self.bound),
            "tolerance": float(self.tolerance),
            "max_residual": _num(self.max_residual),
            "admissible": self.admissible,
            "excluded": self.excluded,
            "violations": self.violations,
            "errors": self.errors,
            "seed": self.seed,
            "params": self.params,
        }
        if with_points:
            out["points"] = self.points
        return out


# -- evaluation adapters -------------------------------------------------------------

Evaluator = Callable[[Sequence[CauchyReal], int], Dyadic]


def term_evaluator(t: Term) -> Evaluator:
    """Wrap a W term as ``(args, prec) -> Dyadic`` within 2**-prec."""
    signature_of(t)
    return lambda args, prec: eval_to_precision(t, list(args), prec)


def rational_evaluator(fn: Callable[..., Fraction]) -> Evaluator:
    """Wrap a rational function of exactly-known arguments; results rounded at ``prec + 2``."""

    def run(args, prec):
        vals = []
        for a in args:
            if a.exact is None:
                raise ValueError("rational_evaluator needs exactly known arguments")
            vals.append(a.exact.to_fraction())
        p = prec + 2
        return Dyadic(round(Fraction(fn(*vals)) * (1 << p)), -p)

    return run


def real_evaluator(fn: Callable[..., CauchyReal]) -> Evaluator:
    """Wrap a function building a CauchyReal from CauchyReal arguments."""
    return lambda args, prec: fn(*args).query(prec)


def integer_approximation(t: Term) -> Callable[..., int]:
    """Integer function h with |h - t| <= 1 on integer points (nearest integer to t)."""
    signature_of(t)

    def h(*ints: int) -> int:
        v = eval_to_precision(t, [CauchyReal.from_int(i) for i in ints], 2)
        return int(v.round_to(0))

    return h


def _term_at(t: Term, args: Sequence[int], n: int) -> Fraction:
    return eval_to_precision(t, [CauchyReal.from_int(a) for a in args], n).to_fraction()


def _arity(t: Term, want: int, what: str):
    sig = signature_of(t)
    if sig.arity != want:
        raise ValueError(f"{what} needs a term of arity {want}, got signature {sig}")
    return sig


def _tol(n: int, exact_target: bool) -> Fraction:
    # one evaluation of g, plus one of the target when it is not exact
    return Fraction(1 if exact_target else 2, 1 << n)


# -- grid checks ---------------------------------------------------------------------


def check_definability(
    f: RefFunction, g: Term, bound=3, grid: GridSpec = GridSpec(), n: int = 20
) -> Report:
    """|g(x, y) - y f(x/y)| <= bound for integer x and y >= 1."""
    _arity(g, 2, "check_definability")
    bound = Fraction(bound)
    tol = _tol(n, f.is_exact)
    rep = Report("definability", bound, tol, grid.seed, params={"f": f.name, "n": n})
    for x, y in grid.points(2):
        try:
            gv = _term_at(g, (x, y), n)
            target = y * f.value(Fraction(x, y), n + bit_length(y))
        except PolyrealError as e:
            rep.add((x, y), None, False, error=str(e))
            continue
        r = abs(gv - target)
        rep.add((x, y), r, r <= bound + tol)
    return rep


def check_approximation(
    g_tilde: Term, h, grid: GridSpec = GridSpec(x=(0, 8)), bound=Fraction(1, 4), n: int = 20
) -> Report:
    """|g_tilde(args) - h(args)| <= bound at integer points; ``h`` is a BC term or a callable."""
    sig = signature_of(g_tilde)
    if sig.arity > 3:
        raise ValueError("grids cover at most three arguments")
    if isinstance(h, Term):
        hsig = signature_of(h)
        if hsig.arity != sig.arity:
            raise ValueError(f"arity mismatch: {sig} vs {hsig}")
        h_fn = lambda *a: bc_eval(h, a)  # noqa: E731
    else:
        h_fn = h
    bound = Fraction(bound)
    tol = _tol(n, True)
    rep = Report("approximation", bound, tol, grid.seed, params={"n": n})
    if grid.samples == 0:
        return rep
    for args in grid.points(sig.arity):
        try:
            r = abs(_term_at(g_tilde, args, n) - h_fn(*args))
        except PolyrealError as e:
            rep.add(args, None, False, error=str(e))
            continue
        rep.add(args, r, r <= bound + tol)
    return rep


def check_T_definability(
    f: RefFunction, g: Term, T: SharpT, grid: GridSpec = GridSpec(), bound=2, n: int = 20
) -> Report:
    """|g(x,y,z) - y f(x / #_T[yz])| <= bound where z > 4|x| / #_T[yz]; other points are excluded."""
    _arity(g, 3, "check_T_definability")
    bound = Fraction(bound)
    tol = _tol(n, f.is_exact)
    rep = Report("t-definability", bound, tol, grid.seed, params={"f": f.name, "T": list(T.coeffs), "n": n})
    for x, y, z in grid.points(3):
        s = T(y * z)
        if z * s <= 4 * abs(x):
            rep.excluded += 1
            continue
        try:
            gv = _term_at(g, (x, y, z), n)
            target = y * f.value(Fraction(x, s), n + bit_length(y))
        except PolyrealError as e:
            rep.add((x, y, z), None, False, error=str(e))
            continue
        r = abs(gv - target)
        rep.add((x, y, z), r, r <= bound + tol)
    return rep


def check_T_smooth(
    f: RefFunction, T: SharpT, M, grid: GridSpec = GridSpec(), n: int = 20, offsets: Sequence | None = None
) -> Report:
    """y |f(x1/#) - f(x2/#)| <= M for |x1 - x2| <= 1 under z > 4|x1|/#, # = #_T[yz].

    ``x1`` ranges over the grid; ``x2 = x1 + delta`` for each offset (defaults to a
    fixed set plus two seeded random dyadics in [-1, 1]).
    """
    M = Fraction(M)
    tol = _tol(n, f.is_exact)
    if offsets is None:
        rng = random.Random(grid.seed)
        offsets = [Fraction(0), Fraction(1), Fraction(-1), Fraction(1, 2), Fraction(-1, 2)]
        offsets += [Fraction(rng.randint(-(1 << 10), 1 << 10), 1 << 10) for _ in range(2)]
    offsets = [Fraction(o) for o in offsets]
    if any(abs(o) > 1 for o in offsets):
        raise ValueError("offsets must satisfy |delta| <= 1")
    rep = Report("t-smooth", M, tol, grid.seed, params={"f": f.name, "T": list(T.coeffs), "n": n})
    for x1, y, z in grid.points(3):
        s = T(y * z)
        if z * s <= 4 * abs(x1):
            rep.excluded += len(offsets)
            continue
        prec = n + bit_length(y)
        a = f.value(Fraction(x1, s), prec)
        for o in offsets:
            b = f.value((x1 + o) / s, prec)
            dev = y * abs(a - b)
            rep.add((x1, float(o), y, z), dev, dev <= M + tol)
    return rep


def check_peaceful(
    g: Term, grid: GridSpec = GridSpec(x=(0, 8), samples=1000), n: int = 20, resolution: int = 16
) -> Report:
    """Value at real x must meet the hull of the values at floor(x) and ceil(x).

    Unary terms vary only x; ternary terms also draw integer y, z >= 1 from the grid.
    Enclosures are sound, so a miss (beyond the 2**-n widening) is a genuine failure.
    """
    sig = signature_of(g)
    if sig.arity not in (1, 3):
        raise ValueError(f"peacefulness is checked for unary or ternary terms, got {sig}")
    samples = 1000 if grid.samples is None else grid.samples
    lo, hi = max(grid.x[0], 0), grid.x[1]
    if hi < lo:
        raise ValueError("peacefulness is sampled on x >= 0")
    eps = Fraction(1, 1 << n)
    rep = Report("peaceful", Fraction(0), eps, grid.seed, params={"arity": sig.arity, "n": n})
    rng = random.Random(grid.seed)
    span = (hi - lo) << resolution
    widen = Dyadic(1, -n)
    for _ in range(samples):
        x = Dyadic(rng.randint(0, span), -resolution) + Dyadic(lo)
        rest = () if sig.arity == 1 else (rng.randint(*grid.y), rng.randint(*grid.z))
        try:
            ex = _enclosure(g, (x,) + rest, n)
            ef = _enclosure(g, (Dyadic(x.floor()),) + rest, n)
            ec = _enclosure(g, (Dyadic(x.ceil()),) + rest, n)
        except PolyrealError as e:
            rep.add((x,) + rest, None, False, error=str(e))
            continue
        allowed = ef.hull(ec).widen(widen)
        if ex.intersects(allowed):
            r = Fraction(0)
        else:
            r = min(abs(ex.lo.to_fraction() - allowed.hi.to_fraction()), abs(allowed.lo.to_fraction() - ex.hi.to_fraction()))
        rep.add((x,) + rest, r, ex.intersects(allowed))
    return rep


def _enclosure(g: Term, args: Sequence[Dyadic], n: int) -> Interval:
    return evaluate(g, [CauchyReal.from_dyadic(a) for a in args], n).enclosure


# -- machines ------------------------------------------------------------------------


def modulus_machine(m: Callable[[int, int], int], psi: Callable[[Dyadic, int], Dyadic], x: CauchyReal, n: int) -> Dyadic:
    """Compute f(x) within 2**-n from a modulus ``m`` and an approximation function ``psi``.

    Steps: d = phi(2); k from d; alpha = m(k, n+1); d' = phi(alpha); output psi(d', n+1).
    ``alpha`` is clamped to >= 2 so d' stays within the k-interval certified from d.
    """
    d = x.query(2)
    k = extension_from_approx(d)
    alpha = max(int(m(k, n + 1)), 2)
    d2 = x.query(alpha)
    return Dyadic.coerce(psi(d2, n + 1))


def scaling_machine(g_eval: Evaluator, x: CauchyReal, n: int) -> Dyadic:
    """f(x) within 2**-n from g with |g(x, y) - y f(x)| <= 1: run g at precision 0 with y = 2**(n+1)."""
    e = g_eval([x, CauchyReal.from_int(1 << (n + 1))], 0)
    return Dyadic.coerce(e).scale2(-(n + 1))


def slack_bits(eps) -> int:
    """Extra precision so that a slack ``eps`` in |g(x,y) - y f(x/y)| <= eps is absorbed."""
    eps = Fraction(eps)
    if eps < 0:
        raise ValueError("eps must be >= 0")
    need = 1 + eps
    bits = 0
    while (1 << (bits + 1)) < need:
        bits += 1
    return bits


def lipschitz_machine(g_eval: Evaluator, a: int, x: CauchyReal, n: int, eps=1) -> Dyadic:
    """f(x) within 2**-n for f Lipschitz with K <= 2**a, given |g(x,y) - y f(x/y)| <= eps on
    integer x, y >= 1.

    n' = n + 2 + a (+ slack bits when eps > 1); x is snapped to k1 / 2**n' using one
    query at n' + 1, g runs at precision 0 on (k1, 2**n'), and the output is e / 2**n'.
    """
    n1 = n + 2 + a + slack_bits(eps)
    d = x.query(n1 + 1)
    k1 = int(d.scale2(n1).round_to(0))
    e = g_eval([CauchyReal.from_int(k1), CauchyReal.from_int(1 << n1)], 0)
    return Dyadic.coerce(e).scale2(-n1)


def local_lipschitz_machine(g_eval: Evaluator, K: Callable[[int], int], x: CauchyReal, n: int, eps=1) -> Dyadic:
    """Locally poly-Lipschitz variant: pick j with 4x in [-2**j, 2**j], a with K(j) <= 2**a,
    then run :func:`lipschitz_machine`."""
    d = x.query(2)
    bound = 4 * (abs(d) + Dyadic(1, -2))
    j = 0
    while Dyadic(1, j) < bound:
        j += 1
    kj = int(K(j))
    a = max(kj - 1, 0).bit_length()
    return lipschitz_machine(g_eval, a, x, n, eps)


def integer_approx_machine(h: Callable[[int, int, int], int], k: int, x: CauchyReal, n: int) -> Dyadic:
    """f(x) from an integer approximation h of a ternary characterization with #_k scaling.

    d' = phi(2), l = len(floor(d' + 1)), e = (l + n + 4)**k, d = phi(e + 1),
    w = h(floor(2**e d), 2**n, 2**(l + 4)); output w / 2**n.
    Within (M + 2) 2**-(n-1) of f(x) for a smoothness constant M.
    """
    if isinstance(h, Term):
        h_term = h
        h = lambda *ints: bc_eval(h_term, ints)  # noqa: E731
    d1 = x.query(2)
    ell = bit_length((d1 + 1).floor())
    e = (ell + n + 4) ** k
    d = x.query(e + 1)
    x1 = d.scale2(e).floor()
    w = int(h(x1, 1 << n, 1 << (ell + 4)))
    return Dyadic(w, -n)


# -- benchmarking --------------------------------------------------------------------


@dataclass
class BenchReport:
    precisions: list[int]
    seconds: list[float]
    rounds: list[int]
    slope: float
    max_slope: float

    @property
    def polynomial(self) -> bool:
        return self.slope <= self.max_slope

    def to_json(self):
        return {
            "precisions": self.precisions,
            "seconds": self.seconds,
            "rounds": self.rounds,
            "slope": self.slope,
            "max_slope": self.max_slope,
            "polynomial_on_range": self.polynomial,
        }


def loglog_slope(xs: Sequence[float], ys: Sequence[float]) -> float:
    lx = np.log2(np.asarray(xs, dtype=float))
    ly = np.log2(np.maximum(np.asarray(ys, dtype=float), 1e-9))
    return float(np.polyfit(lx, ly, 1)[0])


def bench_scaling(
    t: Term,
    point: Sequence[CauchyReal] | Callable[[], Sequence[CauchyReal]],
    precisions: Sequence[int] = (8, 16, 32, 64, 128, 256),
    repeats: int = 3,
    max_slope: float = 3.0,
) -> BenchReport:
    """Median wall time of eval_to_precision across ``precisions`` and the fitted log-log slope.

    ``point`` may be a factory so every run starts from uncached inputs.
    """
    make = point if callable(point) else (lambda: point)
    secs, rounds = [], []
    for n in precisions:
        times = []
        for _ in range(repeats):
            args = list(make())
            t0 = time.perf_counter()
            res = evaluate(t, args, n)
            times.append(time.perf_counter() - t0)
        secs.append(sorted(times)[len(times) // 2])
        rounds.append(res.rounds)
    return BenchReport(list(precisions), secs, rounds, loglog_slope(precisions, secs), max_slope)


def within(value: Dyadic, target: Fraction, bound: Fraction) -> bool:
    return abs(value.to_fraction() - Fraction(target)) <= bound


__all__ = [
    "GridSpec",
    "SharpT",
    "RefFunction",
    "Report",
    "BenchReport",
    "term_evaluator",
    "rational_evaluator",
    "real_evaluator",
    "integer_approximation",
    "check_definability",
    "check_approximation",
    "check_T_definability",
    "check_T_smooth",
    "check_peaceful",
    "modulus_machine",
    "scaling_machine",
    "lipschitz_machine",
    "local_lipschitz_machine",
    "integer_approx_machine",
    "slack_bits",
    "bench_scaling",
    "loglog_slope",
    "within",
]
