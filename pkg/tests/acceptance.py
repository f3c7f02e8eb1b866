"""Acceptance criteria as plain functions, shared by the test suite and scripts/run_acceptance.py.

Each criterion returns an :class:`Outcome`; ``passed`` covers both the property and
its time limit.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction

from oracles import BC_MEANINGS, pred_quad
from polyreal.bc import bc_eval, translate_to_W
from polyreal.creal import CauchyReal
from polyreal.dyadic import Dyadic
from polyreal.evaluator import EvalContext, eval_at, eval_pred
from polyreal.fixtures import (
    DEFINERS,
    PSI,
    REF_FUNCTIONS,
    SHARP_LINEAR,
    SI_TERNARY,
    SI_UNARY,
    bc_corpus,
    nat_id,
    t_definer,
    t_zero,
    tier_corpus,
)
from polyreal.generate import random_terms
from polyreal.harness import (
    GridSpec,
    bench_scaling,
    check_definability,
    check_peaceful,
    check_T_definability,
    integer_approx_machine,
    integer_approximation,
    lipschitz_machine,
    modulus_machine,
    rational_evaluator,
    real_evaluator,
    scaling_machine,
)
from polyreal.interval import Interval
from polyreal.reference import FloatEvaluator
from polyreal.terms import SI, Add, Const1, Parity, Pred, SComp, apply_safe
from polyreal.tiers import check_tiers


@dataclass
class Outcome:
    number: int
    name: str
    ok: bool
    seconds: float
    limit: float
    detail: str
    extra: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.ok and self.seconds < self.limit

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        timing = f"{self.seconds:.2f}s/{self.limit:.0f}s"
        return f"[{tag}] {self.number}. {self.name}: {self.detail} ({timing})"


def _timed(number: int, name: str, limit: float):
    def wrap(fn):
        def run() -> Outcome:
            t0 = time.perf_counter()
            ok, detail, extra = fn()
            return Outcome(number, name, ok, time.perf_counter() - t0, limit, detail, extra)

        run.__name__ = fn.__name__
        run.number = number
        return run

    return wrap


TOL20 = Fraction(1, 2**20)


def _contains_si(t) -> bool:
    if isinstance(t, SI):
        return True
    if isinstance(t, SComp):
        return any(_contains_si(c) for c in (t.h,) + t.normals + t.safes)
    return False


@_timed(1, "integer preservation", 60)
def integer_preservation(count: int = 200, seed: int = 0):
    rng = random.Random(seed)
    worst = Fraction(0)
    bad = []
    with_si = 0
    for i, g in enumerate(random_terms(seed, count)):
        with_si += _contains_si(g.term)
        args = [rng.randint(0, 64) if j in g.natural_args else rng.randint(-8, 8) for j in range(g.signature.arity)]
        v = eval_at(g.term, args, 20).to_fraction()
        dev = abs(v - round(v))
        worst = max(worst, dev)
        if dev > TOL20:
            bad.append(i)
    ok = not bad
    return ok, f"{count} terms ({with_si} with SI), max distance to an integer {float(worst):.3g}", {"bad": bad}


@_timed(2, "BC extension", 60)
def bc_extension():
    corpus = bc_corpus()
    mismatches = []
    rng = random.Random(2)
    for fx in corpus:
        w = translate_to_W(fx.term)
        for k in range(65):
            args = [k] + [rng.randint(0, 6) for _ in range(fx.arity - 1)]
            want = bc_eval(fx.term, args)
            if want != BC_MEANINGS[fx.name](*args):
                mismatches.append((fx.name, args, "oracle"))
            got = round(eval_at(w, args, 20).to_fraction())
            if got != want:
                mismatches.append((fx.name, args, got, want))
    ok = len(corpus) >= 20 and not mismatches
    return ok, f"{len(corpus)} BC terms x k in [0,64], {len(mismatches)} mismatches", {"mismatches": mismatches[:5]}


@_timed(3, "predecessor", 30)
def predecessor():
    rng = random.Random(3)
    worst = 0.0
    for _ in range(1000):
        q = Fraction(rng.randint(-8_000_000, 8_000_000), 1_000_000)
        v = float(eval_at(Pred(), [q], 24))
        worst = max(worst, abs(v - pred_quad(float(q))))
    ctx = EvalContext(40)
    unit = all(
        (eval_pred(Interval.point(Dyadic(2 * n + 2)), ctx) - eval_pred(Interval.point(Dyadic(2 * n + 1)), ctx)).contains(1)
        for n in range(-4, 5)
    )
    ok = worst <= 1e-6 and unit
    return ok, f"max |p - quadrature| {worst:.2e} on 1000 points; unit mass on n in [-4,4]: {unit}", {}


@_timed(4, "SI closed form vs ODE", 60)
def si_closed_form():
    fe = FloatEvaluator(step=2.0**-10)
    worst = {}
    cases = [("nat_id", SI_UNARY["nat_id"](), ()), ("nat_len", SI_UNARY["nat_len"](), ()),
             ("prefix_sum", SI_UNARY["prefix_sum"](), ()), ("affine_shift", SI_TERNARY["affine_shift"](), (2, 3))]
    for name, t, rest in cases:
        xs, fs = fe.si_solution(t, tuple(float(r) for r in rest), 8)
        dev = 0.0
        # on grid points the ODE values need no interpolation; every 8th of 8193
        for i in range(0, len(xs), 8):
            q = Fraction(i, 1024)
            exact = float(eval_at(t, [q, *rest], 30))
            dev = max(dev, abs(exact - fs[i]))
        worst[name] = dev
    ok = all(v <= 1e-6 for v in worst.values())
    detail = ", ".join(f"{k} {v:.1e}" for k, v in worst.items())
    return ok, f"max deviation on [0,8]: {detail}", worst


@_timed(5, "peacefulness", 30)
def peacefulness():
    grid = GridSpec(x=(0, 8), y=(1, 8), z=(1, 8), samples=1000, seed=5)
    results = {}
    for name, build in (SI_UNARY | SI_TERNARY).items():
        results[name] = check_peaceful(build(), grid).passed
    parity = check_peaceful(Parity(), grid)
    ok = all(results.values()) and not parity.passed
    good = sum(results.values())
    return ok, f"{good}/{len(results)} SI fixtures peaceful on 1000 samples; parity refuted ({parity.violations} misses)", results


_MACHINE_POINTS = [
    Fraction(1, 3), Fraction(3, 2), Fraction(-9, 4), Fraction(0), Fraction(22, 7),
    Fraction(-5, 6), Fraction(7, 4), Fraction(2) - Fraction(1, 2**12), Fraction(-13, 5), Fraction(31, 8),
]


def _representatives(q: Fraction):
    """Two distinct representatives: dyadics exact vs truncated; rationals long division vs perturbed."""
    if (q.denominator & (q.denominator - 1)) == 0:
        d = Dyadic.from_fraction(q)
        return [CauchyReal.from_dyadic(d), CauchyReal.from_dyadic(d, mode="truncate")]
    x = CauchyReal.from_fraction(q)
    return [x, x.perturbed(1)]


@_timed(6, "machines", 60)
def machines():
    sq = REF_FUNCTIONS["square"]
    M = REF_FUNCTIONS["identity"].smooth_M
    g_scale = real_evaluator(lambda x, y: x * y + 1)
    g_half = rational_evaluator(lambda x, y: x / 2)
    h_int = integer_approximation(t_definer())
    runs = {
        "modulus": (lambda x, n: modulus_machine(sq.modulus, PSI["square"], x, n), lambda q: q * q, lambda n: Fraction(1, 2**n)),
        "scaling": (lambda x, n: scaling_machine(g_scale, x, n), lambda q: q, lambda n: Fraction(1, 2**n)),
        "lipschitz": (lambda x, n: lipschitz_machine(g_half, 0, x, n), lambda q: q / 2, lambda n: Fraction(1, 2**n)),
        "integer_approx": (
            lambda x, n: integer_approx_machine(h_int, 1, x, n),
            lambda q: q,
            lambda n: (M + 2) * Fraction(1, 2 ** (n - 1)),
        ),
    }
    worst = {}
    failures = []
    for name, (machine, target, bound) in runs.items():
        ratio = 0.0
        for n in (5, 10, 20):
            for q in _MACHINE_POINTS:
                for rep_i, x in enumerate(_representatives(q)):
                    err = abs(machine(x, n).to_fraction() - target(q))
                    ratio = max(ratio, float(err / bound(n)))
                    if err > bound(n):
                        failures.append((name, n, str(q), rep_i))
        worst[name] = ratio
    ok = not failures
    detail = ", ".join(f"{k} {v:.2f}" for k, v in worst.items())
    return ok, f"{len(_MACHINE_POINTS)} points x 2 reps x n in {{5,10,20}}; worst error/bound: {detail}", {"failures": failures}


@_timed(7, "definability", 30)
def definability():
    ident = REF_FUNCTIONS["identity"]
    d_grid = GridSpec(x=(-8, 8), y=(1, 8))
    t_grid = GridSpec(x=(-32, 32), y=(1, 8), z=(1, 16))
    d = check_definability(ident, DEFINERS["identity"](), bound=3, grid=d_grid)
    t = check_T_definability(ident, t_definer(), SHARP_LINEAR, grid=t_grid, bound=2)
    d0 = check_definability(ident, DEFINERS["zero"](), bound=3, grid=d_grid)
    t0 = check_T_definability(ident, t_zero(), SHARP_LINEAR, grid=t_grid, bound=2)
    ok = (
        d.passed and d.admissible > 0 and t.passed and t.admissible > 0
        and not d0.passed and not t0.passed
    )
    detail = (
        f"identity: {d.violations} of {d.admissible} / T: {t.violations} of {t.admissible} "
        f"({t.excluded} excluded); constant 0 refuted: {d0.violations} + {t0.violations} violations"
    )
    return ok, detail, {}


@_timed(8, "precision scaling", 120)
def precision_scaling():
    precisions = (8, 16, 32, 64, 128, 256)
    tower = Parity()
    for _ in range(12):
        tower = apply_safe(Parity(), apply_safe(Add(), tower, Const1()))
    slopes = {}
    for name, t in (("nat_id", nat_id()), ("parity_tower12", tower)):
        rep = bench_scaling(t, lambda: [CauchyReal.from_rational(1, 3)], precisions, repeats=5)
        slopes[name] = rep.slope
    ok = all(s <= 3 for s in slopes.values())
    detail = ", ".join(f"{k} slope {v:.2f}" for k, v in slopes.items())
    return ok, f"n in {{8..256}}: {detail}", slopes


@_timed(9, "tier checker", 5)
def tier_checker():
    cases = tier_corpus()
    wrong = []
    for c in cases:
        bad = check_tiers(c.bad)
        if bad.accepted or bad.violations != [(c.path, "safe-into-normal")]:
            wrong.append(c.name)
        if not check_tiers(c.good).accepted:
            wrong.append(c.name + "/good")
    ok = len(cases) == 10 and not wrong
    return ok, f"{len(cases)} ill-tiered rejected with paths, {len(cases)} siblings accepted; wrong: {wrong or 'none'}", {}


CRITERIA = [
    integer_preservation,
    bc_extension,
    predecessor,
    si_closed_form,
    peacefulness,
    machines,
    definability,
    precision_scaling,
    tier_checker,
]
