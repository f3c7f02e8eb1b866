"""Command-line front end.  All machine-readable output is JSON with sorted keys.

Exit status: 0 success/pass, 1 check or verification failure (or a library error,
reported as a JSON error object), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction
from pathlib import Path

from . import fixtures as F
from .bc import bc_eval, translate_to_W
from .creal import CauchyReal
from .dyadic import Dyadic
from .errors import ParseError, PolyrealError
from .evaluator import DEFAULT_ROUNDS, evaluate
from .harness import (
    GridSpec,
    SharpT,
    bench_scaling,
    check_definability,
    check_peaceful,
    check_T_definability,
    check_T_smooth,
    integer_approx_machine,
    integer_approximation,
    lipschitz_machine,
    local_lipschitz_machine,
    modulus_machine,
    scaling_machine,
    term_evaluator,
)
from .syntax import parse, parse_bc, pretty_print
from .tiers import check_tiers, signature_of


class UsageError(Exception):
    pass


def _emit(obj, out) -> None:
    out.write(json.dumps(obj, sort_keys=True, indent=2) + "\n")


def _read_term(path: str, bc: bool = False):
    if path.startswith("fixture:"):
        name = path.split(":", 1)[1]
        table = {**F.SI_UNARY, **F.SI_TERNARY, "t_definer": F.t_definer, "t_zero": F.t_zero, "shift_right": F.shift_right}
        table.update({f"def:{k}": v for k, v in F.DEFINERS.items()})
        if bc:
            srcs = F.BC_SOURCES
            if name not in srcs:
                raise UsageError(f"unknown BC fixture {name!r}")
            return parse_bc(srcs[name])
        if name not in table:
            raise UsageError(f"unknown fixture {name!r}; known: {sorted(table)}")
        return table[name]()
    p = Path(path)
    if not p.exists():
        raise UsageError(f"no such file: {path}")
    text = p.read_text()
    return parse_bc(text) if bc else parse(text)


def _points(values: list[str] | None) -> list[CauchyReal]:
    out: list[CauchyReal] = []
    for v in values or []:
        for part in v.split(","):
            part = part.strip()
            if part:
                try:
                    out.append(CauchyReal.parse(part))
                except (ValueError, ZeroDivisionError):
                    raise UsageError(f"cannot parse point literal {part!r}") from None
    return out


def _range(text: str) -> tuple[int, int]:
    try:
        a, b = text.split("..")
        return int(a), int(b)
    except ValueError:
        raise UsageError(f"expected a range a..b, got {text!r}") from None


def _grid(args, default_x=(-8, 8)) -> GridSpec:
    try:
        return GridSpec(
            x=_range(args.x) if args.x else default_x,
            y=_range(args.y) if args.y else (1, 8),
            z=_range(args.z) if args.z else (1, 8),
            samples=args.samples,
            seed=args.seed,
        )
    except ValueError as e:
        raise UsageError(str(e)) from None


def _ref(name: str):
    if name not in F.REF_FUNCTIONS:
        raise UsageError(f"unknown reference function {name!r}; known: {sorted(F.REF_FUNCTIONS)}")
    return F.REF_FUNCTIONS[name]


# -- subcommands -----------------------------------------------------------------------


def cmd_check(args, out) -> int:
    t = _read_term(args.term, bc=args.bc)
    rep = check_tiers(t)
    res = rep.to_json()
    if args.show:
        res["term"] = pretty_print(t)
    _emit(res, out)
    return 0 if rep.accepted else 1


def cmd_eval(args, out) -> int:
    t = _read_term(args.term)
    res = evaluate(t, _points(args.at), args.prec, budget=args.rounds)
    _emit(res.to_json(), out)
    return 0


def cmd_table(args, out) -> int:
    t = _read_term(args.term)
    lo, hi = (Fraction(s) for s in args.range.split(".."))
    step = Fraction(args.step)
    if step <= 0:
        raise UsageError("--step must be positive")
    rest = _points(args.at)
    rows = []
    x = lo
    while x <= hi:
        res = evaluate(t, [CauchyReal.from_fraction(x)] + rest, args.prec, budget=args.rounds)
        rows.append({"x": str(x), "value": str(res.value), "decimal": res.value.to_decimal(12)})
        x += step
    _emit({"rows": rows, "prec": args.prec}, out)
    return 0


def _verify_integers(samples: int, seed: int) -> dict:
    from .generate import random_terms

    rng = random.Random(seed)
    bad = []
    for i, g in enumerate(random_terms(seed, samples)):
        pt = [rng.randint(0, 64) if j in g.natural_args else rng.randint(-8, 8) for j in range(g.signature.arity)]
        v = evaluate(g.term, [CauchyReal.from_int(a) for a in pt], 20).value
        if abs(v - Dyadic(v.round_to(0))) > Dyadic(1, -20):
            bad.append({"index": i, "args": pt, "value": str(v)})
    return {"terms": samples, "failures": bad}


def _verify_peaceful(samples: int, seed: int) -> dict:
    res = {}
    grid = GridSpec(x=(0, 8), samples=samples, seed=seed)
    for name, build in {**F.SI_UNARY, **F.SI_TERNARY}.items():
        rep = check_peaceful(build(), grid)
        res[name] = {"pass": rep.passed, "violations": rep.violations, "admissible": rep.admissible}
    return {"fixtures": res, "failures": [k for k, v in res.items() if not v["pass"]]}


def _verify_closed_form(samples: int, seed: int) -> dict:
    from .evaluator import eval_to_precision
    from .reference import FloatEvaluator

    rng = random.Random(seed)
    cases = [(n, b(), ()) for n, b in F.SI_UNARY.items()] + [("affine_shift", F.affine_shift(), (3, 2))]
    out, failures = {}, []
    for name, t, rest in cases:
        xs, fs = FloatEvaluator().si_solution(t, tuple(float(r) for r in rest), 8)
        worst = 0.0
        for _ in range(samples):
            i = rng.randrange(len(xs))
            x = Fraction(i, 1 << 10)
            v = eval_to_precision(t, [CauchyReal.from_fraction(x)] + [CauchyReal.from_int(r) for r in rest], 30)
            worst = max(worst, abs(float(v) - fs[i]))
        out[name] = worst
        if worst > 1e-6:
            failures.append(name)
    return {"max_deviation": out, "tolerance": 1e-6, "failures": failures}


def _verify_bc(samples: int, seed: int) -> dict:
    failures = []
    top = max(samples - 1, 0)
    for fx in F.bc_corpus():
        w = translate_to_W(fx.term)
        for k in range(top + 1):
            argv = (k,) + (3,) * (fx.arity - 1)
            want = bc_eval(fx.term, argv)
            got = evaluate(w, [CauchyReal.from_int(a) for a in argv], 20).value.round_to(0)
            if got != Dyadic(want):
                failures.append({"term": fx.name, "args": list(argv), "bc": want, "w": str(got)})
    return {"terms": len(F.BC_SOURCES), "k_max": top, "failures": failures}


_SUITES = {
    "integers": (_verify_integers, 200),
    "peaceful": (_verify_peaceful, 1000),
    "closed-form": (_verify_closed_form, 50),
    "bc-agree": (_verify_bc, 65),
}


def cmd_verify(args, out) -> int:
    fn, default = _SUITES[args.suite]
    samples = default if args.samples is None else args.samples
    res = fn(samples, args.seed)
    res.update({"suite": args.suite, "seed": args.seed, "pass": not res["failures"]})
    _emit(res, out)
    return 0 if res["pass"] else 1


def _int_args(values: list[str] | None) -> list[int]:
    try:
        return [int(p) for v in values or [] for p in v.split(",") if p.strip()]
    except ValueError:
        raise UsageError("BC arguments are integers") from None


def cmd_bc_eval(args, out) -> int:
    t = _read_term(args.term, bc=True)
    signature_of(t)
    _emit({"value": bc_eval(t, _int_args(args.at))}, out)
    return 0


def cmd_bc_translate(args, out) -> int:
    t = _read_term(args.term, bc=True)
    w = translate_to_W(t)
    _emit({"term": pretty_print(w), "signature": list(signature_of(w))}, out)
    return 0


def _sharp(text: str) -> SharpT:
    try:
        return SharpT(tuple(int(c) for c in text.split(",")))
    except ValueError as e:
        raise UsageError(str(e)) from None


def cmd_harness(args, out) -> int:
    kind = args.kind
    if kind.startswith("machine-"):
        return _machine(args, out)
    if kind == "definability":
        f = _ref(args.f)
        g = _read_term(args.term) if args.term else F.DEFINERS[args.f]()
        rep = check_definability(f, g, Fraction(args.bound or 3), _grid(args), args.prec)
    elif kind == "t-definability":
        rep = check_T_definability(
            _ref(args.f), _read_term(args.term or "fixture:t_definer"), _sharp(args.T), _grid(args),
            Fraction(args.bound or 2), args.prec,
        )
    elif kind == "smooth":
        rep = check_T_smooth(_ref(args.f), _sharp(args.T), Fraction(args.M), _grid(args), args.prec)
    elif kind == "peaceful":
        if not args.term:
            raise UsageError("harness peaceful needs --term")
        grid = _grid(args, default_x=(0, 8))
        if grid.samples is None:
            grid = GridSpec(grid.x, grid.y, grid.z, 1000, grid.seed)
        rep = check_peaceful(_read_term(args.term), grid, args.prec)
    else:
        raise UsageError(f"unknown harness check {kind!r}")
    _emit(rep.to_json(with_points=args.points), out)
    return 0 if rep.passed else 1


def _machine(args, out) -> int:
    pts = _points(args.at)
    if len(pts) != 1:
        raise UsageError("machines take exactly one --at point")
    x, n = pts[0], args.prec
    name = args.f
    f = _ref(name)
    if args.kind == "machine-modulus":
        if f.modulus is None or name not in F.PSI:
            raise UsageError(f"{name} has no declared modulus/approximation function")
        v = modulus_machine(f.modulus, F.PSI[name], x, n)
    elif args.kind == "machine-scaling":
        from .harness import real_evaluator

        v = scaling_machine(real_evaluator(lambda a, y: y * f.real(a)), x, n)
    elif args.kind == "machine-lipschitz":
        if name in F.DEFINERS and f.lipschitz_exp is not None:
            v = lipschitz_machine(term_evaluator(F.DEFINERS[name]()), f.lipschitz_exp, x, n, eps=3)
        elif f.local_lipschitz is not None:
            from .harness import rational_evaluator

            g = rational_evaluator(lambda a, y: y * f.exact(a / y))
            v = local_lipschitz_machine(g, f.local_lipschitz, x, n)
        else:
            raise UsageError(f"{name} has no Lipschitz data")
    elif args.kind == "machine-integer":
        if f.smooth_degree is None:
            raise UsageError(f"{name} has no declared smoothness degree")
        v = integer_approx_machine(integer_approximation(F.t_definer()), f.smooth_degree, x, n)
    else:
        raise UsageError(f"unknown machine {args.kind!r}")
    _emit({"machine": args.kind, "f": name, "prec": n, "value": str(v), "decimal": v.to_decimal(12)}, out)
    return 0


def cmd_bench(args, out) -> int:
    t = _read_term(args.term)
    precs = [int(p) for p in args.precisions.split(",")]
    pts = args.at
    rep = bench_scaling(t, lambda: _points(pts), precs, repeats=args.repeats)
    _emit(rep.to_json(), out)
    return 0 if rep.polynomial else 1


# -- parser ----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="polyreal", description="Exact evaluation and tier checking for W terms.")
    sub = ap.add_subparsers(dest="cmd", required=True)
    rounds = dict(type=int, default=None, help=f"refinement rounds (default {DEFAULT_ROUNDS}; env POLYREAL_ROUNDS)")

    p = sub.add_parser("check", help="parse and tier-check a term")
    p.add_argument("term")
    p.add_argument("--bc", action="store_true", help="read a BC term")
    p.add_argument("--show", action="store_true", help="include the core-syntax rendering")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("eval", help="evaluate a term to 2^-prec")
    p.add_argument("term")
    p.add_argument("--at", action="append", help="point literals (m*2^e, decimal, p/q, pi); comma-separated or repeated")
    p.add_argument("--prec", type=int, default=20)
    p.add_argument("--rounds", **rounds)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("table", help="tabulate a term over its first argument")
    p.add_argument("term")
    p.add_argument("--range", required=True, help="a..b (rationals allowed)")
    p.add_argument("--step", default="1/2")
    p.add_argument("--at", action="append", help="values of the remaining arguments")
    p.add_argument("--prec", type=int, default=20)
    p.add_argument("--rounds", **rounds)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("verify", help="run a property suite")
    p.add_argument("--suite", required=True, choices=sorted(_SUITES))
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bc-eval", help="evaluate a BC term exactly")
    p.add_argument("term")
    p.add_argument("--at", action="append")
    p.set_defaults(func=cmd_bc_eval)

    p = sub.add_parser("bc-translate", help="print the W extension of a BC term")
    p.add_argument("term")
    p.set_defaults(func=cmd_bc_translate)

    p = sub.add_parser("harness", help="definability checks and machines")
    p.add_argument(
        "kind",
        choices=[
            "definability", "t-definability", "smooth", "peaceful",
            "machine-modulus", "machine-scaling", "machine-lipschitz", "machine-integer",
        ],
    )
    p.add_argument("--f", default="identity", help="reference function name")
    p.add_argument("--term", help="term file, fixture:NAME or fixture:def:NAME")
    p.add_argument("--bound")
    p.add_argument("--T", default="0,1", help="polynomial coefficients of T")
    p.add_argument("--M", default="2")
    p.add_argument("--x")
    p.add_argument("--y")
    p.add_argument("--z")
    p.add_argument("--samples", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--at", action="append")
    p.add_argument("--prec", type=int, default=20)
    p.add_argument("--points", action="store_true", help="include per-point residuals")
    p.set_defaults(func=cmd_harness)

    p = sub.add_parser("bench", help="precision scaling of eval")
    p.add_argument("term")
    p.add_argument("--at", action="append")
    p.add_argument("--precisions", default="8,16,32,64,128,256")
    p.add_argument("--repeats", type=int, default=3)
    p.set_defaults(func=cmd_bench)
    return ap


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    if getattr(args, "prec", 0) is not None and getattr(args, "prec", 0) < 0:
        _emit({"error": "usage", "message": "--prec must be >= 0"}, out)
        return 2
    try:
        return args.func(args, out)
    except UsageError as e:
        _emit({"error": "usage", "message": str(e)}, out)
        return 2
    except ParseError as e:
        _emit({"error": "parse", **e.to_json()}, out)
        return 1
    except PolyrealError as e:
        _emit({"error": type(e).__name__, "message": str(e)}, out)
        return 1
    except ValueError as e:
        _emit({"error": "value", "message": str(e)}, out)
        return 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
