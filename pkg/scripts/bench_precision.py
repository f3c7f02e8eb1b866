"""Wall time of guaranteed-precision evaluation against the requested precision n.

    python3 scripts/bench_precision.py [--max-n 1024] [--repeats 5]

Prints a table per term and the fitted log-log slope (time ~ n**slope).
"""

import argparse

from polyreal.creal import CauchyReal
from polyreal.fixtures import SI_TERNARY, SI_UNARY
from polyreal.harness import bench_scaling
from polyreal.terms import Add, Const1, Parity, Pred, apply_safe, pred_shift


def parity_tower(depth: int):
    t = Parity()
    for _ in range(depth):
        t = apply_safe(Parity(), apply_safe(Add(), t, Const1()))
    return t


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-n", type=int, default=256)
    ap.add_argument("--repeats", type=int, default=5)
    args = ap.parse_args()
    precisions = []
    n = 8
    while n <= args.max_n:
        precisions.append(n)
        n *= 2
    def near_pi():
        return [CauchyReal.from_rational(22, 7)]

    cases = [
        ("pred", Pred(), near_pi),
        ("pred_shift", pred_shift(), near_pi),
        ("parity_tower12", parity_tower(12), near_pi),
    ]
    cases += [(name, build(), near_pi) for name, build in SI_UNARY.items()]
    cases += [(name, build(), lambda: [CauchyReal.from_rational(22, 7), CauchyReal.from_int(3), CauchyReal.from_int(5)])
              for name, build in SI_TERNARY.items()]
    for name, term, point in cases:
        rep = bench_scaling(term, point, precisions, repeats=args.repeats)
        print(f"{name:16s} slope {rep.slope:5.2f}  " + "  ".join(f"n={p}:{s * 1e3:.2f}ms" for p, s in zip(rep.precisions, rep.seconds)))


if __name__ == "__main__":
    main()
