"""Run the acceptance criteria outside pytest and print one line per criterion.

    python3 scripts/run_acceptance.py [--only 3,6] [--json out.json]

Exit status is 0 only if every selected criterion passes within its time limit.
"""

import argparse
import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))

from acceptance import CRITERIA  # noqa: E402


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--only", help="comma-separated criterion numbers")
    ap.add_argument("--json", type=Path, help="also write the outcomes as JSON")
    args = ap.parse_args()
    wanted = {int(s) for s in args.only.split(",")} if args.only else None
    outcomes = []
    for crit in CRITERIA:
        if wanted and crit.number not in wanted:
            continue
        out = crit()
        outcomes.append(out)
        print(out.line(), flush=True)
    if args.json:
        rows = [
            {"number": o.number, "name": o.name, "passed": o.passed, "seconds": o.seconds, "limit": o.limit, "detail": o.detail}
            for o in outcomes
        ]
        args.json.write_text(json.dumps(rows, indent=2) + "\n")
    failed = [o for o in outcomes if not o.passed]
    print(f"{len(outcomes) - len(failed)}/{len(outcomes)} criteria passed")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
