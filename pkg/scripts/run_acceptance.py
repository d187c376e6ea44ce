"""Run every acceptance check and write a JSON summary next to the text report."""

import argparse
import json
import sys

from algkit.acceptance import run_all


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--json", help="optional path for a machine-readable summary")
    args = ap.parse_args()

    results = run_all(args.seed)
    print(f"seed: {args.seed}")
    for r in results:
        print(r.line())
    n_ok = sum(r.passed for r in results)
    print(f"{n_ok}/{len(results)} passed")
    if args.json:
        rows = [
            {"criterion": r.number, "name": r.name, "passed": r.passed, "detail": r.detail, "seconds": round(r.seconds, 3)}
            for r in results
        ]
        with open(args.json, "w") as fh:
            json.dump({"seed": args.seed, "results": rows}, fh, indent=2)
    return 0 if n_ok == len(results) else 1


if __name__ == "__main__":
    sys.exit(main())
