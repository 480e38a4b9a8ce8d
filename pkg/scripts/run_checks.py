"""Run every verification check on its default grid and summarise.

    python3 scripts/run_checks.py [--out reports.json] [--seed N]
"""

import argparse
import json
import sys

from landau_cs.verify import run_all


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", help="write the full reports as JSON here")
    ap.add_argument("--seed", type=int, default=None)
    args = ap.parse_args()

    reports = run_all(seed=args.seed)
    print(f"{'check':22s} {'points':>7s} {'worst':>10s} {'tol':>9s} {'metric':>6s} {'ms':>8s}  status")
    for r in reports:
        print(
            f"{r.check_name:22s} {len(r.grid):7d} {r.worst_metric_err:10.2e} {r.tolerance:9.1e} "
            f"{r.metric:>6s} {r.runtime_ms:8.1f}  {'PASS' if r.passed else 'FAIL'}"
        )
        for f in r.failures[:3]:
            print("    " + f)
    if args.out:
        with open(args.out, "w") as fh:
            json.dump([r.to_dict() for r in reports], fh, indent=2)
    return 0 if all(r.passed for r in reports) else 1


if __name__ == "__main__":
    sys.exit(main())
