#!/usr/bin/env python3
"""Run every property suite at a chosen scale and print a residual table.

Heavier than the CLI defaults: bumps instance counts and sweeps a few
algebra sizes so drift in the numerics shows up before it reaches the
acceptance gate.  Usage:

    python3 scripts/run_suites.py [--seed 42] [--n 200] [--max-dim 5]
"""

import argparse
import json
import sys

from nclp import SuiteConfig, report_to_json, run_suite


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--seed", type=int, default=42)
    ap.add_argument("--n", type=int, default=200)
    ap.add_argument("--max-dim", type=int, default=5, dest="max_dim")
    ap.add_argument("--max-blocks", type=int, default=3, dest="max_blocks")
    ap.add_argument("--out", default=None)
    args = ap.parse_args()

    config = SuiteConfig(
        seed=args.seed,
        max_dim=args.max_dim,
        max_blocks=args.max_blocks,
        n_instances=args.n,
    )
    report = run_suite("all", config)

    width = max(len(r.name) for r in report.results)
    print(f"{'suite':<{width}}  {'status':6} {'cases':>6} {'worst residual':>15} {'time':>7}")
    for r in report.results:
        status = "pass" if r.passed else "FAIL"
        print(f"{r.name:<{width}}  {status:6} {r.n_cases:>6} "
              f"{r.worst_residual:>15.3e} {r.wall_time_s:>6.2f}s")
        for f in r.failures:
            print(f"    {f}")

    if args.out:
        with open(args.out, "w") as fh:
            json.dump(report_to_json(report), fh, indent=2, sort_keys=True)
            fh.write("\n")
        print(f"\nreport: {args.out}")
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
