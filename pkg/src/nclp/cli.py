"""Command-line driver.

Exit codes: 0 success / all properties pass, 1 property or certification
failure, 2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from .errors import ExponentError, NclpError, UsageError
from .isometry import decompose, synthesize
from .serialize import (
    decomposition_to_json,
    element_from_json,
    isometry_from_json,
    isometry_to_json,
    jordan_from_json,
    read_json,
    write_json,
)
from .suites import SUITE_NAMES, SuiteConfig, report_to_json, run_suite


def _parse_p_list(text: str) -> tuple[float, ...]:
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        if not tok:
            continue
        if tok in ("inf", "Inf", "INF"):
            out.append(math.inf)
            continue
        try:
            out.append(float(tok))
        except ValueError:
            raise UsageError(f"bad exponent {tok!r} in --p")
    if not out:
        raise UsageError("--p parsed to an empty grid")
    return tuple(out)


def _parse_p(text: str) -> float:
    grid = _parse_p_list(text)
    if len(grid) != 1:
        raise UsageError("expected a single exponent")
    return grid[0]


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="nclp",
        description="Noncommutative L^p isometry toolkit: property suites, "
                    "decomposition, synthesis.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run property suites on seeded random instances")
    run.add_argument("--suite", default="all", metavar="NAME",
                     help=f"one of: {', '.join(SUITE_NAMES)}, all")
    run.add_argument("--seed", type=int, default=0)
    run.add_argument("--p", default="1,1.5,3,4,inf", metavar="GRID",
                     help="comma-separated exponents; 2 is rejected")
    run.add_argument("--max-dim", type=int, default=4, dest="max_dim",
                     help="bound on the total of the block dimensions")
    run.add_argument("--max-blocks", type=int, default=3, dest="max_blocks")
    run.add_argument("--n", type=int, default=50, help="instances per suite")
    run.add_argument("--tol", type=float, default=1e-8, help="equality tolerance eps_eq")
    run.add_argument("--tol-cert", type=float, default=1e-7, dest="tol_cert",
                     help="dense-map certification tolerance eps_cert")
    run.add_argument("--out", default=None, help="write the JSON report here")

    dec = sub.add_parser("decompose", help="factor a raw isometry into (w, J)")
    dec.add_argument("--in", dest="infile", required=True, help="raw isometry JSON")
    dec.add_argument("--out", default=None, help="write the decomposition JSON here")

    syn = sub.add_parser("synth", help="synthesize a dense isometry from (J, w, p)")
    syn.add_argument("--jordan", required=True, help="Jordan map JSON")
    syn.add_argument("--unitary", required=True, help="unitary element JSON")
    syn.add_argument("--p", required=True, help="exponent (use 'inf' for operator norm)")
    syn.add_argument("--out", default=None, help="write the dense isometry JSON here")
    return ap


def _cmd_run(args) -> int:
    config = SuiteConfig(
        seed=args.seed,
        p_grid=_parse_p_list(args.p),
        max_blocks=args.max_blocks,
        max_dim=args.max_dim,
        n_instances=args.n,
        eps_eq=args.tol,
        eps_cert=args.tol_cert,
    )
    report = run_suite(args.suite, config)
    for r in report.results:
        status = "pass" if r.passed else "FAIL"
        print(f"{r.name:14s} {status}  cases={r.n_cases}  "
              f"worst={r.worst_residual:.3e}  seed={r.worst_seed}  "
              f"t={r.wall_time_s:.2f}s")
        for f in r.failures[:10]:
            print(f"    {f}")
    doc = report_to_json(report)
    if args.out:
        write_json(args.out, doc)
        print(f"report written to {args.out}")
    return 0 if report.passed else 1


def _cmd_decompose(args) -> int:
    t = isometry_from_json(read_json(args.infile))
    try:
        dec = decompose(t)
    except (UsageError, ExponentError):
        raise
    except NclpError as exc:
        print(f"decomposition rejected: {exc}", file=sys.stderr)
        return 1
    doc = decomposition_to_json(dec)
    if args.out:
        write_json(args.out, doc)
        print(f"decomposition written to {args.out} (residual {dec.residual:.3e})")
    else:
        print(json.dumps(doc, indent=2, sort_keys=True))
    return 0


def _cmd_synth(args) -> int:
    jordan = jordan_from_json(read_json(args.jordan))
    w = element_from_json(read_json(args.unitary))
    p = _parse_p(args.p)
    try:
        t = synthesize(jordan, w, p)
    except (UsageError, ExponentError):
        raise
    except NclpError as exc:
        print(f"synthesis rejected: {exc}", file=sys.stderr)
        return 1
    doc = isometry_to_json(t)
    if args.out:
        write_json(args.out, doc)
        print(f"isometry written to {args.out}")
    else:
        print(json.dumps(doc, indent=2, sort_keys=True))
    return 0


def main(argv: list[str] | None = None) -> int:
    ap = _build_parser()
    try:
        args = ap.parse_args(argv)
        if args.command == "run":
            return _cmd_run(args)
        if args.command == "decompose":
            return _cmd_decompose(args)
        return _cmd_synth(args)
    except (UsageError, ExponentError) as exc:
        # bad exponents and malformed inputs are configuration problems,
        # not certification failures
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except NclpError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
