"""Command-line front end.

Exit codes: 0 success, 1 a verification suite reported a failing case,
2 bad input, 3 solver failure, 4 sequencing search exhausted.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import suites
from .constants import ConstantsError, compute_constants
from .distributions import iid_sum, max_point_prob, rational_json
from .groups import InputError, read_graph, read_ground_set
from .sequencer import SearchExhausted, randomized_sequencing
from .subsets import build_table, lo_max_prob

DEFAULT_SEED = 20240101

EXIT_OK, EXIT_SUITE_FAILED, EXIT_INPUT, EXIT_SOLVER, EXIT_EXHAUSTED = 0, 1, 2, 3, 4


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _csv(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def cmd_dist(args) -> int:
    A = read_ground_set(args.set_file)
    law = iid_sum(A, args.ell, args.mode)
    x, p = max_point_prob(law)
    if args.format == "csv":
        _emit(law.to_csv(), args.out)
    else:
        _emit(_json({
            "context": str(A.context),
            "set": list(A.elements),
            "ell": args.ell,
            "mode": law.mode,
            "max": {"x": x} | rational_json(p),
            "distribution": law.to_dict()["support"],
        }), args.out)
    return EXIT_OK


def cmd_lo(args) -> int:
    A = read_ground_set(args.set_file)
    if not 1 <= args.ell <= A.n:
        raise InputError(f"--ell must be in [1, {A.n}]")
    table = build_table(A, args.ell)
    x, p = lo_max_prob(A, args.ell, table)
    if args.format == "csv":
        _emit(table.to_csv(), args.out)
    else:
        _emit(_json({
            "context": str(A.context),
            "set": list(A.elements),
            "ell": args.ell,
            "max": {"x": x} | rational_json(p),
            "counts": {str(k): str(v) for k, v in table.row(args.ell).items()},
        }), args.out)
    return EXIT_OK


def cmd_constants(args) -> int:
    try:
        report = compute_constants()
    except ConstantsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    _emit(_json(report.to_dict()), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    kwargs: dict = {}
    if args.suite in ("bounds2", "lo"):
        kwargs["seed"] = args.seed
        if args.samples is not None:
            kwargs["samples"] = args.samples
    if args.n_max is not None:
        kwargs["n_max" if args.suite != "be" else "n"] = args.n_max
    if args.ell_max is not None and args.suite != "bounds3":
        kwargs["ell_max"] = args.ell_max
    if args.primes and args.suite in ("bounds3", "fourier"):
        kwargs["primes"] = tuple(args.primes)
    if args.suite != "be":
        kwargs["workers"] = args.threads
    results = suites.run_suite(args.suite, **kwargs)
    failed = [r for r in results if not r.passed]
    if args.format == "csv":
        _emit(_csv(["case", "lhs", "rhs", "margin"], [r.row() for r in results]), args.out)
    else:
        _emit(_json({
            "suite": args.suite,
            "cases": len(results),
            "failures": len(failed),
            "worst_ratio": suites.worst_ratio(results),
            "results": [
                {"case": r.case, "lhs": float(r.lhs), "rhs": float(r.rhs), "margin": r.margin, "passed": r.passed}
                for r in results
            ],
        }), args.out)
    return EXIT_SUITE_FAILED if failed else EXIT_OK


def cmd_sequence(args) -> int:
    A = read_ground_set(args.set_file)
    G = read_graph(args.graph_file)
    if 0 in A:
        raise InputError("the set must not contain 0: partial sums s_{i-1}, s_i would coincide")
    if G.n != A.n:
        raise InputError(f"graph has {G.n} vertices but the set has {A.n} elements")
    try:
        res = randomized_sequencing(A, G, t=args.t, m=args.m, max_trials=args.trials,
                                    seed=args.seed, workers=args.threads)
    except SearchExhausted as exc:
        _emit(_json({
            "ordering": None,
            "best": list(exc.best.perm),
            "partial_sums": list(exc.best.partial_sums),
            "violations": [list(v) for v in exc.report.violations],
            "trials_used": exc.trials_used,
        }), args.out)
        return EXIT_EXHAUSTED
    _emit(_json(res.to_dict()), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--mode", choices=("exact", "float"), default="exact")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--out", default=None, help="write here instead of standard output")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--threads", type=int, default=1, help="worker cap; results do not depend on it")

    parser = argparse.ArgumentParser(prog="anticonc", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dist", parents=[common], help="law of ell uniform draws from a set")
    p.add_argument("set_file")
    p.add_argument("--ell", type=int, required=True)
    p.set_defaults(func=cmd_dist)

    p = sub.add_parser("lo", parents=[common], help="most likely sum of a random ell-subset")
    p.add_argument("set_file")
    p.add_argument("--ell", type=int, required=True)
    p.set_defaults(func=cmd_lo)

    p = sub.add_parser("constants", parents=[common], help="solve the C1 -> C2 -> C3 -> nu chain")
    p.set_defaults(func=cmd_constants)

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("suite", choices=suites.SUITES)
    p.add_argument("--n-max", type=int, default=None)
    p.add_argument("--ell-max", type=int, default=None)
    p.add_argument("--primes", type=int, nargs="+", default=None)
    p.add_argument("--samples", type=int, default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sequence", parents=[common], help="find a Gamma-sequencing")
    p.add_argument("set_file")
    p.add_argument("graph_file")
    p.add_argument("--t", type=int, default=None)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--trials", type=int, default=2000)
    p.set_defaults(func=cmd_sequence)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "ell", 1) < 1:
        print("error: --ell must be >= 1", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except (InputError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
