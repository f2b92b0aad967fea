"""Command-line front end.

Exit codes: 0 = YES / success, 1 = NO, 2 = usage or parse error,
3 = invalid or oversized instance.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from .decider import DecisionParams, decide_slocc, make_witness, oracle_report
from .errors import (DimensionError, FormulaSyntaxError, InstanceTooLargeError,
                     InvalidInstanceError, ParameterError)
from .linalg import GaussianRational
from .pit import num_vars, parse_formula, pit_to_slocc, size
from .states import BipartiteState, charlie_slices, load_state, schmidt_rank

EXIT_YES, EXIT_NO, EXIT_USAGE, EXIT_INVALID = 0, 1, 2, 3


class _Fail(Exception):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _emit_report(payload: dict, summary: str, json_out) -> None:
    if json_out is None:
        print(summary)
    elif json_out == "-":
        print(summary, file=sys.stderr)
        sys.stdout.write(_dump(payload))
    else:
        with open(json_out, "w", encoding="utf-8") as fh:
            fh.write(_dump(payload))
        print(summary)


def _summary(report) -> str:
    line = f"answer: {report.answer} (target rank {report.target_rank}, method {report.method}"
    if report.method == "sampling":
        line += f", M={report.set_size}, t={report.trials}"
    line += f", error bound {report.error_bound}, seed {report.seed})"
    if report.witness is not None:
        line += f"\nwitness rank {report.witness.rank}, outcome probability {report.witness.outcome_probability}"
    return line


def _load(path):
    try:
        return load_state(path)
    except OSError as exc:
        raise _Fail(EXIT_USAGE, f"cannot read {path}: {exc.strerror or exc}")
    except json.JSONDecodeError as exc:
        raise _Fail(EXIT_USAGE, f"{path}: invalid JSON: {exc}")


def _params(args) -> DecisionParams:
    return DecisionParams(set_size=args.set_size, trials=args.trials, seed=args.seed)


def _require_rank(args):
    if args.target_rank is None:
        raise _Fail(EXIT_USAGE, "--target-rank is required")
    if args.target_rank < 1:
        raise _Fail(EXIT_INVALID, f"target rank must be >= 1, got {args.target_rank}")
    return args.target_rank


def cmd_decide(args) -> int:
    d = _require_rank(args)
    psi = _load(args.state)
    report = decide_slocc(psi, d, _params(args), exact=args.exact)
    _emit_report(report.to_json(), _summary(report), args.json)
    return EXIT_YES if report.feasible else EXIT_NO


def cmd_oracle(args) -> int:
    d = _require_rank(args)
    psi = _load(args.state)
    report = oracle_report(psi, d, _params(args))
    _emit_report(report.to_json(), _summary(report), args.json)
    return EXIT_YES if report.feasible else EXIT_NO


def cmd_pit(args) -> int:
    text = args.formula
    if os.path.isfile(text):
        with open(text, encoding="utf-8") as fh:
            text = fh.read()
    try:
        f = parse_formula(text)
    except FormulaSyntaxError as exc:
        raise _Fail(EXIT_USAGE, f"syntax error: {exc}")
    psi, d = pit_to_slocc(f)
    report = decide_slocc(psi, d, _params(args), exact=args.exact)
    payload = report.to_json()
    payload["formula"] = {"size": size(f), "variables": num_vars(f), "dimension": d}
    verdict = "not identically zero" if report.feasible else "identically zero"
    summary = (f"{verdict} (e={size(f)}, m={num_vars(f)}, N={d})\n" + _summary(report))
    _emit_report(payload, summary, args.json)
    return EXIT_YES if report.feasible else EXIT_NO


def _parse_coeffs(text):
    try:
        return [GaussianRational.parse(tok) for tok in text.split(",")]
    except ValueError as exc:
        raise _Fail(EXIT_USAGE, str(exc))


def cmd_witness(args) -> int:
    psi = _load(args.state)
    if args.coeffs is not None:
        w = make_witness(psi, charlie_slices(psi), _parse_coeffs(args.coeffs))
        sys.stdout.write(_dump(w.to_json()))
        return EXIT_YES
    d = _require_rank(args)
    report = decide_slocc(psi, d, _params(args), exact=args.exact)
    if report.witness is None:
        print(_summary(report), file=sys.stderr)
        return EXIT_NO
    sys.stdout.write(_dump(report.witness.to_json()))
    return EXIT_YES


def cmd_slices(args) -> int:
    basis = charlie_slices(_load(args.state))
    sys.stdout.write(_dump([m.to_json() for m in basis.mats]))
    return EXIT_YES


def cmd_schmidt_rank(args) -> int:
    phi = BipartiteState.from_tensor(_load(args.state))
    print(schmidt_rank(phi))
    return EXIT_YES


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="slocc-pit",
        description="Decide tripartite-to-bipartite SLOCC convertibility and polynomial identity.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    decision = argparse.ArgumentParser(add_help=False)
    decision.add_argument("--target-rank", type=int, help="Schmidt rank d of the target state")
    decision.add_argument("--set-size", type=int, help="sample set {1..M}; default 64*d")
    decision.add_argument("--trials", type=int, default=20, help="sampling rounds t (default 20)")
    decision.add_argument("--seed", type=int, help="64-bit seed; drawn at random and echoed when omitted")
    decision.add_argument("--exact", action="store_true", help="use the exact oracle instead of sampling")
    decision.add_argument("--json", nargs="?", const="-", metavar="PATH",
                          help="write the JSON report to PATH, or to stdout when PATH is omitted")

    p = sub.add_parser("decide", parents=[decision], help="decide convertibility of a state file")
    p.add_argument("state")
    p.set_defaults(func=cmd_decide)

    p = sub.add_parser("pit", parents=[decision], help="test whether a formula is identically zero")
    p.add_argument("formula", help="formula text, or a file containing it")
    p.set_defaults(func=cmd_pit)

    p = sub.add_parser("oracle", parents=[decision], help="exact decision for small instances")
    p.add_argument("state")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("witness", parents=[decision], help="print a certified witness")
    p.add_argument("state")
    p.add_argument("--coeffs", help="comma-separated coefficients u over the nonzero slices, e.g. 1,2+i")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("slices", help="print the nonzero Charlie slices")
    p.add_argument("state")
    p.set_defaults(func=cmd_slices)

    p = sub.add_parser("schmidt-rank", help="Schmidt rank of a bipartite state file (d_C = 1)")
    p.add_argument("state")
    p.set_defaults(func=cmd_schmidt_rank)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _Fail as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except ParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (InvalidInstanceError, InstanceTooLargeError, DimensionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
