"""Command-line front end.

Exit codes: 0 success, 2 bad input or arguments, 3 non-convergence,
4 exact Shapley refused (too many players).  Output files are written
atomically and only on success.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile

from .attribution import (
    DEFAULT_SAMPLES,
    DEFAULT_SEED,
    explain_all,
    parse_attribution_csv,
)
from .errors import NonConvergence, ParseError, QbafError, TooLargeForExact, ValidationError
from .framework import load_qbaf, serialize_qbaf_json
from .render import RenderSpec, render_dot
from .semantics import DEFAULT_MAX_ITERATIONS, DEFAULT_TOLERANCE, SolverConfig, solve_qe, strengths_csv
from .truth_discovery import claim_labels, induce_qbaf, parse_reports

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NONCONVERGENCE = 3
EXIT_TOO_LARGE = 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(out))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".qbafx-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, out)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _read(path: str) -> str:
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _config(args) -> SolverConfig:
    try:
        return SolverConfig(tolerance=args.tol, max_iterations=args.max_iter)
    except ValueError as exc:
        raise ValidationError(str(exc)) from None


def cmd_solve(args) -> int:
    q = load_qbaf(args.qbaf)
    outcome = solve_qe(q, _config(args))
    _emit(strengths_csv(outcome, q.arguments), args.out)
    return EXIT_OK


def cmd_from_tdn(args) -> int:
    tdn = parse_reports(_read(args.reports))
    q = induce_qbaf(tdn)
    text = serialize_qbaf_json(q, indent=1) + "\n"
    labels = json.dumps(claim_labels(tdn), indent=1) + "\n" if args.labels else None
    _emit(text, args.out)
    if labels is not None:
        _emit(labels, args.labels)
    return EXIT_OK


def cmd_explain(args) -> int:
    q = load_qbaf(args.qbaf)
    q.require_argument(args.topic)
    sampled = args.method == "shapley-sampled"
    report = explain_all(
        q,
        _config(args),
        args.topic,
        kind=args.kind,
        method=args.method,
        samples=args.samples if sampled else None,
        seed=args.seed if sampled else None,
    )
    _emit(report.to_csv(), args.out)
    return EXIT_OK


def cmd_render(args) -> int:
    q = load_qbaf(args.qbaf)
    report = parse_attribution_csv(_read(args.explanation), q)
    try:
        spec = RenderSpec(negligible_threshold=args.negligible)
    except ValueError as exc:
        raise ValidationError(str(exc)) from None
    _emit(render_dot(q, report, spec), args.out)
    return EXIT_OK


def _solver_flags(p):
    p.add_argument("--tol", type=float, default=DEFAULT_TOLERANCE,
                   help="sup-norm stopping tolerance (default %(default)g)")
    p.add_argument("--max-iter", type=int, default=DEFAULT_MAX_ITERATIONS,
                   help="iteration cap (default %(default)d)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qbafx", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("solve", help="compute QE strengths")
    p.add_argument("--qbaf", required=True)
    _solver_flags(p)
    p.add_argument("--out")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("from-tdn", help="induce a framework from truth-discovery reports")
    p.add_argument("--reports", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--labels", help="also write the claim id sidecar here")
    p.set_defaults(func=cmd_from_tdn)

    p = sub.add_parser("explain", help="attribution table for a topic argument")
    p.add_argument("--qbaf", required=True)
    p.add_argument("--topic", required=True)
    p.add_argument("--kind", choices=["arguments", "relations"], required=True)
    p.add_argument("--method", choices=["removal", "shapley-exact", "shapley-sampled"], required=True)
    p.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    _solver_flags(p)
    p.add_argument("--out")
    p.set_defaults(func=cmd_explain)

    p = sub.add_parser("render", help="DOT rendering of an attribution table")
    p.add_argument("--qbaf", required=True)
    p.add_argument("--explanation", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--negligible", type=float, default=RenderSpec().negligible_threshold)
    p.set_defaults(func=cmd_render)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except NonConvergence as exc:
        print(f"qbafx: {exc}", file=sys.stderr)
        return EXIT_NONCONVERGENCE
    except TooLargeForExact as exc:
        print(f"qbafx: {exc}", file=sys.stderr)
        return EXIT_TOO_LARGE
    except (ParseError, ValidationError, QbafError, OSError, ValueError) as exc:
        print(f"qbafx: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
