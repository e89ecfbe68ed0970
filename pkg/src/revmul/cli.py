"""Command-line front end.

Exit status: 0 ok, 1 usage/config error, 2 findings present,
3 not a solution, 4 anomaly (a proved fact was violated).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from .analysis import f_class, is_prime, kaczynski_project, question1_check
from .campaigns import CampaignConfig, CampaignError, default_workers, resume, run_campaign
from .digits import (
    ArithmeticCapacityError,
    DigitString,
    Solution,
    check_solution,
    parse_digits,
    reverse,
    value_of,
)
from .enumeration import EngineDivergence, enumerate_solutions
from .families import FamilyParams, family4, family5, family_all

EXIT_OK, EXIT_USAGE, EXIT_FINDINGS, EXIT_NOT_SOLUTION, EXIT_ANOMALY = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


def solution_record(sol: Solution) -> dict:
    f = f_class(sol).f if len(sol) == 5 else None
    return {
        "record_type": "solution",
        "base": sol.base,
        "k": sol.k,
        "digits": list(sol.digits.digits),
        "value": sol.value,
        "reversal": sol.reversal,
        "f": f,
        "p_prime": is_prime(sol.base + 1),
    }


def _emit_rows(rows: list[dict], fmt: str, out) -> None:
    if fmt == "json":
        for row in rows:
            out.write(json.dumps(row) + "\n")
    elif fmt == "csv":
        if not rows:
            return
        w = csv.DictWriter(out, fieldnames=list(rows[0]), lineterminator="\n")
        w.writeheader()
        for row in rows:
            w.writerow({k: ",".join(map(str, v)) if isinstance(v, list) else v
                        for k, v in row.items()})
    else:
        for row in rows:
            out.write("  ".join(f"{k}={_fmt(v)}" for k, v in row.items()
                                if k != "record_type") + "\n")


def _fmt(v) -> str:
    if isinstance(v, list):
        return "(" + ",".join(map(str, v)) + ")"
    return "-" if v is None else str(v)


def _digits(args) -> DigitString:
    try:
        return parse_digits(args.digits, args.base)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


# -- subcommands -------------------------------------------------------------

def cmd_verify(args, out) -> int:
    d = _digits(args)
    k = check_solution(d)
    row = {
        "base": d.base,
        "digits": list(d.digits),
        "value": value_of(d),
        "reversal": value_of(reverse(d)),
        "k": k,
        "solution": k is not None and (args.k is None or args.k == k),
    }
    if args.k is not None:
        row["expected_k"] = args.k
    if args.format == "json":
        out.write(json.dumps(row) + "\n")
    else:
        out.write(f"{d} value={row['value']} reversal={row['reversal']}\n")
        if k is None:
            out.write("not a reverse multiple for any 1 < k < n\n")
        elif args.k is not None and args.k != k:
            out.write(f"mismatch: found k={k}, expected k={args.k}\n")
        else:
            out.write(f"k={k}\n")
    return EXIT_OK if row["solution"] else EXIT_NOT_SOLUTION


def cmd_enumerate(args, out) -> int:
    try:
        sols = enumerate_solutions(args.base, args.length, args.engine, args.k, args.limit)
    except EngineDivergence as exc:
        sys.stderr.write(f"{exc}\n")
        return EXIT_ANOMALY
    _emit_rows([solution_record(s) for s in sols], args.format, out)
    if args.format == "human":
        out.write(f"{len(sols)} solution(s) for base {args.base}, length {args.length}\n")
    return EXIT_OK


def cmd_family(args, out) -> int:
    if args.a is not None:
        try:
            params = FamilyParams(args.base, args.a)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        pairs = [(params, (family4(params), family5(params)))]
        if pairs[0][1][1] is None:
            pairs = []
    else:
        pairs = family_all(args.base)
    rows = []
    for params, (four, five) in pairs:
        rows.append({"a": params.a, "k": five.k, "four": list(four.digits.digits),
                     "five": list(five.digits.digits)})
    if args.format == "human" and not rows:
        out.write(f"not in family: base {args.base}" + (f", a={args.a}" if args.a else "") + "\n")
    else:
        _emit_rows(rows, args.format, out)
    return EXIT_OK


def cmd_project(args, out) -> int:
    d = _digits(args)
    if len(d) not in (3, 5):
        raise UsageError(f"project needs 3 or 5 digits, got {len(d)}")
    k = check_solution(d)
    if k is None:
        out.write(f"{d} is not a solution\n")
        return EXIT_NOT_SOLUTION
    sol = Solution(d, k)
    outcome = question1_check(sol) if len(d) == 5 else kaczynski_project(sol)
    fc = outcome.f_class
    row = {
        "base": d.base,
        "k": k,
        "digits": list(d.digits),
        "projected": list(outcome.projected.digits),
        "same_k_holds": outcome.same_k_holds,
        "any_k": outcome.any_k,
        "counterexample": outcome.counterexample,
        "f": fc.f if fc else None,
        "alternating_sum": fc.s if fc else None,
        "p_prime": fc.p_prime if fc else None,
    }
    if args.format == "json":
        out.write(json.dumps(row) + "\n")
    else:
        out.write(f"{sol}\nprojected {outcome.projected}\n")
        if outcome.same_k_holds:
            out.write(f"same k={k} holds\n")
        elif outcome.any_k is not None:
            out.write(f"same k fails; k={outcome.any_k} works\n")
        else:
            out.write("counterexample: no k makes the projection a solution\n")
        if fc is not None:
            out.write(f"s={fc.s} p={fc.p} f={_fmt(fc.f)} p_prime={fc.p_prime}\n")
    if len(d) == 3 and outcome.any_k is None and is_prime(d.base + 1):
        return EXIT_ANOMALY
    return EXIT_OK


def cmd_campaign(args, out) -> int:
    lengths = None
    if args.lengths:
        try:
            lengths = tuple(int(x) for x in args.lengths.split(","))
        except ValueError:
            raise UsageError(f"malformed --lengths {args.lengths!r}") from None
    try:
        workers = args.workers if args.workers is not None else default_workers()
        cfg = CampaignConfig(
            n_lo=args.n_lo, n_hi=args.n_hi, kind=args.kind, lengths=lengths,
            require_prime_p=args.require_prime_p, workers=workers, output=args.output,
        )
    except (ValueError, CampaignError) as exc:
        raise UsageError(str(exc)) from None
    if args.resume and cfg.output is None:
        raise UsageError("--resume needs --output")
    try:
        report = resume(cfg) if args.resume else run_campaign(cfg)
    except CampaignError as exc:
        raise UsageError(str(exc)) from None
    if args.report:
        Path(args.report).write_text(report.to_json())
    if args.format == "json":
        out.write(report.to_json() + "\n")
    elif args.format == "csv":
        out.write(report.to_csv())
    else:
        _human_report(report, out)
    return report.exit_status


def _human_report(report, out) -> None:
    cfg = report.config
    out.write(f"campaign {cfg['kind']} n=[{cfg['n_lo']},{cfg['n_hi']}] lengths={cfg['lengths']} "
              f"bases={len(report.bases)} hash={report.config_hash} "
              f"time={report.wall_time:.2f}s\n")
    for c in report.counterexamples:
        out.write(f"counterexample n={c['base']} k={c['k']} digits={_fmt(c['digits'])} "
                  f"f={_fmt(c['f'])}\n")
    for f in report.headline_findings:
        if f["finding"] != "counterexample":
            out.write(f"finding {f['finding']} n={f['base']} k={f['k']} "
                      f"digits={_fmt(f['digits'])} f={_fmt(f['f'])} p_prime={f['p_prime']}\n")
    for a in report.anomalies:
        out.write(f"ANOMALY n={a['base']}: {a['reason']}\n")
    for key, value in report.summary.items():
        out.write(f"{key}: {json.dumps(value)}\n")


# -- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="revmul", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def fmt(p):
        p.add_argument("--format", choices=("human", "json", "csv"), default="human")

    p = sub.add_parser("verify", help="check one digit string")
    p.add_argument("--base", type=int, required=True)
    p.add_argument("--digits", required=True, help="comma-separated, most significant first")
    p.add_argument("--k", type=int)
    fmt(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("enumerate", help="list all solutions of one length")
    p.add_argument("--base", type=int, required=True)
    p.add_argument("--length", type=int, required=True)
    p.add_argument("--engine", choices=("fast", "naive", "both"), default="fast")
    p.add_argument("--k", type=int)
    p.add_argument("--limit", type=int)
    fmt(p)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("family", help="the (n-a)/a family of 4- and 5-digit solutions")
    p.add_argument("--base", type=int, required=True)
    p.add_argument("--a", type=int)
    fmt(p)
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("project", help="delete the middle digit of a 3- or 5-digit solution")
    p.add_argument("--base", type=int, required=True)
    p.add_argument("--digits", required=True)
    fmt(p)
    p.set_defaults(func=cmd_project)

    p = sub.add_parser("campaign", help="batch search over a base range")
    p.add_argument("kind", choices=("counterexamples", "spectrum", "f1", "survey"))
    p.add_argument("--from", dest="n_lo", type=int, required=True)
    p.add_argument("--to", dest="n_hi", type=int, required=True)
    p.add_argument("--lengths", help="comma-separated subset of 2..7")
    p.add_argument("--require-prime-p", action="store_true")
    p.add_argument("--workers", type=int, help="default: $REVMUL_WORKERS or 1")
    p.add_argument("--output", type=Path, help="JSONL record log")
    p.add_argument("--resume", action="store_true", help="continue a partial --output log")
    p.add_argument("--report", type=Path, help="also write the JSON report here")
    fmt(p)
    p.set_defaults(func=cmd_campaign)
    return parser


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args, out)
    except (UsageError, ValueError, ArithmeticCapacityError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


def run(argv: Sequence[str]) -> tuple[int, str]:
    """Run the CLI in-process and capture stdout; handy in tests."""
    buf = io.StringIO()
    code = main(argv, buf)
    return code, buf.getvalue()
