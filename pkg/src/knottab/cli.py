"""Command-line interface.

Commands: generate | query | verify | audit | jumpers.  Output goes to
stdout unless --out is given, in which case the file is written atomically
(temp file + rename).  Exit codes: 0 success, 1 check failed / not found,
2 builder failure, 3 unwritable output, 4 parse failure, 5 budget truncated.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile

from .audit import audit_range
from .dyadic import jumpers, step_of
from .knots import ParseError, parse, render
from .table import (
    BuildError,
    build_table,
    to_json,
    to_tsv,
    verify_against_fixtures,
)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_BUILD = 2
EXIT_OUTPUT = 3
EXIT_PARSE = 4
EXIT_BUDGET = 5

MAX_STEP_LIMIT = 16


def _write_output(text: str, out_path: str | None) -> int:
    if out_path is None:
        sys.stdout.write(text)
        return EXIT_OK
    try:
        directory = os.path.dirname(os.path.abspath(out_path))
        fd, tmp = tempfile.mkstemp(dir=directory, prefix=".knottab-")
        try:
            with os.fdopen(fd, "w") as handle:
                handle.write(text)
            os.replace(tmp, out_path)
        except BaseException:
            os.unlink(tmp)
            raise
    except OSError as exc:
        print(f"error: cannot write {out_path}: {exc}", file=sys.stderr)
        return EXIT_OUTPUT
    return EXIT_OK


def _checked_max_step(value: int) -> int:
    if not 1 <= value <= MAX_STEP_LIMIT:
        raise SystemExit(f"error: --max-step must be in [1, {MAX_STEP_LIMIT}]")
    return value


def cmd_generate(args) -> int:
    max_step = _checked_max_step(args.max_step)
    try:
        table = build_table(max_step)
    except BuildError as exc:
        print(f"builder failure: {exc}", file=sys.stderr)
        return EXIT_BUILD
    text = to_tsv(table) if args.format == "tsv" else to_json(table)
    return _write_output(text, args.out)


def cmd_query(args) -> int:
    if (args.number is None) == (args.knot is None):
        print("error: query needs exactly one of --number or --knot", file=sys.stderr)
        return EXIT_PARSE
    if args.number is not None:
        number = args.number
        if number < 1:
            print(f"error: positions start at 1, got {number}", file=sys.stderr)
            return EXIT_PARSE
        if number == 2:
            print("unassigned (reserved; related to 3_1)")
            return EXIT_OK
        max_step = args.max_step or max(1, step_of(max(number, 2)))
        max_step = _checked_max_step(max_step)
        if number > 2**max_step:
            print(f"position {number} beyond step {max_step}", file=sys.stderr)
            return EXIT_FAIL
        try:
            table = build_table(max_step)
        except BuildError as exc:
            print(f"builder failure: {exc}", file=sys.stderr)
            return EXIT_BUILD
        print(render(table.assignment[number]))
        return EXIT_OK
    try:
        knot = parse(args.knot)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    max_step = _checked_max_step(args.max_step or 7)
    try:
        table = build_table(max_step)
    except BuildError as exc:
        print(f"builder failure: {exc}", file=sys.stderr)
        return EXIT_BUILD
    position = table.position_of(knot)
    if position is None:
        print(f"{render(knot)} not assigned within step {max_step}", file=sys.stderr)
        return EXIT_FAIL
    print(position)
    return EXIT_OK


def cmd_verify(args) -> int:
    max_step = _checked_max_step(args.max_step)
    try:
        table = build_table(max_step)
    except BuildError as exc:
        print(f"builder failure: {exc}", file=sys.stderr)
        return EXIT_BUILD
    mismatches = verify_against_fixtures(table)
    checked = min(2**max_step, 128)
    if not mismatches:
        print(f"{checked}-position fixture check: PASS")
        return EXIT_OK
    print(f"{checked}-position fixture check: FAIL ({len(mismatches)} mismatches)")
    print("position\tfield\texpected\tactual")
    for m in mismatches:
        print(f"{m.position}\t{m.field}\t{m.expected}\t{m.actual}")
    return EXIT_FAIL


def cmd_audit(args) -> int:
    try:
        reports = audit_range(
            [args.claim],
            limit=args.limit,
            max_step=args.max_step or 20,
            threads=args.threads,
            budget_secs=args.budget_secs,
        )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    payload = json.dumps([r.to_json_dict() for r in reports], indent=2) + "\n"
    status = _write_output(payload, args.out)
    if status != EXIT_OK:
        return status
    if any(r.truncated for r in reports):
        return EXIT_BUDGET
    if any(not r.passed for r in reports):
        return EXIT_FAIL
    return EXIT_OK


def cmd_jumpers(args) -> int:
    if args.step < 2 or args.step > 26:
        print("error: --step must be in [2, 26]", file=sys.stderr)
        return EXIT_PARSE
    print(json.dumps(jumpers(args.step)))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="knottab",
        description="Knot-number classification table and number-theory audits.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="build and emit the table")
    gen.add_argument("--max-step", type=int, default=7)
    gen.add_argument("--format", choices=("tsv", "json"), default="tsv")
    gen.add_argument("--out", default=None)
    gen.set_defaults(func=cmd_generate)

    query = sub.add_parser("query", help="look up a number or a knot")
    query.add_argument("--number", type=int, default=None)
    query.add_argument("--knot", default=None)
    query.add_argument("--max-step", type=int, default=None)
    query.set_defaults(func=cmd_query)

    verify = sub.add_parser("verify", help="check the build against the reference")
    verify.add_argument("--max-step", type=int, default=7)
    verify.set_defaults(func=cmd_verify)

    audit = sub.add_parser("audit", help="run a number-theory audit")
    audit.add_argument("claim", choices=("goldbach", "strong-twin", "twin-steps"))
    audit.add_argument("--limit", type=int, default=10**6)
    audit.add_argument("--max-step", type=int, default=None)
    audit.add_argument("--threads", type=int, default=1)
    audit.add_argument("--budget-secs", type=float, default=None)
    audit.add_argument("--out", default=None)
    audit.set_defaults(func=cmd_audit)

    jump = sub.add_parser("jumpers", help="print a step's jumping-over set")
    jump.add_argument("--step", type=int, required=True)
    jump.set_defaults(func=cmd_jumpers)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
