"""finalg command line: ``finalg run <file>`` and ``finalg fmt <file>``."""

from __future__ import annotations

import argparse
import os
import sys

from .dsl import COMMANDS, DSLError, parse, print_doc
from .report import run_doc, select_commands


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="finalg", description="Exact computations with finite-dimensional DG algebras.")
    sub = p.add_subparsers(dest="action", required=True)
    r = sub.add_parser("run", help="run the commands of a workspace file")
    r.add_argument("file")
    r.add_argument("--cmd", choices=COMMANDS, help="run only this command")
    r.add_argument("--json", metavar="OUT", help="write the JSON report here ('-' for stdout)")
    r.add_argument("--bound", type=int, help="default resolution length bound")
    r.add_argument("--parallel", action="store_true", help="run independent commands concurrently")
    r.add_argument("--timing", action="store_true", help="include wall-clock seconds per command")
    r.add_argument("--quiet", action="store_true", help="no text report on stdout")
    f = sub.add_parser("fmt", help="print a workspace file in canonical form")
    f.add_argument("file")
    return p


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def main(argv: list[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    try:
        text = _read(args.file)
    except (OSError, UnicodeDecodeError) as exc:
        print(f"finalg: cannot read {args.file}: {exc}", file=sys.stderr)
        return 2
    try:
        doc = parse(text)
    except DSLError as exc:
        print(f"{args.file}:{exc.line}:{exc.col}: {exc.kind} error: {exc.message}", file=sys.stderr)
        return 2
    if args.action == "fmt":
        sys.stdout.write(print_doc(doc))
        return 0

    seed = os.environ.get("FINALG_SEED")
    try:
        seed = int(seed) if seed not in (None, "") else None
    except ValueError:
        print("finalg: FINALG_SEED must be an integer", file=sys.stderr)
        return 2
    report = run_doc(doc, select_commands(doc, args.cmd), bound=args.bound,
                     parallel=args.parallel, timing=args.timing, seed=seed)
    if not args.quiet and args.json != "-":
        sys.stdout.write(report.text())
    if args.json == "-":
        sys.stdout.write(report.dumps() + "\n")
    elif args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(report.dumps() + "\n")
    for r in report.results:
        if r["status"] == "error":
            print(f"finalg: {r['command']} {r['target']}: {r['error']['message']}", file=sys.stderr)
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
