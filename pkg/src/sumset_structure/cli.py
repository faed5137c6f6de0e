"""Command line: analyze, scan, extremal, stability, bench.

Exit codes: 0 clean, 1 a theorem check failed (counterexample in the
output), 2 bad usage or input.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from . import harness
from .errors import CapacityError, InvalidArgs, InvalidSet, MismatchError, TheoremViolation
from .intset import parse_set_literal
from .parallel import WORKERS_ENV

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2


def _read_literals(source: str) -> list[str]:
    """A literal, a file with one literal per line, or ``-`` for stdin."""
    if source == "-":
        lines = sys.stdin.read().splitlines()
    elif "," not in source and Path(source).is_file():
        lines = Path(source).read_text().splitlines()
    else:
        return [source]
    return [ln for ln in (x.strip() for x in lines) if ln and not ln.startswith("#")]


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _csv_text(rows: list[dict], columns: list[str]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=columns, extrasaction="ignore", lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    return buf.getvalue()


def _emit_table(rows, manifest, columns, args) -> int:
    if args.format == "json":
        doc = json.loads(manifest.to_json())
        doc["rows"] = rows
        _emit(json.dumps(doc, indent=2, sort_keys=True) + "\n", args.out)
    else:
        _emit(_csv_text(rows, columns), args.out)
        if args.out:
            Path(args.out).with_suffix(".manifest.json").write_text(manifest.to_json() + "\n")
        else:
            sys.stderr.write(manifest.to_json() + "\n")
    for v in manifest.violations[:20]:
        sys.stderr.write(f"VIOLATION {v}\n")
    return manifest.exit_code


def cmd_analyze(args) -> int:
    reports = []
    code = EXIT_OK
    for lit in _read_literals(args.set):
        raw = parse_set_literal(lit)
        try:
            reports.append(harness.analyze(raw, m=args.m, m_max=args.m_max, strict=args.strict_normalize))
        except TheoremViolation as exc:
            reports.append({"schema": harness.SCHEMA, "input": raw, "violation": str(exc)})
            code = EXIT_VIOLATION
    doc = reports[0] if len(reports) == 1 else {"schema": harness.SCHEMA, "reports": reports}
    _emit(json.dumps(doc, indent=2) + "\n", args.out)
    return code


def cmd_scan(args) -> int:
    if args.mode == "structure":
        rows, manifest = harness.scan_structure(args.l_max or args.l or 12, l_min=args.l or 2, workers=args.threads)
        columns = harness.STRUCTURE_COLUMNS
    elif args.mode == "toolbox":
        rows, manifest = harness.scan_toolbox(args.l_max or args.l or 12, l_min=args.l or 2, workers=args.threads)
        columns = harness.TOOLBOX_COLUMNS
    else:
        pairs = harness.stability_pairs(args.l, args.l_max, args.n)
        if not pairs:
            raise InvalidArgs("no (l, n) pairs with n >= 6 and l > n selected")
        rows, manifest = harness.scan_stability(pairs, m=args.m, workers=args.threads)
        columns = harness.STABILITY_COLUMNS
    return _emit_table(rows, manifest, columns, args)


def cmd_extremal(args) -> int:
    rows, manifest = harness.scan_extremal(args.l_max or 60, workers=args.threads)
    return _emit_table(rows, manifest, harness.EXTREMAL_COLUMNS, args)


def cmd_stability(args) -> int:
    if args.l is None or args.n is None:
        raise InvalidArgs("stability needs --l and --n")
    body, manifest = harness.stability_report(args.l, args.n, args.m, args.exploratory, workers=args.threads)
    doc = {"manifest": json.loads(manifest.to_json()), "report": body}
    _emit(json.dumps(doc, indent=2, sort_keys=True) + "\n", args.out)
    return manifest.exit_code


def cmd_bench(args) -> int:
    try:
        rep = harness.bench(args.l or 512, args.m or 1024, reps=args.reps, seed=args.seed, n=args.n)
    except MismatchError as exc:
        sys.stderr.write(f"MISMATCH {exc}\n")
        return EXIT_VIOLATION
    _emit(json.dumps(rep, indent=2) + "\n", args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sumset-structure", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--m", type=int)
    common.add_argument("--m-max", type=int)
    common.add_argument("--l", type=int)
    common.add_argument("--l-max", type=int)
    common.add_argument("--n", type=int)
    common.add_argument("--threads", type=int, help=f"worker processes (default: ${WORKERS_ENV} or CPU count)")
    common.add_argument("--out", help="output path (default: stdout)")
    common.add_argument("--format", choices=["json", "csv"], default="csv")
    common.add_argument("--seed", type=int, default=0)

    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("analyze", parents=[common], help="single-set report")
    p.add_argument("set", help='set literal such as "0,3,5", a file of literals, or - for stdin')
    p.add_argument("--strict-normalize", action="store_true", help="reject sets whose translate has gcd > 1")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("scan", parents=[common], help="exhaustive sweep, one CSV row per set")
    p.add_argument("--mode", choices=["structure", "stability", "toolbox"], default="structure")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("extremal", parents=[common], help="check both extremal families up to --l-max")
    p.set_defaults(func=cmd_extremal)

    p = sub.add_parser("stability", parents=[common], help="classify every set with given l, n")
    p.add_argument("--exploratory", action="store_true", help="allow n < 6; report without judging")
    p.set_defaults(func=cmd_stability)

    p = sub.add_parser("bench", parents=[common], help="doubling vs. repeated addition timing")
    p.add_argument("--reps", type=int, default=5)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InvalidSet, InvalidArgs, CapacityError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except TheoremViolation as exc:
        sys.stderr.write(f"VIOLATION {exc}\n")
        return EXIT_VIOLATION


if __name__ == "__main__":
    sys.exit(main())
