"""Exhaustive structure sweep over every normalized set up to a diameter.

    python scripts/structure_sweep.py --l-max 16 --out structure.csv
"""
import argparse
import sys
import time

from sumset_structure.cli import main as cli_main


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--l-max", type=int, default=16)
    ap.add_argument("--threads", type=int)
    ap.add_argument("--out", default="structure.csv")
    args = ap.parse_args()
    argv = ["scan", "--mode", "structure", "--l-max", str(args.l_max), "--out", args.out]
    if args.threads:
        argv += ["--threads", str(args.threads)]
    t0 = time.perf_counter()
    code = cli_main(argv)
    print(f"wrote {args.out} in {time.perf_counter() - t0:.1f}s, exit {code}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
