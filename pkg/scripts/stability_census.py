"""Tabulate stability outcomes for 6 <= n <= n_max, n < l <= l_max at the threshold multiplicity."""
import argparse
from collections import Counter

from sumset_structure import stab_threshold, stability_scan


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--l-max", type=int, default=18)
    ap.add_argument("--n-max", type=int, default=8)
    args = ap.parse_args()
    total = Counter()
    print(f"{'l':>3} {'n':>3} {'m':>3} {'scanned':>8} {'skipped':>8} {'head':>5} {'tail':>5}")
    for n in range(6, args.n_max + 1):
        for l in range(n + 1, args.l_max + 1):
            rep = stability_scan(l, n)
            c = rep.counts
            total.update(c)
            print(f"{l:>3} {n:>3} {stab_threshold(l, n):>3} {rep.scanned:>8} {rep.skipped_non_coprime:>8} "
                  f"{c['FailsHeadFamily']:>5} {c['FailsTailFamily']:>5}")
    print(dict(total))


if __name__ == "__main__":
    main()
