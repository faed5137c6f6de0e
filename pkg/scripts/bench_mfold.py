"""Doubling vs. repeated addition for m-fold sumsets across a few sizes."""
import argparse
import json

from sumset_structure.harness import bench

SIZES = [(16, 4), (64, 64), (128, 256), (512, 1024)]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--reps", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    for l, m in SIZES:
        rep = bench(l, m, reps=args.reps, seed=args.seed)
        keep = {k: rep[k] for k in ("l", "m", "equal", "brute_force_checked", "sumset_calls")}
        keep.update({k: v for k, v in rep.items() if k.startswith("median")})
        print(json.dumps(keep))


if __name__ == "__main__":
    main()
