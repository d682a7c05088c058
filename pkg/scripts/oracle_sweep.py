#!/usr/bin/env python3
"""Cross-check the Monge solver against the cubic and brute-force oracles.

    python scripts/oracle_sweep.py --count 500 --n-max 64 --seed 2024
"""
import argparse
import time
from collections import Counter

from envyfree import generate, spec_suite
from envyfree.cli import compare_solvers


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=500)
    ap.add_argument("--n-min", type=int, default=2)
    ap.add_argument("--n-max", type=int, default=64)
    ap.add_argument("--seed", type=int, default=2024)
    args = ap.parse_args()

    specs = spec_suite(args.count, args.n_min, args.n_max, args.seed)
    tally = Counter()
    t0 = time.perf_counter()
    for spec in specs:
        table = compare_solvers(generate(spec))
        tally[spec.distribution, table["revenues_agree"] and table["welfares_agree"]] += 1
        if not table["revenues_agree"]:
            print("disagreement:", spec, table)
    print(f"{len(specs)} instances in {time.perf_counter() - t0:.1f} s")
    for (dist, ok), count in sorted(tally.items()):
        print(f"  {dist:16s} {'agree' if ok else 'DISAGREE':9s} {count}")


if __name__ == "__main__":
    main()
