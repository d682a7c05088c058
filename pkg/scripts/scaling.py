#!/usr/bin/env python3
"""Wall-time scaling of both pricing paths and the cubic baseline.

    python scripts/scaling.py --sizes 128,256,512,1024,2048,4096,8192 --cubic-cap 512
"""
import argparse
import time

import numpy as np

from envyfree import GenSpec, generate, solve_hungarian, solve_monge

SOLVERS = {
    "monge": solve_monge,
    "monge-fast": lambda inst: solve_monge(inst, pricing="adjacent"),
    "hungarian": solve_hungarian,
}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="128,256,512,1024,2048,4096")
    ap.add_argument("--reps", type=int, default=3)
    ap.add_argument("--cubic-cap", type=int, default=512)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]

    times = {name: {} for name in SOLVERS}
    for n in sizes:
        insts = [generate(GenSpec(n, "uniform_int", 1, 10**6, args.seed + r)) for r in range(args.reps)]
        for name, fn in SOLVERS.items():
            if name == "hungarian" and n > args.cubic_cap:
                continue
            walls = []
            for inst in insts:
                t0 = time.perf_counter()
                fn(inst)
                walls.append(time.perf_counter() - t0)
            times[name][n] = float(np.median(walls))
        print(n, "  ".join(f"{k}={v[n]:.4f}s" for k, v in times.items() if n in v))

    for name, by_n in times.items():
        if len(by_n) > 1:
            ns = sorted(by_n)
            slope = np.polyfit(np.log(ns), np.log([by_n[n] for n in ns]), 1)[0]
            print(f"log-log slope {name}: {slope:.2f}")


if __name__ == "__main__":
    main()
