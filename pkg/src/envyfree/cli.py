"""Command line: ``envyfree {solve,verify,compare,gen,bench}``.

Exit codes: 0 ok, 1 bad input, 2 solver cannot handle the instance,
3 verification failed.
"""
from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import formats
from .instance_gen import DISTRIBUTIONS, GenSpec, InvalidSpec, SplitMix64, generate
from .market_core import MarketError, audit_envy_free, default_tol, social_welfare
from .monge_solver import solve_monge
from .reference_oracles import (
    BRUTE_FORCE_MAX_N,
    InstanceTooLarge,
    brute_force_solve,
    solve_hungarian,
)

EXIT_OK, EXIT_INPUT, EXIT_SOLVER, EXIT_VERIFY = 0, 1, 2, 3

SOLVERS = {
    "monge": solve_monge,
    "monge-fast": lambda inst: solve_monge(inst, pricing="adjacent"),
    "hungarian": solve_hungarian,
    "brute": brute_force_solve,
}

BENCH_HEADER = ["n", "solver", "wall_time_s", "revenue", "welfare"]


@dataclass(frozen=True)
class BenchRecord:
    n: int
    solver: str
    wall_time: float
    revenue: float
    welfare: float

    def row(self) -> list:
        return [self.n, self.solver, repr(self.wall_time), repr(self.revenue), repr(self.welfare)]


def _err(msg: str) -> None:
    print(f"error: {msg}", file=sys.stderr)


def _write(text: str, output) -> None:
    if output in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(output).write_text(text)


def cmd_solve(args) -> int:
    try:
        inst = formats.read_instance(args.input)
    except (OSError, MarketError) as e:
        _err(str(e))
        return EXIT_INPUT
    try:
        out = SOLVERS[args.solver](inst)
    except InstanceTooLarge as e:
        _err(f"InstanceTooLarge: {e}")
        return EXIT_SOLVER
    _write(formats.dumps(formats.outcome_to_dict(out)), args.output)
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        inst = formats.read_instance(args.instance)
        out = formats.read_outcome(args.outcome)
        report = audit_envy_free(inst, out, args.tol)
    except (OSError, MarketError) as e:
        _err(str(e))
        return EXIT_INPUT
    print(json.dumps(report.to_dict()))
    return EXIT_OK if report.passed else EXIT_VERIFY


def compare_solvers(inst, tol=None) -> dict:
    if tol is None:
        tol = default_tol(inst)
    names = ["monge", "hungarian"] + (["brute"] if inst.n <= BRUTE_FORCE_MAX_N else [])
    rows = {}
    for name in names:
        out = SOLVERS[name](inst)
        rows[name] = {
            "revenue": out.revenue,
            "welfare": social_welfare(inst, out.assignment),
            "audit_passed": audit_envy_free(inst, out, tol).passed,
        }
    revenues = [r["revenue"] for r in rows.values()]
    welfares = [r["welfare"] for r in rows.values()]
    return {
        "n": inst.n,
        "tol": tol,
        "solvers": rows,
        "revenues_agree": max(revenues) - min(revenues) <= tol,
        "welfares_agree": max(welfares) - min(welfares) <= tol,
    }


def cmd_compare(args) -> int:
    try:
        inst = formats.read_instance(args.instance)
    except (OSError, MarketError) as e:
        _err(str(e))
        return EXIT_INPUT
    table = compare_solvers(inst, args.tol)
    print(json.dumps(table))
    return EXIT_OK if table["revenues_agree"] else EXIT_VERIFY


def cmd_gen(args) -> int:
    try:
        spec = GenSpec(args.n, args.dist, args.low, args.high, args.seed, args.distinct)
        inst = generate(spec)
    except MarketError as e:
        _err(str(e))
        return EXIT_INPUT
    _write(formats.dumps(formats.instance_to_dict(inst)), args.output)
    echo = sys.stderr if args.output in (None, "-") else sys.stdout
    print(json.dumps(spec.to_dict()), file=echo)
    return EXIT_OK


def _timed(fn, inst):
    t0 = time.perf_counter()
    out = fn(inst)
    return time.perf_counter() - t0, out


def run_bench(sizes, reps, seed, cubic_cap=1024, dist="uniform_int") -> list[BenchRecord]:
    rng = SplitMix64(seed)
    records = []
    for n in sizes:
        for _ in range(reps):
            inst = generate(GenSpec(n, dist, 1, 10**6, rng.next_u64()))
            solvers = ["monge"] + (["hungarian"] if n <= cubic_cap else [])
            for name in solvers:
                wall, out = _timed(SOLVERS[name], inst)
                records.append(BenchRecord(
                    n, name, wall, out.revenue, social_welfare(inst, out.assignment)))
    return records


def loglog_slopes(records) -> dict[str, float]:
    slopes = {}
    for name in sorted({r.solver for r in records}):
        ns = sorted({r.n for r in records if r.solver == name})
        if len(ns) < 2:
            continue
        med = [np.median([r.wall_time for r in records if r.solver == name and r.n == n])
               for n in ns]
        slopes[name] = float(np.polyfit(np.log(ns), np.log(med), 1)[0])
    return slopes


def _parse_sizes(text: str) -> list[int]:
    sizes = [int(s) for s in text.replace(",", " ").split()]
    if not sizes or any(n < 1 for n in sizes):
        raise ValueError("sizes must be a non-empty list of positive integers")
    return sizes


def cmd_bench(args) -> int:
    try:
        sizes = _parse_sizes(args.sizes)
        if args.reps < 1:
            raise ValueError("--reps must be >= 1")
    except ValueError as e:
        _err(str(e))
        return EXIT_INPUT
    records = run_bench(sizes, args.reps, args.seed, args.cubic_cap)
    buf = [",".join(BENCH_HEADER)]
    buf += [",".join(str(x) for x in r.row()) for r in records]
    _write("\n".join(buf) + "\n", args.output)
    log = sys.stderr if args.output in (None, "-") else sys.stdout
    for name, slope in loglog_slopes(records).items():
        print(f"log-log slope {name}: {slope:.2f}", file=log)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="envyfree", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve an instance and write the outcome JSON")
    p.add_argument("input", help="instance file (.json or .csv)")
    p.add_argument("--solver", choices=sorted(SOLVERS), default="monge")
    p.add_argument("-o", "--output", help="outcome path (default: stdout)")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="audit an outcome for envy-freeness")
    p.add_argument("instance")
    p.add_argument("outcome")
    p.add_argument("--tol", type=float, default=None,
                   help="slack tolerance (default 1e-9 * (1 + max valuation))")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("compare", help="run every applicable solver and compare revenues")
    p.add_argument("instance")
    p.add_argument("--tol", type=float, default=None)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("gen", help="generate a seeded instance")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--dist", choices=DISTRIBUTIONS, default="uniform_int")
    p.add_argument("--low", type=float, default=1)
    p.add_argument("--high", type=float, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--distinct", type=int, default=2, help="value count for tie_heavy")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", help="time solvers over instance sizes, CSV out")
    p.add_argument("--sizes", default="256,512,1024", help="comma-separated sizes")
    p.add_argument("--reps", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cubic-cap", type=int, default=1024,
                   help="largest n timed with the hungarian solver")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
