#!/usr/bin/env python3
"""Benchmark the compiled simplex kernel against the pure-Python one.

Two workloads:
  * a synthetic battery of random bounded LPs solved directly through both
    kernels, checking that objectives agree while timing each;
  * end-to-end solves of bundled instances in subprocesses, one per
    backend (the backend is chosen at import time via
    MORSEMATCH_LP_BACKEND, so a fresh interpreter is required).

Usage:
    python3 benchmarks/bench_lp.py [--cases 150] [--seed 7] [--hard]

--hard adds the dunce hat to the end-to-end comparison (roughly a minute
for the python backend; several minutes without the compiled kernel).
"""

from __future__ import annotations

import argparse
import json
import os
import random
import subprocess
import sys
import time

import numpy as np

from morsematch.lp import LinearProgram, LpRow, LpStatus, solve
from morsematch.lp.backend import get_kernel


def random_lp(rng: random.Random, n_lo=20, n_hi=60, m_hi=80) -> LinearProgram:
    n = rng.randint(n_lo, n_hi)
    m = rng.randint(10, m_hi)
    lp = LinearProgram(n, [rng.uniform(-1, 2) for _ in range(n)])
    x0 = [rng.random() for _ in range(n)]
    rows = []
    for _ in range(m):
        width = rng.randint(2, 6)
        cols = tuple(sorted(rng.sample(range(n), width)))
        coefs = tuple(float(rng.choice([-2, -1, 1, 1, 2])) for _ in cols)
        act = sum(v * x0[j] for j, v in zip(cols, coefs))
        rows.append(LpRow(cols, coefs, act + rng.uniform(0.0, 1.0)))
    lp.add_rows(rows)
    return lp


def bench_kernels(cases: int, seed: int, backends: list[str]) -> None:
    rng = random.Random(seed)
    battery = [random_lp(rng) for _ in range(cases)]
    print(f"kernel battery: {cases} random LPs "
          f"(n in [20,60], m in [10,80])")
    results = {}
    for backend in backends:
        t0 = time.perf_counter()
        iters = 0
        objs = []
        for lp in battery:
            sol = solve(lp, backend=backend)
            iters += sol.iterations
            objs.append(sol.objective if sol.status is LpStatus.OPTIMAL
                        else None)
        dt = time.perf_counter() - t0
        results[backend] = (dt, iters, objs)
        print(f"  {backend:>7}: {dt:8.3f} s   {iters:7d} simplex iterations")
    if len(backends) == 2:
        (ta, _, oa), (tb, _, ob) = (results[b] for b in backends)
        diffs = [abs(x - y) for x, y in zip(oa, ob)
                 if x is not None and y is not None]
        agree = all((x is None) == (y is None) for x, y in zip(oa, ob))
        print(f"  statuses agree: {agree}; max objective difference: "
              f"{max(diffs) if diffs else 0.0:.2e}")
        print(f"  speedup ({backends[1]} over {backends[0]}): {ta / tb:.1f}x")


def bench_end_to_end(instances: list[str], backends: list[str]) -> None:
    code = (
        "import json, sys, time\n"
        "from morsematch import instance_path, load_complex, solve, "
        "SolverConfig\n"
        "from morsematch.lp import kernel_name\n"
        "cx = load_complex(instance_path(sys.argv[1]))\n"
        "t0 = time.perf_counter()\n"
        "r = solve(cx, SolverConfig())\n"
        "dt = time.perf_counter() - t0\n"
        "print(json.dumps({'kernel': kernel_name, 'time': dt,"
        " 'status': r.status.value, 'c': r.report.total,"
        " 'nodes': r.stats.nodes, 'iters': r.stats.lp_iterations}))\n"
    )
    for name in instances:
        print(f"end to end: solve {name}")
        times = {}
        for backend in backends:
            env = dict(os.environ, MORSEMATCH_LP_BACKEND=backend)
            out = subprocess.run([sys.executable, "-c", code, name],
                                 env=env, capture_output=True, text=True)
            if out.returncode != 0:
                print(f"  {backend:>7}: failed\n{out.stderr}")
                continue
            doc = json.loads(out.stdout)
            times[backend] = doc["time"]
            print(f"  {backend:>7}: {doc['time']:8.2f} s   "
                  f"{doc['status']}, c = {doc['c']}, "
                  f"{doc['nodes']} nodes, {doc['iters']} LP iterations")
        if len(times) == 2:
            a, b = (times[x] for x in backends)
            print(f"  speedup ({backends[1]} over {backends[0]}): "
                  f"{a / b:.1f}x")


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--cases", type=int, default=150)
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--hard", action="store_true",
                    help="include the dunce hat in the end-to-end runs")
    args = ap.parse_args()

    backends = ["python"]
    try:
        get_kernel("cython")
        backends.append("cython")
    except ImportError:
        print("compiled kernel not built; benchmarking pure python only")

    bench_kernels(args.cases, args.seed, backends)
    instances = ["projective_plane"] + (["dunce_hat"] if args.hard else [])
    bench_end_to_end(instances, backends)
    return 0


if __name__ == "__main__":
    sys.exit(main())
