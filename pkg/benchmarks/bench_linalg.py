#!/usr/bin/env python3
"""Benchmark the compiled row-reduction core against the NumPy fallback.

Two workloads:
  * kernel: batches of small dense RREFs over F_2 / F_3 / F_9, the inner
    loop of ideal enumeration;
  * end-to-end: a full census of R^{3,(x-1)^3} over F_3 (19683 elements,
    64 ideals), run in a subprocess per backend since the backend is picked
    at import time (CHAINRING_PURE_PYTHON=1 forces the fallback).

Usage: python benchmarks/bench_linalg.py [--quick]
"""

import argparse
import importlib
import os
import subprocess
import sys
import time

import numpy as np


def bench_kernel(mod, tables, sizes, reps):
    rng = np.random.default_rng(42)
    out = {}
    for q, tb in tables.items():
        rows, cols = sizes
        mats = rng.integers(0, q, size=(reps, rows, cols)).astype(np.int16)
        pivots = np.zeros(min(rows, cols), dtype=np.int16)
        t0 = time.perf_counter()
        for i in range(reps):
            work = mats[i].copy()
            mod.rref(work, tb.add, tb.sub, tb.mul, tb.inv, pivots)
        out[q] = time.perf_counter() - t0
    return out


def run_kernel_comparison(reps):
    from chainring import FieldCtx

    tables = {f.q: f.tables for f in (FieldCtx(2, 1), FieldCtx(3, 1), FieldCtx(3, 2))}
    fallback = importlib.import_module("chainring._gfcore_py")
    try:
        compiled = importlib.import_module("chainring._gfcore")
    except ImportError:
        compiled = None
    print(f"kernel workload: {reps} x RREF(16x16), per field", flush=True)
    print(f"{'q':>4} {'python [s]':>12} {'cython [s]':>12} {'speedup':>9}")
    for q in sorted(tables):
        tp = bench_kernel(fallback, {q: tables[q]}, (16, 16), reps)[q]
        if compiled is None:
            print(f"{q:>4} {tp:>12.3f} {'n/a':>12} {'n/a':>9}")
            continue
        tc = bench_kernel(compiled, {q: tables[q]}, (16, 16), reps)[q]
        print(f"{q:>4} {tp:>12.3f} {tc:>12.3f} {tp / tc:>8.1f}x", flush=True)


CENSUS_SNIPPET = """
import time
import chainring as cr
from chainring.oracle import census
F3 = cr.FieldCtx(3, 1)
x, one = F3.poly_x(), F3.poly([1])
ctx = cr.RingCtx(F3, 3, (x - one) ** 3)
t0 = time.perf_counter()
report = census(ctx)
dt = time.perf_counter() - t0
assert report.passed and report.ideal_count == 64
print(f"{cr.BACKEND}: census of 19683-element ring, 64 ideals: {dt:.2f}s")
"""


def run_census_comparison():
    print("\nend-to-end workload: full census of R^{3,(x-1)^3} over F_3", flush=True)
    for pure in ("", "1"):
        env = dict(os.environ)
        if pure:
            env["CHAINRING_PURE_PYTHON"] = "1"
        else:
            env.pop("CHAINRING_PURE_PYTHON", None)
        subprocess.run([sys.executable, "-c", CENSUS_SNIPPET], env=env, check=True)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--quick", action="store_true", help="fewer kernel repetitions")
    args = parser.parse_args()
    run_kernel_comparison(2000 if args.quick else 20000)
    run_census_comparison()


if __name__ == "__main__":
    main()
