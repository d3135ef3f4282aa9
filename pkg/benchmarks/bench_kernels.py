#!/usr/bin/env python3
"""Benchmark the hot kernels: numba JIT against the pure-Python fallback.

Runs each workload in two subprocesses (the backend is chosen at import
time via PUBECO_NO_NUMBA) and prints a side-by-side table.

Usage:
    python benchmarks/bench_kernels.py
"""

import argparse
import json
import os
import subprocess
import sys
import time

WORKLOADS = ["nct_cdf_20k", "sample_size_table_512", "grid_and_metrics_512"]


def run_workloads():
    import numpy as np

    from pubeco import kernels
    from pubeco.ecosystem import EcosystemConfig
    from pubeco.grid import build_grid
    from pubeco.metrics import compute_metrics

    results = {"backend": "numba" if kernels.USING_NUMBA else "pure python"}

    # warm-up (JIT compilation on the numba path)
    kernels.nct_cdf(1.0, 10.0, 1.0)
    kernels.sample_size_table(
        np.linspace(0.06, 0.9, 8), 0.21, 1.0, 0.05, 4.0, False
    )

    rng = np.random.default_rng(0)
    xs = rng.uniform(-8, 8, 20_000)
    dfs = 10 ** rng.uniform(0, 4, 20_000)
    ncps = rng.uniform(-6, 6, 20_000)
    t0 = time.perf_counter()
    acc = 0.0
    for i in range(xs.size):
        acc += kernels.nct_cdf(xs[i], dfs[i], ncps[i])
    results["nct_cdf_20k"] = time.perf_counter() - t0

    pwr = np.linspace(0.052, 0.995, 512)
    t0 = time.perf_counter()
    tab = kernels.sample_size_table(pwr, 0.21, 1.0, 0.05, 4.0, False)
    results["sample_size_table_512"] = time.perf_counter() - t0

    cfg = EcosystemConfig(alpha=0.005, k=500, m=3, ssr=True)
    t0 = time.perf_counter()
    compute_metrics(build_grid(cfg, 512))
    results["grid_and_metrics_512"] = time.perf_counter() - t0

    results["checksum"] = float(acc + tab.sum())
    return results


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--worker", action="store_true", help=argparse.SUPPRESS)
    args = parser.parse_args()
    if args.worker:
        print(json.dumps(run_workloads()))
        return

    rows = {}
    for flag in ("0", "1"):
        env = dict(os.environ, PUBECO_NO_NUMBA=flag)
        proc = subprocess.run(
            [sys.executable, os.path.abspath(__file__), "--worker"],
            env=env, capture_output=True, text=True, check=True,
        )
        rows[flag] = json.loads(proc.stdout.strip().splitlines()[-1])

    if abs(rows["0"]["checksum"] - rows["1"]["checksum"]) > 1e-6:
        print("warning: backends disagree on the checksum", file=sys.stderr)

    print(f"{'workload':<26} {'numba':>10} {'pure python':>13} {'speedup':>9}")
    for name in WORKLOADS:
        jit, pure = rows["0"][name], rows["1"][name]
        print(f"{name:<26} {jit:>9.3f}s {pure:>12.3f}s {pure / jit:>8.1f}x")


if __name__ == "__main__":
    main()
