"""Timing comparison: compiled kernels vs the pure-python fallback.

The package runs its hot loops through numba when available; setting
``SIFCA_PURE_NUMPY=1`` keeps the very same functions un-jitted.  This
script times two representative workloads in whichever mode the current
process is in, and with ``--both`` spawns one child per mode to print a
side-by-side comparison.

Usage, from the repository root:

    python3 benchmarks/kernel_bench.py --both
"""

from __future__ import annotations

import argparse
import os
import subprocess
import sys
import time

import numpy as np

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from sifca import _kernels as K  # noqa: E402
from sifca import routing_cost as rc  # noqa: E402


def bench_closed_sweep():
    """Closed-form sweep over a 41 x 29 grid (1189 cells)."""
    rv = np.arange(0.0, 0.4001, 0.01)
    av = np.arange(0.0, 35.001, 1.25)
    nc = np.empty((rv.size, av.size))
    route = np.empty_like(nc)
    feas = np.empty(nc.shape, np.int64)
    case = np.empty(nc.shape, np.int64)
    K.class_i_sweep_kernel(rv, av, nc, route, feas, case)  # warmup
    t0 = time.perf_counter()
    K.class_i_sweep_kernel(rv, av, nc, route, feas, case)
    dt = time.perf_counter() - t0
    return dt, rv.size * av.size


def bench_oracle_cells():
    """Full tree oracle on four displaced-source layouts."""
    tables = rc._oracle_tables(6)
    rv = np.array([0.1, 0.2])
    tv = np.array([0.0, 18.0])
    out = np.empty((2, 2))
    args = (rv, tv, tables[0], tables[1], tables[2], tables[3], tables[4], tables[5],
            1e-10, 100_000, out)
    K.class_i_oracle_grid(*args)  # warmup
    t0 = time.perf_counter()
    K.class_i_oracle_grid(*args)
    dt = time.perf_counter() - t0
    return dt, out.size


def run_current_mode():
    mode = "numba" if K.USING_NUMBA else "pure"
    dt_sweep, n_sweep = bench_closed_sweep()
    dt_oracle, n_oracle = bench_oracle_cells()
    print(f"mode={mode}")
    print(f"closed sweep: {dt_sweep:.4f} s for {n_sweep} cells "
          f"({1e6 * dt_sweep / n_sweep:.1f} us/cell)")
    print(f"tree oracle:  {dt_oracle:.4f} s for {n_oracle} cells "
          f"({1e3 * dt_oracle / n_oracle:.1f} ms/cell)")


def run_both():
    for flag in ("0", "1"):
        env = dict(os.environ, SIFCA_PURE_NUMPY=flag)
        out = subprocess.run(
            [sys.executable, os.path.abspath(__file__)],
            env=env,
            capture_output=True,
            text=True,
            check=True,
        )
        sys.stdout.write(out.stdout)
        print("-" * 40)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--both", action="store_true",
                        help="run once per mode in child processes")
    args = parser.parse_args()
    if args.both:
        run_both()
    else:
        run_current_mode()


if __name__ == "__main__":
    main()
