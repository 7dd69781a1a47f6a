"""Benchmark the compiled pivot kernel against the pure-Python fallback.

Solves the same model LPs with both kernels, asserts the optima agree
exactly, and prints a timing table.

Usage:
    python benchmarks/bench_pivot.py [--repeat N]
"""

from __future__ import annotations

import argparse
import importlib
import os
import subprocess
import sys
import time


def run_once(pure: bool, repeat: int):
    """Time the workload in a fresh interpreter so kernel selection is clean."""
    env = dict(os.environ)
    if pure:
        env["ROBUSTFLOW_PURE_PYTHON"] = "1"
    else:
        env.pop("ROBUSTFLOW_PURE_PYTHON", None)
    code = f"""
import time
import robustflow as rf

net = rf.gen_bottleneck(2, 2)
catalog = rf.enumerate_subpaths(net)
start = time.perf_counter()
values = []
for _ in range({repeat}):
    for model in ("pm", "am", "gm"):
        _, report = rf.solve_static(net, model, 2, catalog=catalog)
        values.append(str(report.robust_value))
elapsed = time.perf_counter() - start
print(rf.KERNEL)
print(elapsed)
print("|".join(values))
"""
    out = subprocess.run(
        [sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True
    )
    kernel, elapsed, values = out.stdout.strip().splitlines()
    return kernel, float(elapsed), values


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    compiled_available = importlib.util.find_spec("robustflow._speedups") is not None
    kernel_py, time_py, values_py = run_once(pure=True, repeat=args.repeat)
    print(f"python kernel:   {time_py:8.3f}s  ({kernel_py})")
    if not compiled_available:
        print("compiled kernel: not built (install with Cython to compare)")
        return 0
    kernel_c, time_c, values_c = run_once(pure=False, repeat=args.repeat)
    print(f"compiled kernel: {time_c:8.3f}s  ({kernel_c})")
    assert values_py == values_c, "kernels disagree on exact optima"
    if kernel_c == "compiled":
        print(f"speedup: {time_py / time_c:.2f}x, identical exact optima")
    else:
        print("compiled extension did not import; both runs used the fallback")
    return 0


if __name__ == "__main__":
    sys.exit(main())
