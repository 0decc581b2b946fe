"""Compare the compiled kernels with the numpy fallback.

Usage::

    python3 benchmarks/bench_kernels.py [--sizes 16 64 128] [--primes 2 7] [--repeat 5]
    python3 benchmarks/bench_kernels.py --workload   # also time a verification suite per backend
"""
import argparse
import os
import subprocess
import sys
import timeit

import numpy as np

from t2stable import _kernels_py

try:
    from t2stable import _kernels
except ImportError:
    _kernels = None


def bench(fn, args, repeat: int) -> float:
    """Best time in milliseconds over ``repeat`` runs."""
    timer = timeit.Timer(lambda: fn(*args))
    number, _ = timer.autorange()
    return min(timer.repeat(repeat=repeat, number=number)) / number * 1e3


def kernel_table(sizes, primes, repeat: int):
    rng = np.random.default_rng(0)
    backends = [("numpy", _kernels_py)] + ([("cython", _kernels)] if _kernels is not None else [])
    print(f"{'kernel':8} {'p':>3} {'n':>5} " + " ".join(f"{name:>12}" for name, _ in backends) + "   speedup")
    for p in primes:
        for n in sizes:
            a = rng.integers(0, p, size=(n, n), dtype=np.int64)
            b = rng.integers(0, p, size=(n, n), dtype=np.int64)
            for kernel, args in (("rref", (a, p)), ("matmul", (a, b, p))):
                times = [bench(getattr(mod, f"{kernel}_mod"), args, repeat) for _, mod in backends]
                speed = f"{times[0] / times[1]:8.1f}x" if len(times) > 1 else "      n/a"
                print(f"{kernel:8} {p:>3} {n:>5} " + " ".join(f"{t:10.3f}ms" for t in times) + f" {speed}")


def workload():
    cmd = [sys.executable, "-m", "t2stable.cli", "verify", "--workspace", "a9", "--suite", "recollement",
           "--quiet"]
    for label, env in (("numpy", {"T2STABLE_PURE": "1"}), ("cython", {})):
        full = {k: v for k, v in os.environ.items() if k != "T2STABLE_PURE"}
        full.update(env)
        t = timeit.timeit(lambda: subprocess.run(cmd, env=full, check=True), number=1)
        print(f"recollement suite over a9 ({label}): {t:.2f}s")


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", type=int, nargs="+", default=[16, 64, 128])
    parser.add_argument("--primes", type=int, nargs="+", default=[2, 7])
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--workload", action="store_true")
    args = parser.parse_args()
    if _kernels is None:
        print("compiled kernels not built; showing the numpy fallback only")
    kernel_table(args.sizes, args.primes, args.repeat)
    if args.workload:
        workload()


if __name__ == "__main__":
    main()
