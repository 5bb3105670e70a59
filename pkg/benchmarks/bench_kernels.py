"""Benchmark the compiled row-reduction kernels against the pure fallback.

The two kernels dominate the engine's runtime: every block derives its
kernels, images, Jordan chains and Casimir identities from them.  Run as

    python benchmarks/bench_kernels.py [--size N] [--repeat K]
"""

import argparse
import random
import time
from fractions import Fraction

from odirac.exactla import pure

try:
    from odirac.exactla import _speedups
except ImportError:
    _speedups = None


def rand_rows(rng, n, m):
    return [[Fraction(rng.randint(-9, 9), rng.randint(1, 7)) for _ in range(m)]
            for _ in range(n)]


def time_fn(fn, repeat):
    best = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return best


def bench(size, repeat):
    rng = random.Random(2024)
    a = rand_rows(rng, size, size)
    b = rand_rows(rng, size, size)
    rows = [("kernel", "pure [s]", "compiled [s]", "speedup")]

    def run(impl, op):
        if op == "rref":
            return lambda: impl.rref_core([list(r) for r in a], size)
        return lambda: impl.matmul_core(a, b, size)

    for op in ("rref", "matmul"):
        t_pure = time_fn(run(pure, op), repeat)
        if _speedups is None:
            rows.append((op, f"{t_pure:.4f}", "n/a", "n/a"))
        else:
            t_fast = time_fn(run(_speedups, op), repeat)
            rows.append((op, f"{t_pure:.4f}", f"{t_fast:.4f}",
                         f"{t_pure / t_fast:.2f}x"))
    widths = [max(len(r[i]) for r in rows) for i in range(4)]
    for r in rows:
        print("  ".join(s.ljust(w) for s, w in zip(r, widths)))
    if _speedups is None:
        print("\ncompiled kernels unavailable; the package runs on the pure fallback")
    else:
        ok = True
        work_p = [list(r) for r in a]
        work_c = [list(r) for r in a]
        ok &= pure.rref_core(work_p, size) == _speedups.rref_core(work_c, size)
        ok &= work_p == work_c
        ok &= pure.matmul_core(a, b, size) == _speedups.matmul_core(a, b, size)
        print(f"\nagreement between backends: {'exact' if ok else 'MISMATCH'}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--size", type=int, default=60)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    print(f"matrix size {args.size}, best of {args.repeat}")
    bench(args.size, args.repeat)
