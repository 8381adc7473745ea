"""Benchmark the walk-step kernel twins.

Times the enumeration of one exact transition row (all vertical-strip
successors with weights) for staircase diagrams of growing size, using
the compiled extension and the pure-Python twin on identical inputs, and
checks they return the same rows.

Run:  python3 benchmarks/bench_step.py
"""

import time

from jackwalk import _steppure

try:
    from jackwalk import _stepkernel
except ImportError:
    _stepkernel = None


def time_row(impl, lam, n, repeats=3):
    best = None
    result = None
    for _ in range(repeats):
        start = time.perf_counter()
        result = impl.bernoulli_row(lam, n, 1, 1)
        elapsed = time.perf_counter() - start
        best = elapsed if best is None else min(best, elapsed)
    return best, result


def main():
    if _stepkernel is None:
        print("compiled kernel not built; timing the pure twin only")
    print("%4s %10s %12s %12s %8s" % ("n", "rows", "compiled", "pure", "ratio"))
    for n in (6, 8, 10, 12, 14, 16):
        lam = tuple(range(n, 0, -1))
        pure_t, pure_rows = time_row(_steppure, lam, n)
        if _stepkernel is None:
            print("%4d %10d %12s %12.4fs %8s"
                  % (n, len(pure_rows), "-", pure_t, "-"))
            continue
        fast_t, fast_rows = time_row(_stepkernel, lam, n)
        if sorted(fast_rows) != sorted(pure_rows):
            raise SystemExit("twins disagree at n = %d" % n)
        print("%4d %10d %12.4fs %12.4fs %8.1fx"
              % (n, len(fast_rows), fast_t, pure_t, pure_t / fast_t))


if __name__ == "__main__":
    main()
