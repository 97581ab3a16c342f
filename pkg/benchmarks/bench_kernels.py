"""Compare the compiled and numpy kernel backends.

    python3 benchmarks/bench_kernels.py [--repeat R]
"""
import argparse
import timeit

import numpy as np

from symdiv import _kernels, random_points, symmetric_diversity, Metric
from symdiv.config import D2_SLACK


def cases():
    rng = np.random.default_rng(0)
    sym7 = symmetric_diversity([0] + list(np.cumsum(np.sort(rng.random(6))[::-1]))).values
    sym12 = symmetric_diversity([0] + list(np.cumsum(np.sort(rng.random(11))[::-1]))).values
    d10 = Metric.from_points(random_points(10, 2, 1)).d
    d12 = Metric.from_points(random_points(12, 2, 2)).d
    z16 = rng.random(1 << 16)
    return [
        ("exhaustive D2, n=7", lambda b: _kernels.d2_first_violation(sym7, 7, D2_SLACK, backend=b)),
        ("monotone + singleton D2, n=12", lambda b: (
            _kernels.monotone_first_violation(sym12, 12, D2_SLACK, backend=b),
            _kernels.singleton_d2_first_violation(sym12, 12, D2_SLACK, backend=b))),
        ("superset sum, n=16", lambda b: _kernels.superset_sum(z16, 16, backend=b)),
        ("Held-Karp tours, n=12", lambda b: _kernels.tsp_half_tours(d12, 12, backend=b)),
        ("Dreyfus-Wagner trees, n=10", lambda b: _kernels.steiner_values(d10, 10, backend=b)),
    ]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = sorted(_kernels.BACKENDS)
    print(f"{'kernel':32s}" + "".join(f"{b:>12s}" for b in backends) + ("     speedup" if len(backends) > 1 else ""))
    for name, fn in cases():
        times = {}
        for b in backends:
            fn(b)  # warm up
            times[b] = min(timeit.repeat(lambda: fn(b), number=1, repeat=args.repeat))
        row = f"{name:32s}" + "".join(f"{times[b] * 1e3:10.2f}ms" for b in backends)
        if "cython" in times:
            row += f"{times['python'] / times['cython']:11.1f}x"
        print(row)


if __name__ == "__main__":
    main()
