"""Compiled vs pure-Python screening kernels.

    python benchmarks/bench_kernels.py [--sets 500] [--repeat 5]

Prints best-of-repeat wall times for both backends and the largest
disagreement between them.  The compiled extension must be built
(``pip install -e . --no-build-isolation``).
"""

import argparse
import time

import numpy as np

from cara import _kernels_py

try:
    from cara import _kernels
except ImportError:
    _kernels = None


def _best(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("--sets", type=int, default=500)
    ap.add_argument("--size", type=int, default=6)
    ap.add_argument("--dim", type=int, default=4)
    ap.add_argument("--queries", type=int, default=400)
    ap.add_argument("--segments", type=int, default=200)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    if _kernels is None:
        print("compiled extension not built; only the fallback is available")
        return 1
    rng = np.random.default_rng(args.seed)

    P = rng.normal(size=(args.sets * args.size, args.dim))
    idx = np.arange(args.sets * args.size).reshape(args.sets, args.size)
    counts = rng.integers(1, args.size + 1, size=args.sets)
    Q = rng.normal(size=(args.queries, args.dim))
    A = rng.normal(size=(args.segments, args.dim))
    B = A + rng.normal(size=(args.segments, args.dim))

    rows = []
    for name, call in (
        ("batch_min_norm_sq", lambda m: m.batch_min_norm_sq(P, idx, counts)),
        ("point_segment_min_dist", lambda m: m.point_segment_min_dist(Q, A, B)),
    ):
        tc, oc = _best(lambda: call(_kernels), args.repeat)
        tp, op = _best(lambda: call(_kernels_py), args.repeat)
        rows.append((name, tc, tp, tp / tc, float(np.max(np.abs(oc - op)))))

    print(f"{'kernel':<24}{'compiled s':>12}{'python s':>12}{'speedup':>10}{'max diff':>12}")
    for name, tc, tp, sp, diff in rows:
        print(f"{name:<24}{tc:>12.5f}{tp:>12.5f}{sp:>9.1f}x{diff:>12.2e}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
