"""Time the numba kernels against their numpy fallbacks.

    python benchmarks/bench_kernels.py [--n 500] [--p 600] [--B 200] [--repeat 3]

The default size is the paper-scale scenario (n=500, p=600, B=200).
"""

import argparse
import time

import numpy as np

from jmbcp import LINEAR, _kernels, half_rows
from jmbcp._accel import NUMBA_ENABLED
from jmbcp.bootstrap import multipliers
from jmbcp.teststat import scale_factor


def best_of(fn, repeat):
    fn()  # warm-up / JIT
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=500)
    ap.add_argument("--p", type=int, default=600)
    ap.add_argument("--B", type=int, default=200)
    ap.add_argument("--boundary", type=int, default=40)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if not NUMBA_ENABLED:
        raise SystemExit("numba backend disabled (JMBCP_BACKEND / JMBCP_DISABLE_NUMBA); nothing to compare")

    rng = np.random.default_rng(0)
    X = rng.standard_normal((args.n, args.p))
    A = _kernels._sign_pairwise_np(X)
    E = multipliers(args.n, 1, 0, args.B)
    c = scale_factor(args.n)
    lo, hi = args.boundary, args.n - args.boundary

    cases = [
        ("sign rows, pairwise O(n^2 p)", lambda: _kernels._sign_pairwise_np(X), lambda: _kernels._sign_pairwise_nb(X)),
        ("sign rows, rank O(n log n p)", None, lambda: _kernels._sign_rank_nb(X)),
        ("linear rows, suffix O(np)", lambda: _kernels._linear_suffix_np(X), lambda: _kernels._linear_suffix_nb(X)),
        ("JMB draws (max-abs)", lambda: _kernels._weighted_rows_max_np(E, A, c),
         lambda: _kernels._weighted_rows_max_nb(E, A, c)),
        ("CUSUM bootstrap draws", lambda: _kernels._cusum_boot_max_np(X, E, lo, hi),
         lambda: _kernels._cusum_boot_max_nb(X, E, lo, hi)),
    ]
    print(f"n={args.n} p={args.p} B={args.B} boundary={args.boundary}  (best of {args.repeat})")
    print(f"{'kernel':<32}{'numpy [ms]':>12}{'numba [ms]':>12}{'speedup':>10}")
    for name, np_fn, nb_fn in cases:
        t_nb = best_of(nb_fn, args.repeat)
        if np_fn is None:
            print(f"{name:<32}{'-':>12}{t_nb * 1e3:>12.2f}{'-':>10}")
            continue
        t_np = best_of(np_fn, args.repeat)
        print(f"{name:<32}{t_np * 1e3:>12.2f}{t_nb * 1e3:>12.2f}{t_np / t_nb:>9.1f}x")

    small = X[:120, :50]
    t_generic = best_of(lambda: half_rows(LINEAR, small), args.repeat)
    t_fast = best_of(lambda: _kernels.linear_suffix_rows(small), args.repeat)
    print(f"\nlinear kernel at n=120, p=50: generic pairwise {t_generic * 1e3:.2f} ms, "
          f"suffix-sum {t_fast * 1e3:.3f} ms")


if __name__ == "__main__":
    main()
