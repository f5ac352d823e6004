"""Time the numba kernels against the numpy fallbacks on the same inputs.

    python bench/bench_kernels.py [--repeat 5]

The first numba call is timed separately so compile cost is visible.
"""
import argparse
import time

import numpy as np

from ngonal_atlas import _kernels as K
from ngonal_atlas.genvectors import residues_of_order

ZERO_SUM_CASES = [(66, [2] * 6 + [3, 3] + [11] * 6), (60, [2, 3, 4, 5, 6, 10, 12]), (30, [5] * 8)]


def choices_for(n, periods):
    return [residues_of_order(n, p) for p in periods]


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--cap", type=int, default=200_000)
    args = ap.parse_args()
    if not K.HAVE_NUMBA:
        raise SystemExit("numba is disabled (NGONAL_NO_NUMBA set or numba missing)")

    print(f"{'kernel':34} {'numpy s':>9} {'numba s':>9} {'first numba s':>14} {'speedup':>8}")
    for n, periods in ZERO_SUM_CASES:
        ch = choices_for(n, periods)
        t0 = time.perf_counter()
        a, _ = K.zero_sum_tuples(n, ch, cap=args.cap, use_numba=True)
        first = time.perf_counter() - t0
        b, _ = K.zero_sum_tuples(n, ch, cap=args.cap, use_numba=False)
        assert np.array_equal(np.asarray(a), np.asarray(b))
        t_np = best_of(lambda: K.zero_sum_tuples(n, ch, cap=args.cap, use_numba=False), args.repeat)
        t_nb = best_of(lambda: K.zero_sum_tuples(n, ch, cap=args.cap, use_numba=True), args.repeat)
        label = f"zero_sum n={n} r={len(periods)}"
        print(f"{label:34} {t_np:9.4f} {t_nb:9.4f} {first:14.4f} {t_np / t_nb:8.1f}x")

    rng = np.random.default_rng(0)
    for m, count in ((6, 200), (8, 50)):
        tups = [np.array([rng.permutation(m) for _ in range(3)]) for _ in range(count)]
        t0 = time.perf_counter()
        K.lexmin_conjugate(tups[0], use_numba=True)
        first = time.perf_counter() - t0
        for t in tups[:5]:
            assert np.array_equal(K.lexmin_conjugate(t, use_numba=True), K.lexmin_conjugate(t, use_numba=False))
        t_np = best_of(lambda: [K.lexmin_conjugate(t, use_numba=False) for t in tups], args.repeat)
        t_nb = best_of(lambda: [K.lexmin_conjugate(t, use_numba=True) for t in tups], args.repeat)
        label = f"lexmin_conjugate m={m} x{count}"
        print(f"{label:34} {t_np:9.4f} {t_nb:9.4f} {first:14.4f} {t_np / t_nb:8.1f}x")


if __name__ == "__main__":
    main()
