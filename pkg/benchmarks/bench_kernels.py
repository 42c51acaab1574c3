#!/usr/bin/env python3
"""Compare the numba row kernels against the numpy column sweeps.

Run from a checkout with the package installed:

    python3 benchmarks/bench_kernels.py --n 500000
    ZECK_NUMBA=0 python3 benchmarks/bench_kernels.py   # numpy only

The pure-python path is timed on a small slice and scaled, because timing
it honestly at full size would take minutes.
"""

import argparse
import time

import numpy as np

from zeckdual import SystemPair
from zeckdual import _kernels


def parse_rule(text):
    return tuple(int(t) for t in text.split(","))


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def report(label, seconds, n, baseline=None):
    rate = n / seconds / 1e6
    line = f"  {label:<14} {seconds * 1e3:9.2f} ms   {rate:8.2f} Mvals/s"
    if baseline is not None:
        line += f"   {baseline / seconds:6.1f}x vs numpy"
    print(line)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sub", type=parse_rule, default=(1, 0))
    ap.add_argument("--super", type=parse_rule, default=(1, 1), dest="sup")
    ap.add_argument("--n", type=int, default=500_000)
    ap.add_argument("--max-x", type=int, default=10_000_000)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    pair = SystemPair(args.sub, args.sup)
    rng = np.random.default_rng(args.seed)
    xs = rng.integers(1, args.max_x, size=args.n, dtype=np.int64)
    ns = np.arange(0, args.n, dtype=np.int64)

    tables = pair._int64_tables(args.max_x)
    if tables is None:
        raise SystemExit("weights overflow int64 at this --max-x; lower it")
    sup_w, sup_caps, caps, sub_w = tables

    print(f"pair {args.sub} / {args.sup}, n={args.n}, table height {len(sup_w)}")
    print(f"numba kernels enabled: {_kernels.kernels_enabled()}")

    print("dual counts (z at random x):")
    t_np = best_of(
        lambda: _kernels._dual_counts_np(xs, sup_w, sup_caps, caps, sub_w),
        args.repeat,
    )
    if _kernels.kernels_enabled():
        _kernels._dual_counts_nb(xs[:64], sup_w, sup_caps, caps, sub_w)  # warm the JIT
        t_nb = best_of(
            lambda: _kernels._dual_counts_nb(xs, sup_w, sup_caps, caps, sub_w),
            args.repeat,
        )
        got_nb = _kernels._dual_counts_nb(xs, sup_w, sup_caps, caps, sub_w)
        got_np = _kernels._dual_counts_np(xs, sup_w, sup_caps, caps, sub_w)
        if not np.array_equal(got_nb, got_np):
            raise SystemExit("numba and numpy disagree -- benchmark aborted")
        report("numba", t_nb, args.n, baseline=t_np)
    report("numpy", t_np, args.n)

    slice_n = min(args.n, 2000)
    t0 = time.perf_counter()
    for x in xs[:slice_n]:
        pair.count_expressible(int(x))
    t_py = (time.perf_counter() - t0) * (args.n / slice_n)
    report("pure (est.)", t_py, args.n)

    print("membership mask (contiguous range):")
    t_np = best_of(
        lambda: _kernels._member_flags_np(ns, sup_w, sup_caps, caps), args.repeat
    )
    if _kernels.kernels_enabled():
        _kernels._member_flags_nb(ns[:64], sup_w, sup_caps, caps)
        t_nb = best_of(
            lambda: _kernels._member_flags_nb(ns, sup_w, sup_caps, caps), args.repeat
        )
        report("numba", t_nb, args.n, baseline=t_np)
    report("numpy", t_np, args.n)


if __name__ == "__main__":
    main()
