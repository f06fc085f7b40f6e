"""Time the numba and pure-numpy float kernels against each other.

    python3 benchmarks/bench_accel.py --sizes 1000 100000 1000000 --repeat 5

Both paths are checked for agreement before timing. The numba kernels are
compiled once up front so compile time is not counted.
"""
import argparse
import timeit

import numpy as np

from ranksum import _accel


def kernels():
    pairs = {
        "rank_vector": (lambda v, y: _accel.rank_vector_numpy(v), None),
        "auc": (lambda v, y: _accel.auc_numpy(v, y), None),
        "roc_area": (lambda v, y: _accel.roc_area_numpy(v, y), None),
    }
    if _accel.HAVE_NUMBA:
        pairs["rank_vector"] = (pairs["rank_vector"][0], lambda v, y: _accel.rank_vector_numba(v))
        pairs["auc"] = (pairs["auc"][0], lambda v, y: _accel.auc_numba(v, y))
        pairs["roc_area"] = (pairs["roc_area"][0], lambda v, y: _accel.roc_area_numba(v, y))
    return pairs


def make_data(n, ties, seed):
    rng = np.random.default_rng(seed)
    if ties:
        values = rng.integers(0, max(2, n // 100), size=n).astype(np.float64)
    else:
        values = rng.normal(size=n)
    y = rng.integers(0, 2, size=n).astype(np.int64)
    return values, y


def best_time(fn, values, y, repeat):
    return min(timeit.repeat(lambda: fn(values, y), number=1, repeat=repeat))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[1_000, 10_000, 100_000, 1_000_000])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--ties", action="store_true", help="draw scores from a coarse grid")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    pairs = kernels()
    if not _accel.HAVE_NUMBA:
        print("numba is not installed; timing the numpy path only")
    warm_v, warm_y = make_data(64, args.ties, args.seed)
    for _, jit in pairs.values():
        if jit is not None:
            jit(warm_v, warm_y)

    print(f"{'kernel':12s} {'n':>9s} {'numpy ms':>10s} {'numba ms':>10s} {'speedup':>8s}")
    for n in args.sizes:
        values, y = make_data(n, args.ties, args.seed)
        for name, (ref, jit) in pairs.items():
            t_np = best_time(ref, values, y, args.repeat)
            if jit is None:
                print(f"{name:12s} {n:9d} {t_np * 1e3:10.3f} {'-':>10s} {'-':>8s}")
                continue
            a, b = np.asarray(ref(values, y)), np.asarray(jit(values, y))
            if not np.allclose(a, b, rtol=0, atol=1e-12, equal_nan=True):
                raise SystemExit(f"{name}: backends disagree at n={n}")
            t_nb = best_time(jit, values, y, args.repeat)
            print(f"{name:12s} {n:9d} {t_np * 1e3:10.3f} {t_nb * 1e3:10.3f} {t_np / t_nb:7.2f}x")


if __name__ == "__main__":
    main()
