"""Compare the compiled and pure-Python kernels.

    python benchmarks/bench_kernels.py [--n 2000] [--repeat 3]
"""

import argparse
import time

from paramodular import kernels, toric


def best_of(fn, repeat):
    best, value = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        value = fn()
        best = min(best, time.perf_counter() - t0)
    return best, value


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=2000)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if kernels.BACKEND != "cython":
        raise SystemExit("compiled kernels unavailable; build with pip install -e . --no-build-isolation")

    cases = [
        (f"plurigenus p=5 nu=(1,1,1) n={args.n}",
         lambda b: toric.plurigenus_count(toric.QuotientLatticeData(5, (1, 1, 1)), args.n,
                                          threads=1, backend=b)),
        (f"plurigenus p=11 nu=(1,2,3) n={args.n // 2}",
         lambda b: toric.plurigenus_count(toric.QuotientLatticeData(11, (1, 2, 3)), args.n // 2,
                                          threads=1, backend=b)),
        ("min age, all r for p=997",
         lambda b: sum(kernels.min_age_sum(997, r + 1, -r % 997, r * (r + 1) % 997, backend=b)[0]
                       for r in range(2, 997))),
    ]
    print(f"{'case':<40} {'cython':>10} {'python':>10} {'speedup':>8}")
    for name, fn in cases:
        tc, vc = best_of(lambda: fn("cython"), args.repeat)
        tp, vp = best_of(lambda: fn("python"), args.repeat)
        assert vc == vp, (name, vc, vp)
        print(f"{name:<40} {tc:>9.3f}s {tp:>9.3f}s {tp / tc:>7.1f}x")
    d = toric.QuotientLatticeData(5, (1, 1, 1))
    for threads in (1, 2, 4):
        t, _ = best_of(lambda: toric.plurigenus_count(d, args.n, threads=threads), args.repeat)
        print(f"{'threaded cython, threads=' + str(threads):<40} {t:>9.3f}s")


if __name__ == "__main__":
    main()
