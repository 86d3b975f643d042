"""Compare the numba and numpy row-reduction kernels on random matrices over F_p.

    python3 benchmarks/bench_kernels.py [--p 101] [--repeat 5]
"""

import argparse
import time

import numpy as np

from nart import _kernels


def bench(backend, shape, p, repeat, rng):
    mats = [rng.integers(0, p, shape, dtype=np.int64) for _ in range(repeat)]
    _kernels.rref_inplace(mats[0].copy(), p, backend)  # warm-up / JIT
    t0 = time.perf_counter()
    for m in mats:
        _kernels.rref_inplace(m.copy(), p, backend)
    return (time.perf_counter() - t0) / repeat


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--p", type=int, default=101)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    rng = np.random.default_rng(0)
    backends = ["numpy"] + (["numba"] if _kernels.HAVE_NUMBA else [])
    print(f"{'shape':>12} " + " ".join(f"{b:>12}" for b in backends))
    for shape in [(20, 40), (60, 120), (150, 300), (300, 600)]:
        times = [bench(b, shape, args.p, args.repeat, rng) for b in backends]
        print(f"{str(shape):>12} " + " ".join(f"{t * 1e3:>10.2f}ms" for t in times))


if __name__ == "__main__":
    main()
