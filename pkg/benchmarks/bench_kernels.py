"""Compare the compiled and numpy Jordan-Wigner kernels.

    python benchmarks/bench_kernels.py [--modes 8 10 12] [--length 4] [--repeat 20]

Each case times the images of every basis state under one random atom word
and checks that both backends return identical arrays.
"""

import argparse
import timeit

import numpy as np

from fockdl import _pykernels, kernels

try:
    from fockdl import _ckernels
except ImportError:
    _ckernels = None


def bench_case(n, length, repeat, rng):
    kinds = rng.integers(0, 2, size=length).astype(np.uint8)
    modes = rng.integers(0, n, size=length).astype(np.int64)
    states = np.arange(1 << n, dtype=np.int64)
    backends = {"python": _pykernels}
    if _ckernels is not None:
        backends["cython"] = _ckernels
    times, results = {}, {}
    for name, impl in backends.items():
        results[name] = kernels.word_images(kinds, modes, states, impl=impl)
        t = timeit.repeat(lambda: kernels.word_images(kinds, modes, states, impl=impl), number=1, repeat=repeat)
        times[name] = min(t)
    if "cython" in results:
        for a, b in zip(results["python"], results["cython"]):
            np.testing.assert_array_equal(a, b)
    return times


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--modes", type=int, nargs="+", default=[6, 8, 10, 12])
    p.add_argument("--length", type=int, default=4)
    p.add_argument("--repeat", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args(argv)
    rng = np.random.default_rng(args.seed)

    print(f"selected backend: {kernels.BACKEND}")
    if _ckernels is None:
        print("compiled extension not built; timing the numpy kernel only")
    print(f"{'modes':>5} {'states':>7} {'python [us]':>12} {'cython [us]':>12} {'speedup':>8}")
    for n in args.modes:
        t = bench_case(n, args.length, args.repeat, rng)
        py = t["python"] * 1e6
        if "cython" in t:
            cy = t["cython"] * 1e6
            print(f"{n:>5} {1 << n:>7} {py:>12.1f} {cy:>12.1f} {py / cy:>7.1f}x")
        else:
            print(f"{n:>5} {1 << n:>7} {py:>12.1f} {'-':>12} {'-':>8}")


if __name__ == "__main__":
    main()
