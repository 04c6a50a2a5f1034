"""Time the numba and numpy variants of every semiring kernel side by side.

    python3 benchmarks/bench_kernels.py            # both variants
    python3 benchmarks/bench_kernels.py --sizes 8 64 256 --repeat 20

Both variants are taken from ``procat._kernels.IMPLS`` so the comparison does
not depend on ``PROCAT_DISABLE_JIT``; the flag only picks which one the
library dispatches to, and is reported in the header.
"""

from __future__ import annotations

import argparse
import timeit

import numpy as np

from procat import _kernels as K


def _inputs(kernel: str, n: int, rng: np.random.Generator):
    if kernel == "bool_matmul":
        return rng.random((n, n)) < 0.3, rng.random((n, n)) < 0.3
    if kernel == "nat_matmul":
        return rng.integers(0, 3, (n, n)).astype(np.int64), rng.integers(0, 3, (n, n)).astype(np.int64)
    if kernel == "bool_kron":
        k = max(1, int(round(n ** 0.5)))
        return rng.random((k, k)) < 0.5, rng.random((k, k)) < 0.5
    # inverse search is exhaustive: a permutation with one extra entry has no inverse
    m = min(n, K.MAX_SEARCH_DIM)
    f = np.eye(m, dtype=np.bool_)[rng.permutation(m)]
    f[0, :] = True
    return (f,)


def bench(sizes, repeat: int, seed: int = 0):
    rng = np.random.default_rng(seed)
    rows = []
    for kernel in K.IMPLS["numpy"]:
        for n in sizes:
            if kernel == "bool_inverse_search" and n > K.MAX_SEARCH_DIM:
                continue
            args = _inputs(kernel, n, rng)
            times = {}
            for impl, table in sorted(K.IMPLS.items()):
                fn = table[kernel]
                fn(*args)  # warm-up, includes JIT compilation
                times[impl] = min(timeit.repeat(lambda: fn(*args), number=1, repeat=repeat))
            rows.append((kernel, n, times))
    return rows


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--sizes", type=int, nargs="+", default=[3, 4, 16, 64, 256])
    p.add_argument("--repeat", type=int, default=10)
    args = p.parse_args(argv)
    print(f"numba available: {'numba' in K.IMPLS}; library dispatch: "
          f"{'numba' if K.JIT_ENABLED else 'numpy'}")
    impls = sorted(K.IMPLS)
    print(f"{'kernel':<22}{'n':>5}" + "".join(f"{i + ' (ms)':>14}" for i in impls)
          + (f"{'numpy/numba':>13}" if len(impls) == 2 else ""))
    for kernel, n, t in bench(args.sizes, args.repeat):
        line = f"{kernel:<22}{n:>5}" + "".join(f"{t[i] * 1e3:>14.4f}" for i in impls)
        if len(impls) == 2:
            line += f"{t['numpy'] / t['numba']:>13.2f}"
        print(line)


if __name__ == "__main__":
    main()
