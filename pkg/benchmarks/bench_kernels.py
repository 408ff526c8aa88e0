"""Time the numba kernels against the numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Both kernel modules are imported directly, so the Z2GEO_BACKEND flag does
not matter here. The first numba call (compilation) is excluded.
"""

import argparse
import time

import numpy as np

from z2geo.kernels import _numpy as npk

try:
    from z2geo.kernels import _numba as nbk
except ImportError:  # numba missing
    nbk = None


def _best(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def cases(rng):
    g = 6
    nw = 1
    dim = 2 * g
    basis = np.array([[1 << i] for i in range(dim)], dtype=np.uint64)
    twists = rng.integers(1, 1 << dim, size=(2000, nw), dtype=np.uint64)
    mat = rng.integers(0, 1 << 63, size=(256, 4), dtype=np.uint64)
    grid_shape = (201, 401)
    fam = (np.int64(5), np.int64(10), np.array([0, 2]), np.array([2, 4]), np.array([0, 0]), np.array([1, 1]))
    return {
        "apply_transvections (2000 twists, genus 6)": lambda k: k.apply_transvections(basis, twists),
        "rref (256 x 256)": lambda k: k.rref(mat, 256),
        "matmul (256 x 256)": lambda k: k.matmul(mat, mat, 256),
        "paint_affine (201 x 401 grid)": lambda k: k.paint_affine(np.zeros(grid_shape, np.uint8), *fam),
    }


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    rng = np.random.default_rng(0)
    print(f"{'kernel':45s} {'numpy (ms)':>12s} {'numba (ms)':>12s} {'speedup':>8s}")
    for name, fn in cases(rng).items():
        t_np = _best(lambda: fn(npk), args.repeat)
        if nbk is None:
            print(f"{name:45s} {t_np * 1e3:12.3f} {'n/a':>12s}")
            continue
        fn(nbk)  # compile
        t_nb = _best(lambda: fn(nbk), args.repeat)
        print(f"{name:45s} {t_np * 1e3:12.3f} {t_nb * 1e3:12.3f} {t_np / t_nb:8.1f}x")


if __name__ == "__main__":
    main()
