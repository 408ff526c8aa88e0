"""numba-jitted kernels; same contracts as :mod:`z2geo.kernels._numpy`."""

import numpy as np
from numba import njit

_ONE = np.uint64(1)
_EVEN = np.uint64(0x5555555555555555)


@njit(cache=True)
def _parity(x):
    x ^= x >> np.uint64(32)
    x ^= x >> np.uint64(16)
    x ^= x >> np.uint64(8)
    x ^= x >> np.uint64(4)
    x ^= x >> np.uint64(2)
    x ^= x >> np.uint64(1)
    return x & _ONE


@njit(cache=True)
def _row_dot(u, v):
    acc = np.uint64(0)
    for w in range(u.shape[0]):
        acc ^= u[w] & v[w]
    return _parity(acc)


@njit(cache=True)
def rref(words, ncols):
    m = words.copy()
    nrows, nw = m.shape
    pivots = np.empty(min(nrows, ncols), dtype=np.int64)
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        w = c // 64
        mask = _ONE << np.uint64(c % 64)
        p = -1
        for i in range(r, nrows):
            if m[i, w] & mask:
                p = i
                break
        if p < 0:
            continue
        if p != r:
            for k in range(nw):
                tmp = m[r, k]
                m[r, k] = m[p, k]
                m[p, k] = tmp
        for i in range(nrows):
            if i != r and (m[i, w] & mask):
                for k in range(nw):
                    m[i, k] ^= m[r, k]
        pivots[r] = c
        r += 1
    return m, pivots[:r].copy()


@njit(cache=True)
def matmul(a, b, inner):
    rows = a.shape[0]
    nw = b.shape[1]
    out = np.zeros((rows, nw), dtype=np.uint64)
    for i in range(rows):
        for j in range(inner):
            if (a[i, j // 64] >> np.uint64(j % 64)) & _ONE:
                for k in range(nw):
                    out[i, k] ^= b[j, k]
    return out


@njit(cache=True)
def matvec(a, v):
    out = np.zeros(a.shape[0], dtype=np.uint8)
    for i in range(a.shape[0]):
        out[i] = np.uint8(_row_dot(a[i], v))
    return out


@njit(cache=True)
def transpose(words, nrows, ncols):
    nw = max(1, (nrows + 63) // 64)
    out = np.zeros((ncols, nw), dtype=np.uint64)
    for i in range(nrows):
        for j in range(ncols):
            if (words[i, j // 64] >> np.uint64(j % 64)) & _ONE:
                out[j, i // 64] |= _ONE << np.uint64(i % 64)
    return out


@njit(cache=True)
def apply_transvections(vectors, twists):
    out = vectors.copy()
    nv, nw = out.shape
    swapped = np.empty(nw, dtype=np.uint64)
    for t in range(twists.shape[0]):
        for k in range(nw):
            c = twists[t, k]
            swapped[k] = ((c & _EVEN) << _ONE) | ((c >> _ONE) & _EVEN)
        for i in range(nv):
            if _row_dot(out[i], swapped):
                for k in range(nw):
                    out[i, k] ^= twists[t, k]
    return out


@njit(cache=True)
def paint_affine(grid, a0, b0, ca, cb, lo, st):
    amax = grid.shape[0] - 1
    bmax = grid.shape[1] - 1
    painted = 0
    p0 = lo[0]
    while True:
        a_row = a0 + ca[0] * p0
        b_row = b0 + cb[0] * p0
        if a_row + ca[1] * lo[1] > amax or b_row + cb[1] * lo[1] > bmax:
            break
        p1 = lo[1]
        while True:
            a = a_row + ca[1] * p1
            b = b_row + cb[1] * p1
            if a > amax or b > bmax:
                break
            if a >= 0 and b >= 0:
                if grid[a, b] == 0:
                    grid[a, b] = 1
                painted += 1
            if ca[1] == 0 and cb[1] == 0:
                break
            p1 += st[1]
        if ca[0] == 0 and cb[0] == 0:
            break
        p0 += st[0]
    return painted
