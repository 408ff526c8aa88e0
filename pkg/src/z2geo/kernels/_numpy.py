"""Vectorised numpy kernels (fallback when numba is disabled or missing)."""

import numpy as np

_ONE = np.uint64(1)
_EVEN = np.uint64(0x5555555555555555)


def _unpack(words, ncols):
    """(rows, nw) uint64 -> (rows, ncols) uint8 entries."""
    as_bytes = np.ascontiguousarray(words, dtype="<u8").view(np.uint8)
    return np.unpackbits(as_bytes, axis=-1, bitorder="little")[:, :ncols]


def _pack(bits, nwords):
    rows, ncols = bits.shape
    padded = np.zeros((rows, nwords * 64), dtype=np.uint8)
    padded[:, :ncols] = bits
    return np.packbits(padded, axis=-1, bitorder="little").view("<u8").astype(np.uint64)


def _parity_rows(words):
    return (np.bitwise_count(words).sum(axis=1, dtype=np.int64) & 1).astype(np.uint8)


def rref(words, ncols):
    """Gauss-Jordan elimination with first-nonzero pivot selection.

    Returns the reduced copy and the pivot columns, in order.
    """
    m = np.array(words, dtype=np.uint64, copy=True)
    nrows = m.shape[0]
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        w, bit = divmod(c, 64)
        mask = _ONE << np.uint64(bit)
        below = (m[r:, w] & mask) != 0
        if not below.any():
            continue
        p = r + int(np.argmax(below))
        if p != r:
            m[[r, p]] = m[[p, r]]
        hits = (m[:, w] & mask) != 0
        hits[r] = False
        m[hits] ^= m[r]
        pivots.append(c)
        r += 1
    return m, np.array(pivots, dtype=np.int64)


def matmul(a, b, inner):
    """Product of packed matrices; ``inner`` is the shared dimension."""
    bcols = b.shape[1] * 64
    prod = _unpack(a, inner).astype(np.int64) @ _unpack(b, bcols).astype(np.int64)
    return _pack((prod & 1).astype(np.uint8), b.shape[1])


def matvec(a, v):
    """Row parities of ``a & v``: the product ``A v`` as a 0/1 array."""
    if a.shape[0] == 0:
        return np.zeros(0, dtype=np.uint8)
    return _parity_rows(a & v[None, :])


def transpose(words, nrows, ncols):
    nw = max(1, (nrows + 63) // 64)
    if ncols == 0:
        return np.zeros((0, nw), dtype=np.uint64)
    return _pack(np.ascontiguousarray(_unpack(words, ncols).T), nw)


def apply_transvections(vectors, twists):
    """Push every row of ``vectors`` through the twists, first twist first.

    Each twist about ``c`` sends ``v`` to ``v + <v, c> c`` for the standard
    symplectic pairing on interleaved ``x_i, y_i`` coordinates.
    """
    out = np.array(vectors, dtype=np.uint64, copy=True)
    if out.shape[0] == 0:
        return out
    swapped = ((twists & _EVEN) << _ONE) | ((twists >> _ONE) & _EVEN)
    for k in range(twists.shape[0]):
        hit = _parity_rows(out & swapped[k][None, :]).astype(bool)
        out[hit] ^= twists[k]
    return out


def paint_affine(grid, a0, b0, ca, cb, lo, st):
    """Mark ``grid[a, b]`` for every point of a two-parameter affine family.

    ``a = a0 + ca . p`` and ``b = b0 + cb . p`` with ``p_k = lo_k + st_k t``,
    ``t >= 0``. A parameter with zero coefficients contributes one value.
    Coefficients must be non-negative. Returns the number of points painted.
    """
    amax, bmax = grid.shape[0] - 1, grid.shape[1] - 1
    base_a = a0 + int(np.dot(ca, lo))
    base_b = b0 + int(np.dot(cb, lo))
    if base_a > amax or base_b > bmax or base_a < 0 or base_b < 0:
        return 0
    axes = []
    for k in range(len(ca)):
        da, db = int(ca[k] * st[k]), int(cb[k] * st[k])
        if da == 0 and db == 0:
            axes.append((np.zeros(1, dtype=np.int64), 0, 0))
            continue
        n = min((amax - base_a) // da if da else 1 << 40, (bmax - base_b) // db if db else 1 << 40)
        axes.append((np.arange(n + 1, dtype=np.int64), da, db))
    t = np.meshgrid(*[ax[0] for ax in axes], indexing="ij")
    a = base_a + sum(ti * ax[1] for ti, ax in zip(t, axes))
    b = base_b + sum(ti * ax[2] for ti, ax in zip(t, axes))
    keep = (a <= amax) & (b <= bmax)
    grid[a[keep], b[keep]] = 1
    return int(keep.sum())
