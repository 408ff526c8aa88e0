"""Hot loops over bit-packed GF(2) data.

Rows are little-endian ``uint64`` words: entry ``j`` lives in word ``j // 64``
at bit ``j % 64``. Both backends expose the same functions with the same
semantics; :mod:`z2geo._backend` decides which one is bound here.
"""

from .._backend import BACKEND

if BACKEND == "numba":
    from ._numba import apply_transvections, matmul, matvec, paint_affine, rref, transpose
else:
    from ._numpy import apply_transvections, matmul, matvec, paint_affine, rref, transpose

__all__ = [
    "BACKEND",
    "apply_transvections",
    "matmul",
    "matvec",
    "paint_affine",
    "rref",
    "transpose",
]
