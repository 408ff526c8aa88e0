"""Linear algebra over the two-element field.

Vectors pack their entries into a Python integer (entry ``i`` is bit ``i``);
matrices keep read-only ``uint64`` word rows so the elimination and product
kernels in :mod:`z2geo.kernels` can run on them directly.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

from . import kernels

WORD_BITS = 64


def _nwords(n: int) -> int:
    return max(1, (n + WORD_BITS - 1) // WORD_BITS)


def _int_to_words(x: int, nw: int) -> np.ndarray:
    out = np.zeros(nw, dtype=np.uint64)
    for k in range(nw):
        out[k] = (x >> (WORD_BITS * k)) & 0xFFFFFFFFFFFFFFFF
    return out


def _words_to_int(words) -> int:
    x = 0
    for k, w in enumerate(words):
        x |= int(w) << (WORD_BITS * k)
    return x


@dataclass(frozen=True)
class BitVector:
    """A vector in GF(2)^length."""

    length: int
    bits: int = 0

    def __post_init__(self):
        if self.length < 0:
            raise ValueError("length must be non-negative")
        if self.bits < 0 or self.bits >> self.length:
            raise ValueError(f"bits {self.bits:#x} do not fit in length {self.length}")

    @classmethod
    def zeros(cls, length: int) -> BitVector:
        return cls(length, 0)

    @classmethod
    def unit(cls, length: int, i: int) -> BitVector:
        if not 0 <= i < length:
            raise IndexError(i)
        return cls(length, 1 << i)

    @classmethod
    def from_entries(cls, entries: Iterable[int]) -> BitVector:
        bits = 0
        n = 0
        for n, e in enumerate(entries, start=1):
            if e not in (0, 1, True, False):
                raise ValueError(f"entry {e!r} is not 0 or 1")
            if e:
                bits |= 1 << (n - 1)
        return cls(n, bits)

    @classmethod
    def from_words(cls, length: int, words) -> BitVector:
        return cls(length, _words_to_int(words) & ((1 << length) - 1))

    def words(self, nw: int | None = None) -> np.ndarray:
        return _int_to_words(self.bits, nw or _nwords(self.length))

    def __len__(self) -> int:
        return self.length

    def __getitem__(self, i: int) -> int:
        if i < 0:
            i += self.length
        if not 0 <= i < self.length:
            raise IndexError(i)
        return (self.bits >> i) & 1

    def __iter__(self) -> Iterator[int]:
        return ((self.bits >> i) & 1 for i in range(self.length))

    def _check(self, other: BitVector) -> None:
        if not isinstance(other, BitVector):
            raise TypeError(f"expected BitVector, got {type(other).__name__}")
        if other.length != self.length:
            raise ValueError(f"length mismatch: {self.length} vs {other.length}")

    def __add__(self, other: BitVector) -> BitVector:
        self._check(other)
        return BitVector(self.length, self.bits ^ other.bits)

    __xor__ = __add__
    __sub__ = __add__

    def __and__(self, other: BitVector) -> BitVector:
        self._check(other)
        return BitVector(self.length, self.bits & other.bits)

    def scale(self, s: int) -> BitVector:
        return self if s & 1 else BitVector(self.length, 0)

    def dot(self, other: BitVector) -> int:
        self._check(other)
        return (self.bits & other.bits).bit_count() & 1

    def flip(self, i: int) -> BitVector:
        return self + BitVector.unit(self.length, i)

    @property
    def weight(self) -> int:
        return self.bits.bit_count()

    def is_zero(self) -> bool:
        return self.bits == 0

    def support(self) -> list[int]:
        return [i for i in range(self.length) if (self.bits >> i) & 1]

    def __str__(self) -> str:
        return "".join(str(b) for b in self)


class BitMatrix:
    """An immutable rows x cols matrix over GF(2)."""

    __slots__ = ("rows", "cols", "_words")

    def __init__(self, rows: int, cols: int, words: np.ndarray | None = None):
        if rows < 0 or cols < 0:
            raise ValueError("dimensions must be non-negative")
        nw = _nwords(cols)
        if words is None:
            words = np.zeros((rows, nw), dtype=np.uint64)
        words = np.array(words, dtype=np.uint64, copy=True).reshape(rows, nw)
        if cols % WORD_BITS and rows:
            tail = np.uint64((1 << (cols % WORD_BITS)) - 1)
            if np.any(words[:, -1] & ~tail):
                raise ValueError("words carry bits beyond cols")
        elif cols == 0 and rows and np.any(words):
            raise ValueError("words carry bits beyond cols")
        words.setflags(write=False)
        self.rows = rows
        self.cols = cols
        self._words = words

    # construction -------------------------------------------------------
    @classmethod
    def zeros(cls, rows: int, cols: int) -> BitMatrix:
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> BitMatrix:
        return cls.from_rows([BitVector.unit(n, i) for i in range(n)], cols=n)

    @classmethod
    def from_rows(cls, rows: Sequence, cols: int | None = None) -> BitMatrix:
        vecs = [r if isinstance(r, BitVector) else BitVector.from_entries(r) for r in rows]
        if cols is None:
            if not vecs:
                raise ValueError("cols required for an empty row list")
            cols = vecs[0].length
        nw = _nwords(cols)
        words = np.zeros((len(vecs), nw), dtype=np.uint64)
        for i, v in enumerate(vecs):
            if v.length != cols:
                raise ValueError(f"row {i} has length {v.length}, expected {cols}")
            words[i] = v.words(nw)
        return cls(len(vecs), cols, words)

    @classmethod
    def from_columns(cls, columns: Sequence[BitVector], rows: int | None = None) -> BitMatrix:
        if rows is None:
            if not columns:
                raise ValueError("rows required for an empty column list")
            rows = columns[0].length
        return cls.from_rows(columns, cols=rows).transpose()

    @classmethod
    def from_array(cls, array) -> BitMatrix:
        arr = np.asarray(array)
        if arr.ndim != 2:
            raise ValueError("expected a 2-d array")
        if np.any((arr != 0) & (arr != 1)):
            raise ValueError("entries must be 0 or 1")
        return cls.from_rows([BitVector.from_entries(int(x) for x in row) for row in arr], cols=arr.shape[1])

    # access -------------------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def words(self) -> np.ndarray:
        return self._words

    def row(self, i: int) -> BitVector:
        return BitVector.from_words(self.cols, self._words[i])

    def column(self, j: int) -> BitVector:
        return BitVector.from_entries(self[i, j] for i in range(self.rows)) if self.rows else BitVector(0)

    def row_vectors(self) -> list[BitVector]:
        return [self.row(i) for i in range(self.rows)]

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(ij)
        return int((self._words[i, j // WORD_BITS] >> np.uint64(j % WORD_BITS)) & np.uint64(1))

    def to_array(self) -> np.ndarray:
        out = np.zeros((self.rows, self.cols), dtype=np.uint8)
        for i in range(self.rows):
            out[i] = list(self.row(i))
        return out

    # algebra ------------------------------------------------------------
    def transpose(self) -> BitMatrix:
        return BitMatrix(self.cols, self.rows, kernels.transpose(self._words, self.rows, self.cols))

    @property
    def T(self) -> BitMatrix:
        return self.transpose()

    def __matmul__(self, other):
        if isinstance(other, BitVector):
            if other.length != self.cols:
                raise ValueError(f"cannot apply {self.shape} matrix to length-{other.length} vector")
            if self.rows == 0:
                return BitVector(0)
            bits = kernels.matvec(self._words, other.words(self._words.shape[1]))
            return BitVector.from_entries(int(b) for b in bits)
        if isinstance(other, BitMatrix):
            if other.rows != self.cols:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            if self.rows == 0 or other.cols == 0:
                return BitMatrix(self.rows, other.cols)
            if self.cols == 0:
                return BitMatrix(self.rows, other.cols)
            return BitMatrix(self.rows, other.cols, kernels.matmul(self._words, other._words, self.cols))
        return NotImplemented

    def __add__(self, other: BitMatrix) -> BitMatrix:
        if not isinstance(other, BitMatrix) or other.shape != self.shape:
            raise ValueError("shape mismatch")
        return BitMatrix(self.rows, self.cols, self._words ^ other._words)

    def is_symmetric(self) -> bool:
        return self.rows == self.cols and self == self.transpose()

    def diagonal(self) -> BitVector:
        n = min(self.rows, self.cols)
        return BitVector.from_entries(self[i, i] for i in range(n)) if n else BitVector(0)

    def is_identity(self) -> bool:
        return self.rows == self.cols and self == BitMatrix.identity(self.rows)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return self.shape == other.shape and np.array_equal(self._words, other._words)

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self._words.tobytes()))

    def __repr__(self) -> str:
        body = "; ".join(str(self.row(i)) for i in range(self.rows))
        return f"BitMatrix({self.rows}x{self.cols}: {body})"


def rank(a: BitMatrix) -> int:
    """Row rank over GF(2)."""
    if a.rows == 0 or a.cols == 0:
        return 0
    _, pivots = kernels.rref(np.array(a.words), a.cols)
    return len(pivots)


@dataclass(frozen=True)
class AffineSolution:
    """All solutions of ``A v = rhs``: ``particular + span(nullspace)``."""

    matrix: BitMatrix
    rhs: BitVector
    particular: BitVector
    nullspace: tuple[BitVector, ...]

    @property
    def dimension(self) -> int:
        return len(self.nullspace)

    @property
    def count(self) -> int:
        return 1 << len(self.nullspace)

    def __contains__(self, v: BitVector) -> bool:
        return self.matrix @ v == self.rhs

    def __iter__(self) -> Iterator[BitVector]:
        for coeffs in itertools.product((0, 1), repeat=len(self.nullspace)):
            v = self.particular
            for c, n in zip(coeffs, self.nullspace):
                if c:
                    v = v + n
            yield v


def _rref_augmented(a: BitMatrix, rhs: BitVector):
    n = a.cols
    nw = _nwords(n + 1)
    words = np.zeros((a.rows, nw), dtype=np.uint64)
    for i in range(a.rows):
        words[i] = BitVector(n + 1, a.row(i).bits | (rhs[i] << n)).words(nw)
    reduced, pivots = kernels.rref(words, n + 1)
    return [BitVector.from_words(n + 1, reduced[i]) for i in range(len(pivots))], [int(p) for p in pivots]


def nullspace(a: BitMatrix) -> list[BitVector]:
    """Basis of ``{v : A v = 0}``, one vector per free column, in column order."""
    sol = solve_affine(a, BitVector.zeros(a.rows))
    assert sol is not None
    return list(sol.nullspace)


def solve_affine(a: BitMatrix, rhs: BitVector) -> AffineSolution | None:
    """Solve ``A v = rhs`` over GF(2); ``None`` when the system is inconsistent.

    The particular solution sets every free variable to zero; the nullspace
    basis has one vector per free column (that column set, pivots filled in).
    Both are deterministic for a given matrix.
    """
    if not isinstance(rhs, BitVector):
        raise TypeError("rhs must be a BitVector")
    if rhs.length != a.rows:
        raise ValueError(f"rhs has length {rhs.length}, matrix has {a.rows} rows")
    n = a.cols
    if a.rows == 0:
        basis = tuple(BitVector.unit(n, j) for j in range(n))
        return AffineSolution(a, rhs, BitVector.zeros(n), basis)
    rows, pivots = _rref_augmented(a, rhs)
    if pivots and pivots[-1] == n:
        return None
    particular = 0
    for row, p in zip(rows, pivots):
        if row[n]:
            particular |= 1 << p
    pivot_set = set(pivots)
    basis = []
    for f in range(n):
        if f in pivot_set:
            continue
        bits = 1 << f
        for row, p in zip(rows, pivots):
            if row[f]:
                bits |= 1 << p
        basis.append(BitVector(n, bits))
    return AffineSolution(a, rhs, BitVector(n, particular), tuple(basis))
