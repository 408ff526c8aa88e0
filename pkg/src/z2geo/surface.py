"""Closed reference surfaces and their mod-2 first homology.

The basis of H_1(Sigma_g; Z_2) is ordered ``x_1, y_1, ..., x_g, y_g`` so that
``x_i`` sits at index ``2(i-1)`` and ``y_i`` at ``2(i-1)+1``. Curves are kept
only up to their homology class; boundary components carry no classes here.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import kernels
from .gf2 import BitMatrix, BitVector

_LABEL = re.compile(r"^([xyab])(\d+)$")


def _swap_pairs(bits: int, genus: int) -> int:
    even = int("01" * genus, 2) if genus else 0
    return ((bits & even) << 1) | ((bits >> 1) & even)


def symplectic_pairing(u: BitVector, v: BitVector) -> int:
    """The standard mod-2 intersection pairing on interleaved coordinates."""
    if u.length != v.length:
        raise ValueError(f"length mismatch: {u.length} vs {v.length}")
    if u.length % 2:
        raise ValueError("symplectic vectors have even length")
    return (u.bits & _swap_pairs(v.bits, u.length // 2)).bit_count() & 1


@dataclass(frozen=True)
class SurfaceModel:
    genus: int
    boundary_count: int = 0

    def __post_init__(self):
        if self.genus < 0 or self.boundary_count < 0:
            raise ValueError("genus and boundary_count must be non-negative")

    @property
    def dim(self) -> int:
        return 2 * self.genus

    @cached_property
    def labels(self) -> tuple[str, ...]:
        return tuple(f"{c}{i}" for i in range(1, self.genus + 1) for c in "xy")

    def index(self, label: str) -> int:
        m = _LABEL.match(label.strip())
        if not m:
            raise ValueError(f"bad basis label {label!r}")
        kind, i = m.group(1), int(m.group(2))
        if not 1 <= i <= self.genus:
            raise ValueError(f"{label!r} is not a basis class of a genus-{self.genus} surface")
        # a_i, b_i are accepted as synonyms of x_i, y_i
        return 2 * (i - 1) + (0 if kind in "xa" else 1)

    def zero(self) -> CurveClass:
        return CurveClass(self, BitVector.zeros(self.dim), "0")

    def basis(self, label: str) -> CurveClass:
        return CurveClass(self, BitVector.unit(self.dim, self.index(label)), label)

    def curve(self, expr: str, name: str | None = None) -> CurveClass:
        """Parse a sum of basis labels such as ``"x1+x2"``; ``"0"`` is the zero class."""
        bits = 0
        text = expr.replace(" ", "")
        if not text:
            raise ValueError("empty curve expression")
        if text != "0":
            for term in text.split("+"):
                bits ^= 1 << self.index(term)
        return CurveClass(self, BitVector(self.dim, bits), name)

    def vector(self, v: BitVector | CurveClass) -> BitVector:
        if isinstance(v, CurveClass):
            if v.surface.genus != self.genus:
                raise ValueError("curve lives on a different surface")
            return v.vector
        if v.length != self.dim:
            raise ValueError(f"vector length {v.length} does not match H_1 of genus {self.genus}")
        return v


@dataclass(frozen=True)
class CurveClass:
    """A simple closed curve, remembered by its mod-2 homology class."""

    surface: SurfaceModel
    vector: BitVector
    name: str | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.vector.length != self.surface.dim:
            raise ValueError("vector length does not match the surface")

    @property
    def is_separating(self) -> bool:
        return self.vector.is_zero()

    def __add__(self, other: CurveClass) -> CurveClass:
        _same_surface(self, other)
        return CurveClass(self.surface, self.vector + other.vector)

    def label(self) -> str:
        if self.vector.is_zero():
            return "0"
        return "+".join(self.surface.labels[i] for i in self.vector.support())

    def __str__(self) -> str:
        return self.name or self.label()


def _same_surface(u: CurveClass, v: CurveClass) -> None:
    if u.surface.genus != v.surface.genus:
        raise ValueError(f"curves on different surfaces (genus {u.surface.genus} vs {v.surface.genus})")


def pairing(u: CurveClass, v: CurveClass) -> int:
    """Algebraic intersection number mod 2."""
    _same_surface(u, v)
    return symplectic_pairing(u.vector, v.vector)


def chain_classes(g: int) -> list[CurveClass]:
    """Classes of the standard maximal chain ``c_1, ..., c_{2g+1}`` on Sigma_g.

    ``c_1 = x_1``, ``c_{2i} = y_i``, ``c_{2i+1} = x_i + x_{i+1}`` and
    ``c_{2g+1} = x_g``, so consecutive curves meet once and the odd curves
    satisfy ``c_1 + c_3 + ... + c_{2g+1} = 0``.
    """
    if g < 1:
        raise ValueError("chains need genus at least 1")
    s = SurfaceModel(g)
    out = [CurveClass(s, BitVector.unit(s.dim, 0), "c1")]
    for i in range(1, g + 1):
        out.append(CurveClass(s, BitVector.unit(s.dim, 2 * i - 1), f"c{2 * i}"))
        if i < g:
            bits = (1 << (2 * i - 2)) | (1 << (2 * i))
            out.append(CurveClass(s, BitVector(s.dim, bits), f"c{2 * i + 1}"))
    out.append(CurveClass(s, BitVector.unit(s.dim, 2 * g - 2), f"c{2 * g + 1}"))
    return out


def transvect(c: CurveClass, v: BitVector | CurveClass) -> BitVector:
    """Action of the Dehn twist about ``c`` on a class: ``v + <v, c> c``."""
    w = c.surface.vector(v)
    return w + c.vector.scale(symplectic_pairing(w, c.vector))


def twist_matrix(c: CurveClass) -> BitMatrix:
    """Matrix of :func:`transvect` in the standard basis (column j = image of e_j)."""
    n = c.surface.dim
    return BitMatrix.from_columns([transvect(c, BitVector.unit(n, j)) for j in range(n)], rows=n)


def word_action(surface: SurfaceModel, twists) -> BitMatrix:
    """Mod-2 action of a twist word (first twist applied first) as a matrix."""
    n = surface.dim
    if n == 0:
        return BitMatrix(0, 0)
    nw = max(1, (n + 63) // 64)
    basis = np.zeros((n, nw), dtype=np.uint64)
    for j in range(n):
        basis[j] = BitVector.unit(n, j).words(nw)
    word = np.zeros((len(twists), nw), dtype=np.uint64)
    for k, c in enumerate(twists):
        word[k] = surface.vector(c).words(nw)
    images = kernels.apply_transvections(basis, word) if len(twists) else basis
    # row j of ``images`` is the image of e_j, i.e. column j of the matrix
    return BitMatrix(n, n, images).transpose()
