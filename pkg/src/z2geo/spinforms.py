"""Quadratic refinements of the mod-2 intersection pairing and spin tests."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterator, Sequence

from .gf2 import AffineSolution, BitMatrix, BitVector, solve_affine
from .surface import CurveClass, SurfaceModel


class Spin(enum.Enum):
    SPIN = "spin"
    NON_SPIN = "non-spin"
    UNKNOWN = "unknown"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class SpinVerdict:
    """A spin status together with the rule that produced it."""

    status: Spin
    note: str = ""

    def __str__(self) -> str:
        return f"{self.status}" + (f" ({self.note})" if self.note else "")


class W2Type(enum.Enum):
    I = "i"
    II = "ii"
    III = "iii"
    UNKNOWN = "unknown"

    def __str__(self) -> str:
        return self.value


def _status(s) -> Spin:
    return s.status if isinstance(s, SpinVerdict) else Spin(s)


def classify_w2(quotient, cover) -> W2Type:
    """w2-type from the spin status of a manifold and of its double cover."""
    q, c = _status(quotient), _status(cover)
    if q is Spin.SPIN and c is Spin.NON_SPIN:
        raise ValueError("a spin manifold cannot have a non-spin double cover")
    if Spin.UNKNOWN in (q, c):
        return W2Type.UNKNOWN
    if q is Spin.SPIN:
        return W2Type.II
    return W2Type.III if c is Spin.SPIN else W2Type.I


@dataclass(frozen=True)
class QuadraticForm:
    """q on H_1(Sigma; Z_2), stored by q(x_1), q(y_1), ..., q(x_g), q(y_g)."""

    surface: SurfaceModel
    basis_values: BitVector

    def __post_init__(self):
        if self.basis_values.length != self.surface.dim:
            raise ValueError("need one value per basis class")

    @classmethod
    def from_values(cls, surface: SurfaceModel, ones: Sequence[str]) -> QuadraticForm:
        """Form taking the value one exactly on the listed basis labels."""
        bits = 0
        for label in ones:
            bits |= 1 << surface.index(label)
        return cls(surface, BitVector(surface.dim, bits))

    def __call__(self, v) -> int:
        return evaluate(self, v)

    def describe(self) -> str:
        labels = self.surface.labels
        ones = [labels[i] for i in range(len(labels)) if self.basis_values[i]]
        zeros = [labels[i] for i in range(len(labels)) if not self.basis_values[i]]
        parts = []
        if ones:
            parts.append("=".join(f"q({s})" for s in ones) + "=1")
        if zeros:
            parts.append("=".join(f"q({s})" for s in zeros) + "=0")
        return ", ".join(parts)


def _cross_terms(bits: int, genus: int) -> int:
    # sum over i<j of v_i v_j <e_i, e_j>: only the (x_k, y_k) pairs contribute
    even = int("01" * genus, 2) if genus else 0
    return (bits & (bits >> 1) & even).bit_count() & 1


def evaluate(q: QuadraticForm, v) -> int:
    """q(v) via q(u + w) = q(u) + q(w) + u.w expanded over the basis."""
    w = q.surface.vector(v)
    return ((w.bits & q.basis_values.bits).bit_count() + _cross_terms(w.bits, q.surface.genus)) & 1


@dataclass(frozen=True)
class SpinFormSolution:
    """Every quadratic form taking the value one on a list of cycles."""

    surface: SurfaceModel
    affine: AffineSolution

    @property
    def constraint_rank(self) -> int:
        return self.surface.dim - self.affine.dimension

    @property
    def dimension(self) -> int:
        return self.affine.dimension

    @property
    def count(self) -> int:
        return self.affine.count

    @property
    def witness(self) -> QuadraticForm:
        return QuadraticForm(self.surface, self.affine.particular)

    def __contains__(self, q: QuadraticForm) -> bool:
        return q.surface.genus == self.surface.genus and q.basis_values in self.affine

    def __iter__(self) -> Iterator[QuadraticForm]:
        return (QuadraticForm(self.surface, v) for v in self.affine)


def constraint_system(cycles: Sequence[CurveClass]) -> tuple[BitMatrix, BitVector]:
    """Linear system in the basis values whose solutions satisfy q(c) = 1 for each cycle."""
    if not cycles:
        raise ValueError("need at least one cycle (or pass the surface explicitly)")
    surface = cycles[0].surface
    rhs = 0
    for i, c in enumerate(cycles):
        if c.surface.genus != surface.genus:
            raise ValueError("cycles live on different surfaces")
        rhs |= (1 ^ _cross_terms(c.vector.bits, surface.genus)) << i
    a = BitMatrix.from_rows([c.vector for c in cycles], cols=surface.dim)
    return a, BitVector(len(cycles), rhs)


def find_spin_form(cycles: Sequence[CurveClass], surface: SurfaceModel | None = None) -> SpinFormSolution | None:
    """All q with q(c) = 1 on every vanishing cycle, or ``None`` if there is none.

    For a Lefschetz fibration over the disk, ``None`` means the total space
    is not spin.
    """
    if not cycles:
        if surface is None:
            raise ValueError("an empty cycle list needs an explicit surface")
        a = BitMatrix(0, surface.dim)
        return SpinFormSolution(surface, solve_affine(a, BitVector(0)))
    surface = surface or cycles[0].surface
    if surface.genus == 0:
        raise ValueError("a genus-0 fiber carries no quadratic-form constraints")
    a, rhs = constraint_system(cycles)
    sol = solve_affine(a, rhs)
    return None if sol is None else SpinFormSolution(surface, sol)


def mod2_even_type(m: BitMatrix) -> bool:
    """Whether a symmetric mod-2 intersection form admits an all-even basis.

    Over Z_2, ``v -> v^T M v`` is linear for symmetric M, so this is exactly
    the vanishing of the diagonal (and then every class has even square).
    """
    if not m.is_symmetric():
        raise ValueError("intersection forms are symmetric")
    return m.diagonal().is_zero()


def rokhlin_gate(sigma: int) -> bool:
    """False certifies that a closed smooth manifold with this signature is not spin."""
    return sigma % 16 == 0


__all__ = [
    "QuadraticForm",
    "Spin",
    "SpinFormSolution",
    "SpinVerdict",
    "W2Type",
    "classify_w2",
    "constraint_system",
    "evaluate",
    "find_spin_form",
    "mod2_even_type",
    "rokhlin_gate",
]
