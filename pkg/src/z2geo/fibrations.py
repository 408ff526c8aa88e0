"""Positive factorizations and Lefschetz fibrations, checked in mod-2 homology.

A word lists its twists in the order they are applied (``t_{c_1}`` first).
Nothing here can certify a mapping-class identity; relation checks are
necessary conditions only and their reports say so.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Sequence

from .gf2 import BitMatrix
from .spinforms import Spin, SpinVerdict, find_spin_form, rokhlin_gate
from .surface import CurveClass, SurfaceModel, chain_classes, pairing, transvect, word_action

MOD2_CAVEAT = (
    "mod-2 homology check only: a necessary condition, "
    "it cannot certify the relation in the mapping class group"
)


class BaseKind(enum.Enum):
    DISK = "disk"
    SPHERE = "sphere"
    SURFACE = "surface"


@dataclass(frozen=True)
class Base:
    kind: BaseKind
    genus: int = 0

    @classmethod
    def disk(cls) -> Base:
        return cls(BaseKind.DISK)

    @classmethod
    def sphere(cls) -> Base:
        return cls(BaseKind.SPHERE)

    @classmethod
    def closed_surface(cls, h: int) -> Base:
        return cls(BaseKind.SPHERE) if h == 0 else cls(BaseKind.SURFACE, h)

    @property
    def closed(self) -> bool:
        return self.kind is not BaseKind.DISK

    def __str__(self) -> str:
        return {BaseKind.DISK: "D^2", BaseKind.SPHERE: "S^2"}.get(self.kind, f"Sigma_{self.genus}")


@dataclass(frozen=True)
class Factorization:
    """An ordered Dehn-twist word, with the caller's claim about its product.

    ``boundary_twists == 0`` claims the identity of the closed surface;
    ``k > 0`` claims a product of ``k`` boundary twists.
    """

    surface: SurfaceModel
    twists: tuple[CurveClass, ...]
    boundary_twists: int = 0

    def __post_init__(self):
        object.__setattr__(self, "twists", tuple(self.twists))
        for c in self.twists:
            if c.surface.genus != self.surface.genus:
                raise ValueError("every twist must live on the factorization's surface")
        if self.boundary_twists < 0:
            raise ValueError("boundary_twists must be non-negative")

    def __len__(self) -> int:
        return len(self.twists)

    def __add__(self, other: Factorization) -> Factorization:
        if other.surface.genus != self.surface.genus:
            raise ValueError("different surfaces")
        return Factorization(self.surface, self.twists + other.twists, self.boundary_twists + other.boundary_twists)

    @property
    def claimed_target(self) -> str:
        if self.boundary_twists == 0:
            return "IdentityClosed"
        return f"BoundaryMultitwist({self.boundary_twists})"

    def power(self, k: int) -> Factorization:
        return Factorization(self.surface, self.twists * k, self.boundary_twists * k)


@dataclass(frozen=True)
class LefschetzFibration:
    genus: int
    base: Base
    factorization: Factorization
    sections: tuple[int, ...] = ()
    name: str = ""
    notes: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        object.__setattr__(self, "sections", tuple(self.sections))
        if self.factorization.surface.genus != self.genus:
            raise ValueError("factorization genus differs from fiber genus")

    @property
    def vanishing_cycles(self) -> tuple[CurveClass, ...]:
        return self.factorization.twists


@dataclass(frozen=True)
class RelationReport:
    passes: bool
    word_length: int
    caveat: str = MOD2_CAVEAT


def total_h1_action(f: Factorization) -> BitMatrix:
    """Product of the twist matrices over the word, first twist applied first."""
    return word_action(f.surface, f.twists)


def verify_relation_mod2(f: Factorization) -> RelationReport:
    # boundary twists act trivially on H_1 of the capped surface, so every
    # claimed target has identity action on the genus part
    return RelationReport(total_h1_action(f).is_identity(), len(f))


def hurwitz_move(f: Factorization, i: int, direction: str = "right") -> Factorization:
    """Elementary Hurwitz move on the adjacent pair at positions ``i, i+1`` (1-based).

    ``right`` sends ``(a, b)`` to ``(b, t_b(a))``; ``left`` is its inverse,
    ``(a, b) -> (t_a(b), a)``. Both keep the total action.
    """
    n = len(f)
    if not 1 <= i < n:
        raise IndexError(f"position {i} out of range for a word of length {n}")
    a, b = f.twists[i - 1], f.twists[i]
    if direction == "right":
        pair = (b, CurveClass(f.surface, transvect(b, a)))
    elif direction == "left":
        pair = (CurveClass(f.surface, transvect(a, b)), a)
    else:
        raise ValueError("direction must be 'right' or 'left'")
    twists = f.twists[: i - 1] + pair + f.twists[i + 1 :]
    return replace(f, twists=twists)


def euler_char(lf: LefschetzFibration) -> int:
    """e = e(fiber) e(base) + number of singular fibers (disk base counts as e = 1)."""
    e_fiber = 2 - 2 * lf.genus
    if lf.base.kind is BaseKind.DISK:
        e_base = 1
    else:
        e_base = 2 - 2 * lf.base.genus
    return e_fiber * e_base + len(lf.factorization)


class InvalidFibration(ValueError):
    pass


def endo_signature(lf: LefschetzFibration, hyperelliptic_asserted: bool = False) -> int:
    """Signature of a hyperelliptic fibration over the sphere with no separating cycles.

    Each nonseparating vanishing cycle contributes ``-(g+1)/(2g+1)``.
    """
    if not hyperelliptic_asserted:
        raise ValueError("the signature formula needs the caller to assert hyperellipticity")
    if lf.base.kind is not BaseKind.SPHERE:
        raise ValueError("the signature formula here is for fibrations over S^2")
    if any(c.is_separating for c in lf.vanishing_cycles):
        raise NotImplementedError("separating vanishing cycles are not supported")
    g = lf.genus
    sigma = Fraction(-len(lf.factorization) * (g + 1), 2 * g + 1)
    if sigma.denominator != 1:
        raise InvalidFibration(f"non-integral signature {sigma} for {len(lf.factorization)} cycles in genus {g}")
    return int(sigma)


def spin_status_closed(lf: LefschetzFibration) -> SpinVerdict:
    """Spin verdict for a fibration over the sphere from its cycles and sections."""
    if lf.base.kind is not BaseKind.SPHERE:
        raise ValueError("closed spin criterion implemented for S^2 bases only")
    if not verify_relation_mod2(lf.factorization).passes:
        raise ValueError("the word does not close up (mod-2 action is not the identity)")
    odd = [s for s in lf.sections if s % 2]
    if odd:
        return SpinVerdict(Spin.NON_SPIN, f"section of odd square {odd[0]}")
    if not lf.vanishing_cycles:
        disk_spin = True
    elif lf.genus == 0:
        disk_spin = False
    else:
        disk_spin = find_spin_form(lf.vanishing_cycles) is not None
    even = [s for s in lf.sections if s % 2 == 0]
    if disk_spin and even and lf.genus <= 2:
        # every genus <= 2 fibration is hyperelliptic, so the signature is known
        sigma = endo_signature(lf, hyperelliptic_asserted=True)
        if not rokhlin_gate(sigma):
            return SpinVerdict(Spin.UNKNOWN, f"signature {sigma} fails Rokhlin's congruence")
    if disk_spin and even:
        return SpinVerdict(Spin.SPIN, f"quadratic form on the fiber and section of even square {even[0]}")
    if not disk_spin:
        return SpinVerdict(Spin.UNKNOWN, "no quadratic form is 1 on all vanishing cycles, fiber complement not spin")
    return SpinVerdict(Spin.UNKNOWN, "fiber complement spin but no even dual to the fiber recorded")


def spin_over_disk(lf: LefschetzFibration) -> bool:
    """Whether the fibration restricted to the complement of a regular fiber is spin."""
    if not lf.vanishing_cycles:
        return True
    return find_spin_form(lf.vanishing_cycles, lf.factorization.surface) is not None


DOUBLE_CAVEAT = (
    "the fiber-reversing reflection is modelled as the identity on mod-2 homology; "
    "the mapping-class equality of the doubled word is not verified"
)


def double_along_fiber(lf: LefschetzFibration) -> LefschetzFibration:
    """Fiber-reversing double: the word followed by its (mod-2 trivial) reflection."""
    if lf.base.kind is not BaseKind.SPHERE:
        raise ValueError("doubling is defined for fibrations over S^2")
    if not lf.sections:
        raise ValueError("doubling needs a section to fix the gluing")
    f = lf.factorization
    word = Factorization(f.surface, f.twists + f.twists, 2 * f.boundary_twists)
    return LefschetzFibration(
        lf.genus,
        lf.base,
        word,
        tuple(2 * s for s in lf.sections),
        name=f"double({lf.name})" if lf.name else "double",
        notes=lf.notes + (DOUBLE_CAVEAT,),
    )


# catalog -------------------------------------------------------------------


def chain_word(g: int, length: int, exponent: int) -> Factorization:
    """``(t_{c_1} ... t_{c_length})^exponent`` on Sigma_g."""
    chain = chain_classes(g)
    if not 1 <= length <= 2 * g + 1:
        raise ValueError(f"chain length {length} exceeds the maximal chain in genus {g}")
    boundaries = 1 if length % 2 == 0 else 2
    return Factorization(chain[0].surface, tuple(chain[:length]), boundaries).power(exponent)


def hyperelliptic_word(g: int) -> Factorization:
    """``h = t_{c_1} ... t_{c_{2g+1}} t_{c_{2g+1}} ... t_{c_1}`` (length 4g+2)."""
    chain = chain_classes(g)
    return Factorization(chain[0].surface, tuple(chain) + tuple(reversed(chain)))


def elliptic_word(n: int) -> Factorization:
    s = SurfaceModel(1)
    return Factorization(s, (s.basis("x1"), s.basis("y1")) * (6 * n))


def _chain_fibration(name, g, length, exponent, sections):
    return LefschetzFibration(g, Base.sphere(), chain_word(g, length, exponent), sections, name=name)


_NAME = re.compile(r"^\s*([A-Za-z]+\w*?)\s*(?:\(\s*(\d+)\s*\)|\s+(\d+))?\s*$")


def parse_fibration_name(name: str, param: int | None = None) -> tuple[str, int | None]:
    """Split ``"E(3)"``, ``"Xg 3"`` or ``("Xg", 3)`` into a key and parameter."""
    m = _NAME.match(name)
    if not m:
        raise KeyError(f"unknown fibration {name!r}")
    key = m.group(1)
    value = m.group(2) or m.group(3)
    if value is not None:
        if param is not None and int(value) != param:
            raise ValueError("parameter given twice")
        param = int(value)
    return key, param


def catalog_fibration(name: str, param: int | None = None) -> LefschetzFibration:
    """The named fibrations used by the constructions.

    ``ChainG2``, ``ChainG3``, ``ChainG4`` are the chain-relation fibrations,
    ``Xg`` (genus g >= 2) the hyperelliptic ``h^2`` fibration on
    CP^2 # (4g+5) CP^2-bar and ``E`` (n >= 1) the elliptic surface E(n).
    """
    key, p = parse_fibration_name(name, param)
    if key == "ChainG2" and p is None:
        return _chain_fibration("ChainG2", 2, 4, 10, (-1,))
    if key == "ChainG3" and p is None:
        return _chain_fibration("ChainG3", 3, 7, 8, (-1, -1))
    if key == "ChainG4" and p is None:
        return _chain_fibration("ChainG4", 4, 8, 18, (-1,))
    if key in ("Xg", "X") and p is not None:
        if p < 2:
            raise ValueError("X_g needs g >= 2")
        word = hyperelliptic_word(p).power(2)
        return LefschetzFibration(p, Base.sphere(), word, (-1,) * (4 * p + 4), name=f"Xg({p})")
    if key == "E" and p is not None:
        if p < 1:
            raise ValueError("E(n) needs n >= 1")
        return LefschetzFibration(1, Base.sphere(), elliptic_word(p), (-p,), name=f"E({p})")
    raise KeyError(f"unknown fibration {name!r}" + (f" with parameter {param}" if param is not None else ""))


CATALOG_NAMES = ("ChainG2", "ChainG3", "ChainG4", "Xg", "E")


def is_consecutive_chain(cycles: Sequence[CurveClass]) -> bool:
    """Consecutive classes meet once, others are disjoint (mod 2)."""
    return all(
        pairing(cycles[i], cycles[j]) == (1 if abs(i - j) == 1 else 0)
        for i in range(len(cycles))
        for j in range(len(cycles))
    )
