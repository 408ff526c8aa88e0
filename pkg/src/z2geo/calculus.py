"""Invariant bookkeeping for closed 4-manifolds built by cut-and-paste.

Descriptors carry (e, sigma) exactly and everything else (fundamental
group, spin, irreducibility) as caller assertions with provenance notes.
The operations only combine assertions; they never compute pi_1.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable

from .spinforms import Spin, W2Type, classify_w2, mod2_even_type, rokhlin_gate
from .gf2 import BitMatrix

FLAGS = frozenset(
    {
        "complement_simply_connected",  # X - nu(Sigma) has pi_1 = 1
        "complement_spin",  # X - nu(Sigma) is spin, so the double is
        "spin_gluing",  # fiber sum glued by a spin-compatible map
        "dual_torus",  # torus has a dual surface, surgery keeps spin
        "luttinger",  # Luttinger surgery, keeps symplectic
        "fibered_knot",  # knot surgery with a fibered knot, keeps symplectic
        "odd_rp2",  # an RP^2 of odd square survives in the result
        "minimal_cover",  # irreducibility asserted via the universal cover
        "simply_connected",  # result asserted simply connected
    }
)


class RokhlinViolation(ValueError):
    """A closed smooth spin 4-manifold must have signature divisible by 16."""


class Pi1(enum.Enum):
    TRIVIAL = "1"
    Z2 = "Z2"
    OTHER = "other"
    UNKNOWN = "unknown"

    def __str__(self) -> str:
        return self.value

    @property
    def finite(self) -> bool:
        return self in (Pi1.TRIVIAL, Pi1.Z2)


def check_flags(flags: Iterable[str]) -> frozenset[str]:
    flags = frozenset(flags)
    bad = sorted(flags - FLAGS)
    if bad:
        raise ValueError(f"unknown flag(s) {', '.join(bad)}; allowed: {', '.join(sorted(FLAGS))}")
    return flags


@dataclass(frozen=True)
class ManifoldDescriptor:
    name: str
    e: int
    sigma: int
    b1: int = 0
    pi1: Pi1 = Pi1.UNKNOWN
    spin: Spin = Spin.UNKNOWN
    symplectic: bool = False
    irreducible: str | None = None  # reason, or None when unknown
    cover_spin: Spin = Spin.UNKNOWN  # spin status of the universal double cover (pi1 = Z2)
    pi1_tag: str = ""
    notes: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if self.b1 < 0:
            raise ValueError("b1 must be non-negative")
        if self.b1 == 0 and (self.e - self.sigma) % 2:
            raise ValueError(f"{self.name}: e and sigma must have equal parity when b1 = 0")
        if self.spin is Spin.SPIN and not rokhlin_gate(self.sigma):
            raise RokhlinViolation(f"{self.name}: spin with sigma = {self.sigma}, not divisible by 16")
        if self.cover_spin is Spin.SPIN and not rokhlin_gate(2 * self.sigma):
            raise RokhlinViolation(f"{self.name}: spin double cover with sigma = {2 * self.sigma}")
        if self.spin is Spin.SPIN and self.cover_spin is Spin.NON_SPIN:
            raise ValueError(f"{self.name}: a spin manifold has spin covers")
        if self.spin is Spin.SPIN and self.cover_spin is Spin.UNKNOWN:
            object.__setattr__(self, "cover_spin", Spin.SPIN)
        if self.irreducible is None:
            reason = _irreducibility(self)
            if reason:
                object.__setattr__(self, "irreducible", reason)

    @property
    def w2_type(self) -> W2Type | None:
        if self.pi1 is not Pi1.Z2:
            return None
        return classify_w2(self.spin, self.cover_spin)

    @property
    def b2(self) -> int:
        return self.e - 2 + 2 * self.b1

    def form(self) -> EvenForm:
        if self.b1:
            raise ValueError(f"{self.name}: forms are computed for b1 = 0 only")
        return form_from_invariants(self.e, self.sigma, self.pi1)

    def with_notes(self, *notes: str) -> ManifoldDescriptor:
        return replace(self, notes=self.notes + notes)

    def __str__(self) -> str:
        parts = [f"{self.name}: e={self.e}, sigma={self.sigma}", f"pi1={self.pi1}", f"spin={self.spin}"]
        if self.pi1 is Pi1.Z2:
            parts.append(f"cover spin={self.cover_spin}")
            parts.append(f"w2-type={self.w2_type}")
        parts.append("symplectic" if self.symplectic else "not known symplectic")
        parts.append(f"irreducible ({self.irreducible})" if self.irreducible else "irreducibility unknown")
        return ", ".join(parts)


def _irreducibility(d: ManifoldDescriptor) -> str | None:
    if d.symplectic and d.spin is Spin.SPIN and d.pi1.finite:
        return "symplectic and spin with finite fundamental group"
    if "asserted: minimal_cover" in d.notes and d.pi1.finite:
        return "universal cover asserted irreducible"
    return None


def _provenance(op: str, flags: frozenset[str]) -> tuple[str, ...]:
    return (op,) + tuple(f"asserted: {f}" for f in sorted(flags))


# operations ----------------------------------------------------------------


def fiber_sum(d1: ManifoldDescriptor, d2: ManifoldDescriptor, g: int, flags: Iterable[str] = (), name: str | None = None) -> ManifoldDescriptor:
    """Sum along square-zero genus-g surfaces.

    Uses e = e1 + e2 + 4g - 4 (remove two copies of Sigma_g x D^2, glue along
    Sigma_g x S^1); signatures add.
    """
    if g < 0:
        raise ValueError("genus must be non-negative")
    flags = check_flags(flags)
    spin = Spin.SPIN if d1.spin is Spin.SPIN and d2.spin is Spin.SPIN and "spin_gluing" in flags else Spin.UNKNOWN
    return ManifoldDescriptor(
        name or f"({d1.name} #_{g} {d2.name})",
        d1.e + d2.e + 4 * g - 4,
        d1.sigma + d2.sigma,
        pi1=Pi1.TRIVIAL if "simply_connected" in flags else Pi1.UNKNOWN,
        spin=spin,
        symplectic=d1.symplectic and d2.symplectic,
        notes=_provenance(f"fiber sum of {d1.name} and {d2.name} along genus {g}", flags),
    )


def _double_spin(d: ManifoldDescriptor, flags: frozenset[str]) -> Spin:
    return Spin.SPIN if d.spin is Spin.SPIN or "complement_spin" in flags else Spin.UNKNOWN


def z2_double(d: ManifoldDescriptor, g: int, flags: Iterable[str] = (), name: str | None = None) -> ManifoldDescriptor:
    """Double of X - nu(Sigma_g) glued by the free orientation-reversing involution."""
    flags = check_flags(flags)
    return ManifoldDescriptor(
        name or f"D({d.name})",
        2 * d.e + 4 * g - 4,
        2 * d.sigma,
        pi1=Pi1.TRIVIAL if "complement_simply_connected" in flags or "simply_connected" in flags else Pi1.UNKNOWN,
        spin=_double_spin(d, flags),
        notes=_provenance(f"double of {d.name} along genus {g}", flags),
    )


def _quotient_spin(sigma: int, base_spin: Spin, flags: frozenset[str], name: str) -> Spin:
    obstructed = not rokhlin_gate(sigma) or "odd_rp2" in flags
    if base_spin is Spin.SPIN and obstructed:
        if "odd_rp2" in flags:
            raise ValueError(f"{name}: spin asserted together with an odd-square RP^2")
        raise RokhlinViolation(f"{name}: spin with sigma = {sigma}, not divisible by 16")
    if obstructed:
        return Spin.NON_SPIN
    return base_spin


def z2_quotient(d: ManifoldDescriptor, g: int | None = None, flags: Iterable[str] = (), name: str | None = None) -> ManifoldDescriptor:
    """Quotient of a free orientation-preserving involution on ``d``."""
    flags = check_flags(flags)
    if d.e % 2 or d.sigma % 2:
        raise ValueError(f"{d.name}: quotient needs even e and sigma, got ({d.e}, {d.sigma})")
    sigma = d.sigma // 2
    label = name or f"{d.name}/Z2"
    return ManifoldDescriptor(
        label,
        d.e // 2,
        sigma,
        pi1=Pi1.Z2 if d.pi1 is Pi1.TRIVIAL else Pi1.UNKNOWN,
        spin=_quotient_spin(sigma, Spin.UNKNOWN, flags, label),
        cover_spin=d.spin if d.pi1 is Pi1.TRIVIAL else Spin.UNKNOWN,
        notes=_provenance(f"free Z2 quotient of {d.name}", flags),
    )


def z2_construct(d: ManifoldDescriptor, g: int, flags: Iterable[str] = (), name: str | None = None) -> ManifoldDescriptor:
    """Quotient of the double along Sigma_g by the swap: (e, sigma) -> (e + 2g - 2, sigma)."""
    flags = check_flags(flags)
    label = name or f"Z2({d.name})"
    scc = "complement_simply_connected" in flags
    base = Spin.SPIN if d.spin is Spin.SPIN and scc else Spin.UNKNOWN
    cover = _double_spin(d, flags) if scc else Spin.UNKNOWN
    return ManifoldDescriptor(
        label,
        d.e + 2 * g - 2,
        d.sigma,
        pi1=Pi1.Z2 if scc else Pi1.UNKNOWN,
        spin=_quotient_spin(d.sigma, base, flags, label),
        cover_spin=cover,
        notes=_provenance(f"Z2-construction on {d.name} along genus {g}", flags),
    )


def torus_surgery(d: ManifoldDescriptor, flags: Iterable[str] = (), name: str | None = None) -> ManifoldDescriptor:
    """Luttinger or knot surgery on a square-zero torus; e and sigma are unchanged."""
    flags = check_flags(flags)
    keeps_symplectic = "luttinger" in flags or "fibered_knot" in flags
    return ManifoldDescriptor(
        name or f"{d.name}_T",
        d.e,
        d.sigma,
        b1=d.b1,
        pi1=Pi1.TRIVIAL if "simply_connected" in flags else Pi1.UNKNOWN,
        spin=d.spin if "dual_torus" in flags and d.spin is Spin.SPIN else Spin.UNKNOWN,
        symplectic=d.symplectic and keeps_symplectic,
        notes=_provenance(f"torus surgery on {d.name}", flags),
    )


# intersection forms ----------------------------------------------------------


@dataclass(frozen=True, order=True)
class EvenForm:
    """a(-E8) + bH, stored with sigma <= 0; ``flipped`` records an orientation reversal."""

    a: int
    b: int
    flipped: bool = field(default=False, compare=False)

    def __post_init__(self):
        if self.a < 0 or self.b < 0:
            raise ValueError("block counts must be non-negative")

    def __iter__(self):
        return iter((self.a, self.b))

    def __str__(self) -> str:
        text = f"{self.a}(-E8) + {self.b}H"
        return text + " (orientation reversed)" if self.flipped else text


def form_from_invariants(e: int, sigma: int, pi1: Pi1 | str = Pi1.TRIVIAL) -> EvenForm:
    pi1 = Pi1(pi1) if isinstance(pi1, str) else pi1
    if not pi1.finite:
        raise ValueError(f"need pi1 trivial or Z2 to read off the form, got {pi1}")
    if sigma % 8:
        raise ValueError(f"sigma = {sigma} is not divisible by 8, so the form is not even")
    flipped = sigma > 0
    sigma = -abs(sigma)
    twice_b = e - 2 + sigma
    if twice_b % 2 or twice_b < 0:
        raise ValueError(f"(e, sigma) = ({e}, {sigma}) gives b2+ = {Fraction(twice_b, 2)}")
    return EvenForm(-sigma // 8, twice_b // 2, flipped)


@dataclass(frozen=True)
class FormInvariants:
    e: int
    sigma: int
    b2_plus: int
    b2_minus: int
    c1_squared: int
    chi_h: Fraction


def invariants_from_form(n: int, l: int) -> FormInvariants:
    """Invariants of a simply connected or pi1 = Z2 manifold with form n(-E8) + lH."""
    if n < 0 or l < 0:
        raise ValueError("block counts must be non-negative")
    e = 2 + 2 * l + 8 * n
    sigma = -8 * n
    return FormInvariants(e, sigma, l, l + 8 * n, 2 * e + 3 * sigma, Fraction(1 + l, 2))


def double_cover_form(a: int, b: int) -> EvenForm:
    """Form of the universal double cover of a pi1 = Z2 manifold with form a(-E8) + bH."""
    if a < 0 or b < 0:
        raise ValueError("block counts must be non-negative")
    return EvenForm(2 * a, 2 * b + 1)


# building blocks -------------------------------------------------------------

HYPERBOLIC = BitMatrix.from_rows([[0, 1], [1, 0]])
ODD_Z2_FORM = BitMatrix.from_rows([[0, 1], [1, 1]])


def _simple(name, e, sigma, *, spin, symplectic=True, pi1=Pi1.TRIVIAL, note, **kw):
    return ManifoldDescriptor(name, e, sigma, pi1=pi1, spin=spin, symplectic=symplectic, notes=(note,), **kw)


def _need(params, key, low):
    if key not in params:
        raise ValueError(f"missing parameter {key}")
    v = params[key]
    if not isinstance(v, int) or isinstance(v, bool) or v < low:
        raise ValueError(f"parameter {key} must be an integer >= {low}, got {v!r}")
    return v


def _fibration_block(name: str, param: int | None = None) -> ManifoldDescriptor:
    from .fibrations import catalog_fibration, endo_signature, euler_char, spin_status_closed

    lf = catalog_fibration(name, param)
    verdict = spin_status_closed(lf)
    return ManifoldDescriptor(
        lf.name,
        euler_char(lf),
        endo_signature(lf, hyperelliptic_asserted=True),
        pi1=Pi1.TRIVIAL,
        spin=verdict.status,
        symplectic=True,
        notes=(
            f"Lefschetz fibration {lf.name}: {len(lf.factorization)} vanishing cycles, sections {list(lf.sections)}",
            f"spin: {verdict.note}",
            "pi1 = 1 asserted: the vanishing cycles normally generate pi1 of the fiber and there is a section",
        ),
    )


BLOCK_PARAMS = {
    "E": ("n",),
    "E2K": (),
    "W": (),
    "M": ("n", "s"),
    "M'": ("n", "s"),
    "Z": ("n",),
    "Z'": ("m",),
    "calZ": ("n",),
    "Zmn": ("m", "n"),
    "U": ("n", "s"),
    "L2": (),
    "L2'": (),
    "ChainG2": (),
    "ChainG3": (),
    "ChainG4": (),
    "X": ("g",),
}


def catalog_block(name: str, **params: int) -> ManifoldDescriptor:
    """Descriptor for a named building block.

    ``E(n)`` elliptic surfaces (``n >= 0``, ``E(0) = T^2 x S^2``), ``E2K`` the
    knot-surgered K3, ``W`` the spin genus-2 summing block, ``M``/``M'`` the
    spin symplectic families M_n(s), M'_n(s), ``Z``/``Z'``/``calZ`` the
    sigma = 0 blocks, ``Zmn``, ``U`` (U_{n,s}), the rational homology spheres
    ``L2``/``L2'`` and the fibration blocks ``ChainG2..4`` and ``X`` (X_g).
    """
    if name not in BLOCK_PARAMS:
        raise KeyError(f"unknown block {name!r}; known: {', '.join(BLOCK_PARAMS)}")
    extra = set(params) - set(BLOCK_PARAMS[name])
    if extra:
        raise ValueError(f"block {name} takes parameters {BLOCK_PARAMS[name]}, got extra {sorted(extra)}")
    if name == "E":
        n = _need(params, "n", 0)
        if n == 0:
            return ManifoldDescriptor("E(0)", 0, 0, b1=2, pi1=Pi1.OTHER, pi1_tag="Z^2", spin=Spin.SPIN, symplectic=True, notes=("T^2 x S^2",))
        return _simple(f"E({n})", 12 * n, -8 * n, spin=Spin.SPIN if n % 2 == 0 else Spin.NON_SPIN, note="elliptic surface, even iff n even")
    if name == "E2K":
        return _simple("E(2)_K", 24, -16, spin=Spin.SPIN, note="knot surgery on a fiber of E(2) with a fibered knot")
    if name == "W":
        return ManifoldDescriptor(
            "W", 0, 0, spin=Spin.SPIN, symplectic=True,
            notes=("e = sigma = 0 inferred from the two e = 0 summands glued along a torus; not stated directly",),
        )
    if name == "M":
        n, s = _need(params, "n", 0), _need(params, "s", 0)
        return _simple(f"M_{n}({s})", 24 * s + 4 * n + 24, -16 * s - 16, spin=Spin.SPIN, note="E(2)_K summed with E(2s), then n genus-2 sums with W")
    if name == "M'":
        n, s = _need(params, "n", 0), _need(params, "s", 0)
        return _simple(f"M'_{n}({s})", 24 * s + 4 * n + 48, -16 * s - 32, spin=Spin.SPIN, note="M_n(s) summed with a second copy of E(2)_K")
    if name == "Z":
        n = _need(params, "n", 5)
        return _simple(f"Z_{n}", 4 * n + 4, 0, spin=Spin.SPIN, note=f"irreducible copy of #{2 * n + 1} S^2 x S^2")
    if name == "Z'":
        m = _need(params, "m", 5)
        return _simple(f"Z'_{m}", 4 * m + 4, 0, spin=Spin.SPIN, pi1=Pi1.UNKNOWN, note="Z_m with the last Luttinger surgery left undone")
    if name == "calZ":
        n = _need(params, "n", 5)
        return _simple(f"calZ_{n}", 4 * n + 4, 0, spin=Spin.SPIN, pi1=Pi1.UNKNOWN, note="Lefschetz fibration underlying Z_n")
    if name == "Zmn":
        m, n = _need(params, "m", 1), _need(params, "n", 5)
        return _simple(f"Z_{m},{n}", 24 * m + 4 * n + 4, -16 * m, spin=Spin.SPIN, note="Luttinger surgeries on calZ_n summed with E(2m)")
    if name == "U":
        n, s = _need(params, "n", 0), _need(params, "s", 0)
        return _simple(f"U_{n},{s}", 24 * s + 4 * n + 36, -16 * s - 24, spin=Spin.NON_SPIN, note="M_n(s) summed with E(1) along a fiber")
    if name in ("L2", "L2'"):
        even = mod2_even_type(HYPERBOLIC if name == "L2" else ODD_Z2_FORM)
        return ManifoldDescriptor(
            name, 2, 0, pi1=Pi1.Z2,
            spin=Spin.SPIN if even else Spin.NON_SPIN,
            cover_spin=Spin.SPIN,
            notes=("free quotient of S^2 x S^2, a rational homology sphere", f"mod-2 form {'even' if even else 'odd'}"),
        )
    if name in ("ChainG2", "ChainG3", "ChainG4"):
        return _fibration_block(name)
    return _fibration_block("Xg", _need(params, "g", 2))
