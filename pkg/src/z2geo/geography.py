"""Geography of pi1 = Z2 manifolds with even forms a(-E8) + bH.

Coordinates are normalized form counts (a, b) with sigma <= 0. Every
construction family is an affine image of a product of arithmetic
progressions, so coverage is a union of painted lattice cones.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from itertools import product
from pathlib import Path
from typing import Callable, Iterable

import numpy as np

from . import constructions as C
from .kernels import paint_affine
from .recipes import Node, evaluate
from .spinforms import W2Type

DEFAULT_BOUNDS = (60, 130)
DEFAULT_MARGIN = 20
AUDIT_SPAN = 5


@dataclass(frozen=True)
class Param:
    symbol: str
    lower: int = 0
    step: int = 1
    condition: str = ""

    def values(self, count: int) -> range:
        return range(self.lower, self.lower + self.step * count, self.step)


@dataclass(frozen=True)
class Affine:
    const: int
    coefs: tuple[tuple[str, int], ...]

    def __call__(self, values: dict[str, int]) -> int:
        return self.const + sum(c * values[s] for s, c in self.coefs)

    def coef(self, symbol: str) -> int:
        return dict(self.coefs).get(symbol, 0)

    def __str__(self) -> str:
        terms = [(f"{c}{s}" if c != 1 else s) for s, c in self.coefs if c]
        if self.const or not terms:
            terms.append(str(self.const))
        return "+".join(terms)


def affine(const: int, **coefs: int) -> Affine:
    return Affine(const, tuple(coefs.items()))


@dataclass(frozen=True)
class GeographyFamily:
    name: str
    w2_type: W2Type
    b2plus_parity: str  # "even" or "odd"
    params: tuple[Param, ...]
    a_formula: Affine
    b_formula: Affine
    recipe: Callable[..., Node] = field(compare=False, repr=False)
    heading: str = ""
    discrepancy: str = ""

    def point(self, **values: int) -> tuple[int, int]:
        return self.a_formula(values), self.b_formula(values)

    def grid(self, span: int = AUDIT_SPAN) -> Iterable[dict[str, int]]:
        for combo in product(*(p.values(span + 1) for p in self.params)):
            yield dict(zip((p.symbol for p in self.params), combo))

    def formula(self) -> str:
        return f"({self.a_formula}, {self.b_formula})"

    def __str__(self) -> str:
        return self.name


def _p(*items) -> tuple[Param, ...]:
    return tuple(Param(*s) if isinstance(s, tuple) else Param(s) for s in items)


II, III = W2Type.II, W2Type.III
_ODD_E8 = "n odd"


def family_catalog() -> list[GeographyFamily]:
    """All construction families in normalized coordinates."""
    fams = [
        GeographyFamily("U_n(s)", II, "even", _p("n", "s"), affine(4, s=2), affine(8, s=4, n=2), C.u_family),
        GeographyFamily("Z2(Z_n) genus 2", II, "even", _p(("n", 5)), affine(0), affine(2, n=2), lambda n: C.sigma0_genus2(n)),
        GeographyFamily("Z2(Z_m,n) genus 2", II, "even", _p(("m", 1), ("n", 5)), affine(0, m=2), affine(2, m=4, n=2), C.z_mn_genus2),
        GeographyFamily("X_n,s", II, "odd", _p("n", "s"), affine(2, s=2), affine(3, s=4, n=2), C.m_torus),
        GeographyFamily("Z2(Z_m,n) torus", II, "odd", _p(("m", 1), ("n", 5)), affine(0, m=2), affine(1, m=4, n=2), C.z_mn_torus),
        GeographyFamily("Z2(Z_m) torus", II, "odd", _p(("m", 6)), affine(0), affine(1, m=2), C.sigma0_torus),
        GeographyFamily("Z2(M_n(s) + ChainG2)", III, "even", _p("n", "s"), affine(5, s=2), affine(10, s=4, n=2), C.chain_g2_with_m),
        GeographyFamily("Z2(Z'_m + ChainG2)", III, "even", _p(("m", 5)), affine(3), affine(8, m=2), C.chain_g2_with_z),
        GeographyFamily("M'_n(s) via ChainG4", III, "even", _p("n", "s"), affine(12, s=2), affine(32, s=4, n=2), C.chain_g4_with_m),
        GeographyFamily(
            "Z2(ChainG4 + Z'_m)", III, "even", _p(("m", 5)), affine(10), affine(28, m=2), C.chain_g4_with_z,
            heading="10(-E8)+(2m+28)H",
            discrepancy="the construction text gives 10(-E8)+(2m+30)H; arithmetic on the recipe agrees with 2m+30",
        ),
        GeographyFamily("U'_n,s", III, "odd", _p("n", "s"), affine(3, s=2), affine(5, s=4, n=2), C.e1_with_m),
        GeographyFamily("Y_n,m", III, "odd", _p(("n", 3, 2, _ODD_E8), ("m", 5)), affine(0, n=1), affine(1, n=2, m=2), C.elliptic_with_z),
        GeographyFamily("sigma = -8 line", III, "odd", _p(("m", 6)), affine(1), affine(3, m=2), C.sigma8_line),
        GeographyFamily("Z_n(s) via ChainG3", III, "odd", _p("n", "s"), affine(6, s=2), affine(13, s=4, n=2), C.chain_g3_with_m),
        GeographyFamily("Z2(X_2k+1) quotient", III, "odd", _p(("k", 1)), affine(1, k=1), affine(1, k=2), C.hyperelliptic_quotient),
        GeographyFamily("A_3,m", III, "odd", _p(("m", 5)), affine(2), affine(5, m=2), lambda m: C.hyperelliptic_with_z(3, m)),
        GeographyFamily("A_7,m", III, "odd", _p(("m", 5)), affine(4), affine(9, m=2), lambda m: C.hyperelliptic_with_z(7, m)),
    ]
    for f in fams:
        if not f.heading:
            object.__setattr__(f, "heading", f"{_wrap(f.a_formula)}(-E8)+{_wrap(f.b_formula)}H")
    return fams


def _wrap(expr: Affine) -> str:
    text = str(expr)
    return f"({text})" if "+" in text else text


def _parse_type(which) -> W2Type:
    if isinstance(which, W2Type):
        return which
    return W2Type(str(which).lower())


def _parities(parity: str) -> tuple[str, ...]:
    if parity == "both":
        return ("even", "odd")
    if parity not in ("even", "odd"):
        raise ValueError("parity must be even, odd or both")
    return (parity,)


def families(w2_type, parity: str = "both") -> list[GeographyFamily]:
    t, ps = _parse_type(w2_type), _parities(parity)
    return [f for f in family_catalog() if f.w2_type is t and f.b2plus_parity in ps]


# coverage ------------------------------------------------------------------


def paint_family(grid: np.ndarray, fam: GeographyFamily) -> int:
    params = list(fam.params)
    while len(params) < 2:
        params.append(Param("_", 0))  # zero-coefficient dummy keeps the kernel two-dimensional
    syms = [p.symbol for p in params]
    ca = np.array([fam.a_formula.coef(s) for s in syms], dtype=np.int64)
    cb = np.array([fam.b_formula.coef(s) for s in syms], dtype=np.int64)
    lo = np.array([p.lower for p in params], dtype=np.int64)
    st = np.array([p.step for p in params], dtype=np.int64)
    return int(paint_affine(grid, np.int64(fam.a_formula.const), np.int64(fam.b_formula.const), ca, cb, lo, st))


def coverage_grid(w2_type, parity: str, bounds: tuple[int, int]) -> np.ndarray:
    amax, bmax = bounds
    grid = np.zeros((max(amax + 1, 0), max(bmax + 1, 0)), dtype=np.uint8)
    if grid.size:
        for fam in families(w2_type, parity):
            paint_family(grid, fam)
    return grid


def coverage(w2_type, parity: str = "both", bounds: tuple[int, int] = DEFAULT_BOUNDS) -> frozenset[tuple[int, int]]:
    """Lattice points reached by the matching families inside ``[0, amax] x [0, bmax]``."""
    a, b = np.nonzero(coverage_grid(w2_type, parity, bounds))
    return frozenset(zip(a.tolist(), b.tolist()))


def covering_families(a: int, b: int, w2_type, parity: str = "both") -> list[str]:
    out = []
    for fam in families(w2_type, parity):
        grid = np.zeros((a + 1, b + 1), dtype=np.uint8)
        paint_family(grid, fam)
        if grid[a, b]:
            out.append(fam.name)
    return out


# regions -------------------------------------------------------------------


TYPE_III_EVEN_EXCLUDED = frozenset({0, 1, 2, 4, 6, 8})


def theorem_region(which, parity: str = "both") -> Callable[[int, int], bool]:
    """Membership predicate for the target region of the realization theorems.

    Type (ii): a even and b >= 2a - 1. Type (iii): for odd b, a != 0 and
    b >= 2a - 1; for even b, a not in {0, 1, 2, 4, 6, 8} and b > 2a + 6.
    ``parity`` restricts to b2+ = b of that parity.
    """
    t, ps = _parse_type(which), _parities(parity)

    def in_parity(b: int) -> bool:
        return ("even" if b % 2 == 0 else "odd") in ps

    if t is W2Type.II:
        return lambda a, b: a >= 0 and b >= 0 and a % 2 == 0 and b >= 2 * a - 1 and in_parity(b)
    if t is W2Type.III:
        def pred(a: int, b: int) -> bool:
            if a < 0 or b < 0 or not in_parity(b):
                return False
            if b % 2:
                return a != 0 and b >= 2 * a - 1
            return a not in TYPE_III_EVEN_EXCLUDED and b > 2 * a + 6
        return pred
    raise ValueError("regions are defined for w2-types ii and iii")


def region_grid(which, parity: str, bounds: tuple[int, int]) -> np.ndarray:
    amax, bmax = bounds
    a, b = np.meshgrid(np.arange(amax + 1), np.arange(bmax + 1), indexing="ij")
    pred = theorem_region(which, parity)
    return np.vectorize(pred, otypes=[bool])(a, b) if a.size else np.zeros(a.shape, dtype=bool)


@dataclass(frozen=True)
class ConstraintLine:
    name: str
    description: str
    holds: Callable[[int, int], bool] = field(compare=False)
    boundary: Callable[[float], float] = field(compare=False)

    def on_boundary(self, a: int, b: int) -> bool:
        return b == self.boundary(a)


def constraint_lines() -> list[ConstraintLine]:
    return [
        ConstraintLine("taubes", "c1^2 >= 0: b >= 2a - 1", lambda a, b: b >= 2 * a - 1, lambda a: 2 * a - 1),
        ConstraintLine("furuta", "10/8 on the cover: b >= a", lambda a, b: b >= a, lambda a: a),
        ConstraintLine("eleven_eighths", "11/8 on the cover: b >= (3a - 1)/2", lambda a, b: 2 * b >= 3 * a - 1, lambda a: (3 * a - 1) / 2),
    ]


# missing points --------------------------------------------------------------


class StabilizationError(RuntimeError):
    pass


@dataclass(frozen=True)
class CoverageReport:
    w2_type: W2Type
    parity: str
    bounds: tuple[int, int]
    margin: int
    covered: frozenset[tuple[int, int]]
    missing: tuple[tuple[int, int], ...]
    flagged: tuple[tuple[int, int], ...] = ()
    notes: tuple[str, ...] = ()

    @property
    def count(self) -> int:
        return len(self.missing)

    @property
    def count_excluding_flagged(self) -> int:
        return len([p for p in self.missing if p not in self.flagged])

    def status(self, a: int, b: int) -> str:
        if (a, b) in self.covered:
            return "covered"
        return "missing" if (a, b) in self.missing else "outside-region"

    def summary(self) -> str:
        text = f"missing: {self.count}"
        if self.flagged:
            text += f" ({self.count_excluding_flagged} excluding flagged {', '.join(map(_pt, self.flagged))})"
        return text


def _pt(p) -> str:
    return f"({p[0]},{p[1]})"


def _missing_at(which, parity, bounds) -> tuple[frozenset, np.ndarray]:
    cov = coverage_grid(which, parity, bounds).astype(bool)
    gaps = region_grid(which, parity, bounds) & ~cov
    a, b = np.nonzero(gaps)
    return frozenset(zip(a.tolist(), b.tolist())), cov


TRIVIAL_FORM = (0, 0)


def missing_points(which, parity: str = "both", bounds: tuple[int, int] = DEFAULT_BOUNDS, margin: int = DEFAULT_MARGIN) -> CoverageReport:
    """Region points no family reaches, certified stable under enlarging the bounds."""
    t = _parse_type(which)
    if bounds[0] < DEFAULT_BOUNDS[0] or bounds[1] < DEFAULT_BOUNDS[1]:
        raise ValueError(f"bounds must be at least {DEFAULT_BOUNDS} for a stabilization certificate")
    small, cov = _missing_at(t, parity, bounds)
    big, _ = _missing_at(t, parity, (bounds[0] + margin, bounds[1] + margin))
    if small != big:
        extra = sorted(big - small)[:5]
        raise StabilizationError(f"missing set not stable between {bounds} and margin {margin}: new points {extra}")
    a, b = np.nonzero(cov)
    missing = tuple(sorted(small))
    flagged = (TRIVIAL_FORM,) if t is W2Type.II and TRIVIAL_FORM in small else ()
    notes = ("(0,0) is the trivial form; whether it is realizable is left open",) if flagged else ()
    return CoverageReport(t, parity, bounds, margin, frozenset(zip(a.tolist(), b.tolist())), missing, flagged, notes)


# audits --------------------------------------------------------------------


@dataclass(frozen=True)
class AuditReport:
    family: str
    points_checked: int
    mismatches: tuple[str, ...]
    discrepancy: str = ""

    @property
    def passes(self) -> bool:
        return not self.mismatches

    @property
    def flagged(self) -> bool:
        return bool(self.discrepancy)


def audit_family(fam: GeographyFamily, recipe: Callable[..., Node] | None = None, span: int = AUDIT_SPAN) -> AuditReport:
    """Evaluate the recipe on the parameter grid and compare with the family formulas.

    Families carrying a recorded source discrepancy are compared against
    the discrepancy's reading: the recipe result is reported, not forced.
    """
    recipe = recipe or fam.recipe
    bad: list[str] = []
    n = 0
    for values in fam.grid(span):
        n += 1
        d = evaluate(recipe(**values))
        got = tuple(d.form())
        want = fam.point(**values)
        if d.w2_type is not fam.w2_type:
            bad.append(f"{values}: w2-type {d.w2_type}, expected {fam.w2_type}")
        if got != want and not fam.discrepancy:
            bad.append(f"{values}: recipe gives {got}, formula {want}")
        elif got != want:
            offset = (got[0] - want[0], got[1] - want[1])
            if offset != (0, 2):
                bad.append(f"{values}: recipe gives {got}, formula {want}")
    return AuditReport(fam.name, n, tuple(bad), fam.discrepancy)


# figure coordinates ------------------------------------------------------------


def figure_coordinates(w2_type, a: int, b: int) -> tuple[int, int]:
    """Form counts to the (E(n)-index, S^2 x S^2 count) used in the geography plots.

    Type (ii) manifolds are modelled on L2 # E(a) # k(S^2 x S^2) with
    k = b + 1 - 2a for a > 0 and k = b for a = 0. Type (iii) plots use form counts.
    """
    if _parse_type(w2_type) is W2Type.II:
        return (a, b + 1 - 2 * a if a > 0 else b)
    return (a, b)


# export --------------------------------------------------------------------


CSV_HEADER = ("a", "b", "status", "families")


def export_rows(report: CoverageReport) -> list[tuple[int, int, str, str]]:
    amax, bmax = report.bounds
    if amax < 0 or bmax < 0:
        return []
    region = theorem_region(report.w2_type, report.parity)
    fams = families(report.w2_type, report.parity)
    names: dict[tuple[int, int], list[str]] = {}
    for fam in fams:
        grid = np.zeros((amax + 1, bmax + 1), dtype=np.uint8)
        paint_family(grid, fam)
        for p in zip(*map(np.ndarray.tolist, np.nonzero(grid))):
            names.setdefault(p, []).append(fam.name)
    points = set(names) | set(report.missing)
    points |= {(a, b) for a in range(amax + 1) for b in range(bmax + 1) if region(a, b)}
    rows = []
    for a, b in sorted(points):
        if (a, b) in names:
            status = "covered"
        elif (a, b) in report.missing:
            status = "missing"
        else:
            status = "outside-region"
        rows.append((a, b, status, ";".join(names.get((a, b), []))))
    return rows


def empty_report(w2_type, parity: str = "both") -> CoverageReport:
    return CoverageReport(_parse_type(w2_type), parity, (-1, -1), 0, frozenset(), ())


def clip_report(report: CoverageReport, bounds: tuple[int, int]) -> CoverageReport:
    amax, bmax = bounds
    keep = lambda p: p[0] <= amax and p[1] <= bmax
    return CoverageReport(
        report.w2_type, report.parity, bounds, report.margin,
        frozenset(filter(keep, report.covered)), tuple(filter(keep, report.missing)),
        tuple(filter(keep, report.flagged)), report.notes,
    )


def to_csv(report: CoverageReport) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    w.writerows(export_rows(report))
    return buf.getvalue()


FIGURE_TITLES = {
    (W2Type.II, "even"): "Even b2+ and w2-type (ii)",
    (W2Type.II, "odd"): "Odd b2+ and w2-type (ii)",
    (W2Type.III, "even"): "Even b2+ and w2-type (iii)",
    (W2Type.III, "odd"): "Odd b2+ and w2-type (iii)",
}

_COLORS = {"covered": "#1f5fa8", "missing": "#d62728", "outside-region": "#b0b0b0"}


def to_svg(report: CoverageReport, cell: int = 6) -> str:
    amax, bmax = report.bounds
    pad = 40
    w = pad * 2 + cell * (max(amax, 0) + 1)
    h = pad * 2 + cell * (max(bmax, 0) + 1)
    title = FIGURE_TITLES.get((report.w2_type, report.parity), f"w2-type ({report.w2_type}), {report.parity} b2+")

    def x(a: float) -> float:
        return pad + cell * a + cell / 2

    def y(b: float) -> float:
        return h - pad - cell * b - cell / 2

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">',
        f'<title>{title}</title>',
        f'<rect x="0" y="0" width="{w}" height="{h}" style="fill:#ffffff"/>',
    ]
    if amax >= 0 and bmax >= 0:
        region = theorem_region(report.w2_type, report.parity)
        for a in range(amax + 1):
            col = [b for b in range(bmax + 1) if region(a, b)]
            if col:
                out.append(
                    f'<rect x="{x(a) - cell / 2:.1f}" y="{y(max(col)) - cell / 2:.1f}" width="{cell}" '
                    f'height="{cell * (max(col) - min(col) + 1)}" style="fill:#eef3fb"/>'
                )
        for line in constraint_lines():
            b0, b1 = line.boundary(0), line.boundary(amax)
            out.append(
                f'<line x1="{x(0):.1f}" y1="{y(b0):.1f}" x2="{x(amax):.1f}" y2="{y(b1):.1f}" '
                f'style="stroke:#555555;stroke-width:1;stroke-dasharray:4,3"><title>{line.description}</title></line>'
            )
        for a, b, status, fams in export_rows(report):
            if status == "outside-region":
                continue
            out.append(f'<circle cx="{x(a):.1f}" cy="{y(b):.1f}" r="{cell / 2.5:.1f}" style="fill:{_COLORS[status]}"/>')
    out.append(f'<text x="{pad}" y="{pad / 2:.0f}" style="font-family:sans-serif;font-size:12px">{title}; {report.summary()}</text>')
    out.append(f'<text x="{w / 2:.0f}" y="{h - 8}" style="font-family:sans-serif;font-size:11px">a (copies of -E8)</text>')
    out.append(f'<text x="10" y="{h / 2:.0f}" style="font-family:sans-serif;font-size:11px" transform="rotate(-90 10 {h / 2:.0f})">b (copies of H)</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def export(report: CoverageReport, fmt: str = "csv", path: str | Path | None = None) -> str:
    fmt = fmt.lower()
    if fmt == "csv":
        text = to_csv(report)
    elif fmt == "svg":
        text = to_svg(report)
    else:
        raise ValueError("format must be csv or svg")
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
    return text
