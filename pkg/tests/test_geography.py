import csv
import io

import pytest

from z2geo.geography import (
    CSV_HEADER,
    StabilizationError,
    audit_family,
    constraint_lines,
    coverage,
    covering_families,
    empty_report,
    export,
    families,
    family_catalog,
    figure_coordinates,
    missing_points,
    theorem_region,
)
from z2geo.spinforms import W2Type

from .oracles import family_points

TYPE_III_MISSING = (
    {(1, b) for b in range(1, 14, 2)}
    | {(2, b) for b in range(5, 14, 2)}
    | {(4, b) for b in range(9, 18, 2)}
    | {(3, 14), (3, 16)}
    | {(10, b) for b in range(28, 37, 2)}
)
TYPE_II_MISSING = {(0, b) for b in range(12)} | {(2, b) for b in range(4, 15, 2)}


def by_name(name):
    return next(f for f in family_catalog() if f.name == name)


def test_catalog_shape():
    fams = family_catalog()
    assert len(fams) == 17
    assert sum(f.w2_type is W2Type.II for f in fams) == 6
    assert len(families("iii", "odd")) == 7 and len(families("iii", "even")) == 4


def test_family_points():
    assert by_name("Z2(X_2k+1) quotient").point(k=1) == (2, 3)
    assert by_name("U_n(s)").point(s=0, n=0) == (4, 8)
    assert by_name("Z2(ChainG4 + Z'_m)").point(m=5) == (10, 38)
    assert by_name("X_n,s").point(s=2, n=3) == (6, 17)


def test_parity_discipline():
    for fam in family_catalog():
        for values in fam.grid(3):
            a, b = fam.point(**values)
            assert a >= 0 and b >= 0
            assert (b % 2 == 0) == (fam.b2plus_parity == "even")
            if fam.w2_type is W2Type.II:
                assert a % 2 == 0


@pytest.mark.parametrize("fam", family_catalog(), ids=lambda f: f.name)
def test_kernel_painting_matches_loops(fam):
    bounds = (40, 90)
    got = set()
    for p in coverage(fam.w2_type, fam.b2plus_parity, bounds):
        if fam.name in covering_families(*p, fam.w2_type, fam.b2plus_parity):
            got.add(p)
    assert got == family_points(fam, bounds)


def test_coverage_examples():
    even = coverage("ii", "even", (10, 40))
    assert {b for a, b in even if a == 0} == set(range(12, 41, 2))
    odd = coverage("ii", "odd", (10, 40))
    assert {b for a, b in odd if a == 0} == set(range(13, 41, 2))
    iii = coverage("iii", "odd", (10, 60))
    assert {b for a, b in iii if a == 3} == set(range(5, 61, 2))


def test_coverage_monotone():
    small = coverage("iii", "both", (30, 60))
    big = coverage("iii", "both", (40, 80))
    assert small <= big


def test_regions():
    ii, iii = theorem_region("ii"), theorem_region("iii")
    assert ii(2, 3) and not ii(2, 2) and not ii(1, 5)
    assert iii(1, 1) and not iii(0, 5)
    assert iii(3, 14) and not iii(3, 12) and not iii(8, 40)


def test_missing_sets():
    r3 = missing_points("iii")
    assert set(r3.missing) == TYPE_III_MISSING and r3.count == 24
    r2 = missing_points("ii")
    assert set(r2.missing) == TYPE_II_MISSING
    assert (r2.count, r2.count_excluding_flagged, r2.flagged) == (18, 17, ((0, 0),))
    assert r2.summary() == "missing: 18 (17 excluding flagged (0,0))"


def test_missing_needs_large_bounds():
    with pytest.raises(ValueError):
        missing_points("iii", bounds=(30, 60))


def test_stabilization_failure(monkeypatch):
    import z2geo.geography as geo

    real = geo.region_grid

    def fake(which, parity, bounds):
        g = real(which, parity, bounds)
        if bounds[0] > 60:
            g[65, 0] = True  # pretend a far, uncovered point joins the region
        return g

    monkeypatch.setattr(geo, "region_grid", fake)
    with pytest.raises(StabilizationError):
        geo.missing_points("iii")


def test_no_odd_type_iii_gap_at_three():
    assert not any(a == 3 and b % 2 for a, b in missing_points("iii").missing)


def test_every_point_satisfies_taubes():
    for fam in family_catalog():
        for values in fam.grid(4):
            assert fam.point(**values)[1] >= 2 * fam.point(**values)[0] - 1


def test_region_membership_where_it_holds():
    # type (ii) and type (iii) odd families sit inside their regions;
    # type (iii) even families may leave the b > 2a + 6 region near their apex
    for fam in family_catalog():
        if fam.w2_type is W2Type.III and fam.b2plus_parity == "even":
            continue
        region = theorem_region(fam.w2_type)
        for values in fam.grid(4):
            assert region(*fam.point(**values)), (fam.name, values)
    assert not theorem_region("iii")(*by_name("Z2(M_n(s) + ChainG2)").point(n=0, s=2))


def test_constraint_lines():
    taubes, furuta, eleven = constraint_lines()
    assert taubes.on_boundary(2, 3)
    assert not furuta.holds(1, 0)
    assert all(l.holds(0, 0) for l in constraint_lines())
    assert eleven.holds(3, 4) and not eleven.holds(3, 3)


@pytest.mark.parametrize("fam", family_catalog(), ids=lambda f: f.name)
def test_audits(fam):
    rep = audit_family(fam)
    assert rep.passes, rep.mismatches
    assert rep.flagged == (fam.name == "Z2(ChainG4 + Z'_m)")


def test_audit_detects_wrong_recipe():
    fam = by_name("Z2(Z_n) genus 2")
    from z2geo import constructions as C

    rep = audit_family(fam, recipe=lambda n: C.sigma0_torus(n))
    assert not rep.passes


def test_sigma8_alternative_recipe_agrees():
    from z2geo import constructions as C

    assert audit_family(by_name("sigma = -8 line"), recipe=C.sigma8_line_construct).passes


def test_figure_coordinates():
    assert figure_coordinates("ii", 0, 12) == (0, 12)
    assert figure_coordinates("ii", 2, 7) == (2, 4)
    assert figure_coordinates("iii", 3, 18) == (3, 18)


def _rows(text):
    return list(csv.reader(io.StringIO(text)))


def test_csv_export():
    rows = _rows(export(missing_points("ii", "even")))
    assert tuple(rows[0]) == CSV_HEADER
    status = {(int(r[0]), int(r[1])): r[2] for r in rows[1:]}
    assert status[(0, 12)] == "covered" and status[(2, 4)] == "missing"
    assert [tuple(map(int, r[:2])) for r in rows[1:]] == sorted(status)
    iii = {(int(r[0]), int(r[1])): r[2] for r in _rows(export(missing_points("iii", "even")))[1:]}
    assert iii[(10, 38)] == "covered"


def test_csv_deterministic_and_empty():
    assert export(missing_points("iii")) == export(missing_points("iii"))
    assert export(empty_report("ii")) == "a,b,status,families\n"


def test_svg_export(tmp_path):
    path = tmp_path / "plane.svg"
    text = export(missing_points("iii", "odd"), "svg", path)
    assert text.startswith("<?xml") and 'version="1.1"' in text
    assert "Odd b2+ and w2-type (iii)" in text and "href" not in text
    assert path.read_text() == text


def test_export_errors(tmp_path):
    with pytest.raises(ValueError):
        export(empty_report("ii"), "png")
    with pytest.raises(OSError):
        export(empty_report("ii"), "csv", tmp_path / "missing-dir" / "x.csv")
