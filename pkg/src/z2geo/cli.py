"""Command-line interface: ``z2geo spin-check | verify | recipe | geography``.

Exit status: 0 verified, 1 verification failed, 2 invalid input.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import geography as geo
from .calculus import RokhlinViolation
from .fibrations import (
    catalog_fibration,
    endo_signature,
    euler_char,
    spin_status_closed,
    verify_relation_mod2,
)
from .recipes import RecipeDocument, RecipeError, check_document
from .spinforms import find_spin_form
from .surface import SurfaceModel

OK, FAILED, INVALID = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(INVALID, f"{self.prog}: error: {message}\n")


def _fibration(args):
    name = " ".join(args.name)
    return catalog_fibration(name)


def _spin_line(cycles, surface) -> tuple[bool, str]:
    sol = find_spin_form(cycles, surface)
    if sol is None:
        return False, "spin over disk: no; no quadratic form is 1 on every vanishing cycle"
    noun = "solution" if sol.count == 1 else "solutions"
    return True, (
        f"spin over disk: yes; witness {sol.witness.describe()} among {sol.count} {noun} "
        f"(solution space dimension {sol.dimension})"
    )


def cmd_spin_check(args) -> int:
    if args.cycles is not None:
        if args.name:
            raise ValueError("give a fibration name or --cycles, not both")
        if args.genus is None or args.genus < 1:
            raise ValueError("--cycles needs --genus g with g >= 1")
        surface = SurfaceModel(args.genus)
        cycles = [surface.curve(c.strip()) for c in args.cycles.split(",") if c.strip()]
        ok, line = _spin_line(cycles, surface)
        print(line)
        return OK if ok else FAILED
    if not args.name:
        raise ValueError("give a fibration name or --cycles")
    lf = _fibration(args)
    ok, line = _spin_line(lf.vanishing_cycles, lf.factorization.surface)
    print(f"{lf.name}: genus {lf.genus}, {len(lf.factorization)} vanishing cycles")
    print(line)
    print(f"closed: {spin_status_closed(lf)}")
    return OK if ok else FAILED


def cmd_verify(args) -> int:
    lf = _fibration(args)
    report = verify_relation_mod2(lf.factorization)
    print(f"{lf.name}: genus {lf.genus}, {len(lf.factorization)} vanishing cycles, sections {list(lf.sections)}")
    print(f"relation: {'passes' if report.passes else 'FAILS'} ({report.caveat})")
    print(f"e = {euler_char(lf)}")
    if report.passes:
        print(f"sigma = {endo_signature(lf, hyperelliptic_asserted=True)} (hyperelliptic, no separating cycles)")
        print(f"closed spin: {spin_status_closed(lf)}")
    return OK if report.passes else FAILED


def cmd_recipe(args) -> int:
    try:
        doc = RecipeDocument.load(args.path)
    except OSError as exc:
        raise ValueError(f"cannot read {args.path}: {exc.strerror}") from None
    try:
        result = check_document(doc)
    except RokhlinViolation as exc:
        print(f"rejected: {exc}")
        return FAILED
    print(result.descriptor)
    print(f"form: {result.form}" if result.form is not None else "form: undefined (not an even form with finite pi1)")
    for note in result.descriptor.notes:
        print(f"  note: {note}")
    if not doc.expect:
        return OK
    if result.ok:
        print("expectation: verified")
        return OK
    for m in result.mismatches:
        print(f"expectation mismatch: {m}")
    return FAILED


def _bounds(text: str) -> tuple[int, int]:
    try:
        a, b = (int(x) for x in text.replace("x", ",").split(","))
    except ValueError:
        raise argparse.ArgumentTypeError("bounds must look like A,B") from None
    return a, b


def cmd_geography(args) -> int:
    bounds = args.bounds
    parities = ("even", "odd") if args.parity == "both" else (args.parity,)
    full = geo.missing_points(args.w2_type, args.parity)
    total_covered = len(full.covered)
    if bounds[0] < 0 or bounds[1] < 0:
        report = geo.empty_report(args.w2_type, args.parity)
    elif bounds[0] >= geo.DEFAULT_BOUNDS[0] and bounds[1] >= geo.DEFAULT_BOUNDS[1]:
        report = geo.missing_points(args.w2_type, args.parity, bounds)
        total_covered = len(report.covered)
    else:
        report = geo.clip_report(full, bounds)
    text = geo.export(report, args.format)
    if args.out:
        try:
            Path(args.out).write_text(text, encoding="utf-8")
        except OSError as exc:
            print(f"cannot write {args.out}: {exc.strerror}", file=sys.stderr)
            return INVALID
    else:
        sys.stdout.write(text)
    out = sys.stderr if not args.out else sys.stdout
    print(f"w2-type ({full.w2_type}), b2+ {'/'.join(parities)}: {len(geo.families(args.w2_type, args.parity))} families", file=out)
    print(f"covered within {max(bounds[0], geo.DEFAULT_BOUNDS[0])}x{max(bounds[1], geo.DEFAULT_BOUNDS[1])}: {total_covered}", file=out)
    print(full.summary(), file=out)
    for note in full.notes:
        print(f"note: {note}", file=out)
    return OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="z2geo", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("spin-check", help="is there a quadratic form equal to 1 on every vanishing cycle")
    s.add_argument("name", nargs="*", help="catalog fibration: ChainG2, ChainG3, ChainG4, 'Xg 3', 'E(2)'")
    s.add_argument("--cycles", help="comma-separated classes such as 'x1,y1+x2'")
    s.add_argument("--genus", type=int)
    s.set_defaults(func=cmd_spin_check)

    v = sub.add_parser("verify", help="mod-2 relation check, e, sigma and closed spin status")
    v.add_argument("name", nargs="+")
    v.set_defaults(func=cmd_verify)

    r = sub.add_parser("recipe", help="evaluate a JSON recipe document")
    r.add_argument("path")
    r.set_defaults(func=cmd_recipe)

    g = sub.add_parser("geography", help="coverage map and missing points")
    g.add_argument("--w2-type", choices=("ii", "iii"), required=True)
    g.add_argument("--parity", choices=("even", "odd", "both"), default="both")
    g.add_argument("--bounds", type=_bounds, default=geo.DEFAULT_BOUNDS, help="A,B (default 60,130)")
    g.add_argument("--format", choices=("csv", "svg"), default="csv")
    g.add_argument("--out", help="output file (default stdout)")
    g.set_defaults(func=cmd_geography)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (RecipeError, KeyError, ValueError, IndexError) as exc:
        msg = exc.args[0] if exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return INVALID


if __name__ == "__main__":
    sys.exit(main())
