"""Command-line driver.

Subcommands: validate, pullback, check, example, modular, gen. Exit codes:
0 success, 1 parse failure, 2 validation failure, 3 theorem-check failure.
Set MGPD_VERBOSE=1 for per-claim detail in reports.
"""

from __future__ import annotations

import argparse
import os
import sys

from .documents import (
    CechExampleDocument,
    CospanDocument,
    ExampleResultDocument,
    GroupoidDocument,
    PullbackDocument,
    TransformationExampleDocument,
    parse_document,
    serialize,
    weight_to_str,
)
from .errors import GroupoidError, InvalidCospan, NotQuasiInvariant, ParseError
from .families import canonical_iso_cech, canonical_iso_transformation, is_isomorphism
from .generate import alternate_disintegration, random_cospan, random_haar_groupoid
from .groupoid import GroupoidHom, ValidationReport, validate_groupoid
from .haar import (
    is_haar,
    modular_function,
    validate_haar_groupoid,
    validate_haar_hom,
)
from .pullback import (
    build_weak_pullback,
    check_commuting_diamond,
    check_disintegration_independence,
    check_expanding_lemma,
    check_fiber_product_lemma,
    check_haar_theorem,
    check_quasi_invariance_and_modular,
    check_projection_homs,
    check_triple_integral_lemma,
    validate_cospan,
)

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_VALIDATION = 2
EXIT_CHECK = 3


def _verbose() -> bool:
    return os.environ.get("MGPD_VERBOSE", "") not in ("", "0")


def _read(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return parse_document(fh.read())
    except OSError as e:
        print(f"error: cannot read {path}: {e}", file=sys.stderr)
        raise SystemExit(EXIT_PARSE)


def _write(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _print_report(report: ValidationReport, label: str) -> bool:
    if report.ok:
        print(f"ok: {label}")
        return True
    for v in report.violations:
        print(f"violation: {label}: {v}")
    return False


def _validate_groupoid_document(doc: GroupoidDocument) -> bool:
    ok = _print_report(validate_groupoid(doc.groupoid), "groupoid axioms")
    if doc.haar is not None:
        ok &= _print_report(is_haar(doc.groupoid, doc.haar), "haar system")
    if doc.haar is not None and doc.unit_measure is not None:
        ok &= _print_report(validate_haar_groupoid(doc.to_haar_groupoid()), "haar groupoid")
    return ok


def _validate_cospan_document(doc: CospanDocument) -> bool:
    return _print_report(validate_cospan(doc.to_cospan()), "cospan")


def _validate_pullback_document(doc: PullbackDocument) -> bool:
    ok = _validate_cospan_document(doc.cospan)
    ok &= _validate_groupoid_document(doc.result)
    if ok:
        h = doc.result.to_haar_groupoid()
        try:
            delta = modular_function(h)
            if dict(delta.values) != doc.modular:
                print("violation: stored modular table does not match the stored measures")
                ok = False
            else:
                print("ok: modular table")
        except NotQuasiInvariant as e:
            print(f"violation: stored pullback is not quasi-invariant: {e}")
            ok = False
        cospan = doc.cospan.to_cospan()
        for name, mapping, leg in (
            ("proj_left", doc.proj_left, cospan.left),
            ("proj_right", doc.proj_right, cospan.right),
        ):
            hom = GroupoidHom(h.groupoid, leg.groupoid, mapping)
            ok &= _print_report(validate_haar_hom(hom, h, leg), name)
    return ok


def cmd_validate(args) -> int:
    doc = _read(args.file)
    if isinstance(doc, GroupoidDocument):
        ok = _validate_groupoid_document(doc)
    elif isinstance(doc, CospanDocument):
        ok = _validate_cospan_document(doc)
    elif isinstance(doc, PullbackDocument):
        ok = _validate_pullback_document(doc)
    elif isinstance(doc, (CechExampleDocument, TransformationExampleDocument)):
        print("ok: example parameters are well formed")
        ok = True
    elif isinstance(doc, ExampleResultDocument):
        ok = True
        for label, g in (("left", doc.left), ("base", doc.base), ("right", doc.right), ("pullback", doc.pullback), ("target", doc.target)):
            ok &= _print_report(validate_groupoid(g), f"{label} groupoid axioms")
        if ok:
            iso = is_isomorphism(GroupoidHom(doc.pullback, doc.target, doc.iso_map))
            if bool(iso) != doc.is_isomorphism:
                print("violation: stored isomorphism verdict does not match the stored map")
                ok = False
            else:
                print("ok: isomorphism verdict")
    else:
        print(f"error: cannot validate {type(doc).__name__}", file=sys.stderr)
        return EXIT_PARSE
    return EXIT_OK if ok else EXIT_VALIDATION


def cmd_pullback(args) -> int:
    doc = _read(args.file)
    if not isinstance(doc, CospanDocument):
        print("error: pullback needs a cospan document", file=sys.stderr)
        return EXIT_PARSE
    cospan = doc.to_cospan()
    report = validate_cospan(cospan)
    if not report.ok:
        _print_report(report, "cospan")
        return EXIT_VALIDATION
    w = build_weak_pullback(cospan, validate=False)
    out = serialize(PullbackDocument.of(w))
    _write(args.out, out)
    print(f"pullback: {len(w.groupoid.elements)} elements, {len(w.groupoid.units)} units -> {args.out}")
    return EXIT_OK


CLAIMS = (
    "axioms.pullback_groupoid",
    "lemma.fiber_product",
    "thm.haar_system",
    "prop.quasi_invariance",
    "remark.modular_formula",
    "prop.projection_homs",
    "prop.disintegration_independence",
    "diamond.commutes",
    "lemma.triple_integrals",
    "lemma.expanding_integral",
)


def run_claims(cospan, w, strict: bool = False) -> dict[str, tuple[bool, str]]:
    """Evaluate every structure claim on a built pullback; returns
    claim id -> (passed, detail)."""
    results: dict[str, tuple[bool, str]] = {}

    rep = validate_groupoid(w.groupoid)
    results["axioms.pullback_groupoid"] = (rep.ok, rep.summary())

    ok = check_fiber_product_lemma(w)
    results["lemma.fiber_product"] = (ok, "fibers match leg-fiber products" if ok else "fiber mismatch")

    rep = check_haar_theorem(w)
    results["thm.haar_system"] = (rep.ok, rep.summary())

    mc = check_quasi_invariance_and_modular(w)
    results["prop.quasi_invariance"] = (
        mc.quasi_invariant,
        "support symmetric under inversion" if mc.quasi_invariant else f"witness {mc.witness}",
    )
    detail = f"checked {mc.checked}, skipped {mc.skipped}"
    if mc.mismatches:
        detail += f", mismatched at {mc.mismatches[0]}"
    results["remark.modular_formula"] = (mc.ok(strict=strict), detail)

    rep = check_projection_homs(w)
    results["prop.projection_homs"] = (rep.ok, rep.summary())

    alt_left = alternate_disintegration(w.disint_left, cospan.base.unit_measure)
    alt_right = alternate_disintegration(w.disint_right, cospan.base.unit_measure)
    same = check_disintegration_independence(cospan, alt_left, alt_right, result=w)
    results["prop.disintegration_independence"] = (same, "unit measure unchanged under alternate disintegrations")

    ok = check_commuting_diamond(w)
    results["diamond.commutes"] = (ok, "orbit diamond commutes" if ok else "orbit mismatch")

    ok = check_triple_integral_lemma(cospan, result=w)
    results["lemma.triple_integrals"] = (ok, "integral exchange exact" if ok else "sides differ")

    ok = check_expanding_lemma(w)
    results["lemma.expanding_integral"] = (ok, "six-fold expansion exact" if ok else "sides differ")
    return results


def cmd_check(args) -> int:
    doc = _read(args.file)
    if not isinstance(doc, CospanDocument):
        print("error: check needs a cospan document", file=sys.stderr)
        return EXIT_PARSE
    cospan = doc.to_cospan()
    report = validate_cospan(cospan)
    if not report.ok:
        _print_report(report, "cospan")
        return EXIT_VALIDATION
    w = build_weak_pullback(cospan, validate=False)
    if _verbose():
        for note in w.assumptions:
            print(f"note: {note}")
    results = run_claims(cospan, w, strict=args.strict)
    failed = 0
    for claim in CLAIMS:
        ok, detail = results[claim]
        status = "PASS" if ok else "FAIL"
        line = f"{status} {claim}"
        if not ok or _verbose():
            line += f" — {detail}"
        print(line)
        failed += 0 if ok else 1
    return EXIT_OK if failed == 0 else EXIT_CHECK


def cmd_example(args) -> int:
    doc = _read(args.params)
    if args.family == "cech":
        if not isinstance(doc, CechExampleDocument):
            print("error: expected cech_example parameters", file=sys.stderr)
            return EXIT_PARSE
        alg, target, iso = canonical_iso_cech(doc.data)
        from .families import cech_cospan_groupoids

        left, base, right, hl, hr = cech_cospan_groupoids(doc.data)
    else:
        if not isinstance(doc, TransformationExampleDocument):
            print("error: expected transformation_example parameters", file=sys.stderr)
            return EXIT_PARSE
        alg, target, iso = canonical_iso_transformation(doc.data)
        from .families import transformation_cospan_groupoids

        left, base, right, hl, hr = transformation_cospan_groupoids(doc.data)
    verdict = is_isomorphism(iso)
    result = ExampleResultDocument(
        args.family,
        left,
        base,
        right,
        dict(hl.mapping),
        dict(hr.mapping),
        alg.groupoid,
        target,
        dict(iso.mapping),
        bool(verdict),
    )
    _write(args.out, serialize(result))
    print(
        f"{args.family}: pullback {len(alg.groupoid.elements)} elements, target {len(target.elements)} elements, "
        f"canonical map is {'an isomorphism' if verdict else 'NOT an isomorphism'} -> {args.out}"
    )
    return EXIT_OK if verdict else EXIT_CHECK


def cmd_modular(args) -> int:
    doc = _read(args.file)
    if not isinstance(doc, GroupoidDocument):
        print("error: modular needs a groupoid document", file=sys.stderr)
        return EXIT_PARSE
    try:
        h = doc.to_haar_groupoid()
    except GroupoidError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_VALIDATION
    report = validate_haar_groupoid(h)
    if not report.ok:
        _print_report(report, "haar groupoid")
        return EXIT_VALIDATION
    delta = modular_function(h)
    for x in sorted(delta.values):
        print(f"{x}\t{weight_to_str(delta(x))}")
    return EXIT_OK


def cmd_gen(args) -> int:
    bounds = tuple(int(b) for b in args.bounds.split(","))
    if len(bounds) != 2:
        print("error: --bounds must be 'max_units,max_elements'", file=sys.stderr)
        return EXIT_PARSE
    if args.what == "groupoid":
        h = random_haar_groupoid(args.seed, bounds, null_orbits=args.null)
        text = serialize(GroupoidDocument.of(h))
    else:
        c = random_cospan(args.seed, bounds, with_null_base=args.null)
        text = serialize(CospanDocument.of(c))
    if args.out:
        _write(args.out, text)
        print(f"{args.what} for seed {args.seed} -> {args.out}")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="mgpd", description="finite measured groupoids and their weak pullbacks")
    sub = parser.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="validate a document; exit 0 iff all validators pass")
    s.add_argument("file")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("pullback", help="build the weak pullback of a cospan file")
    s.add_argument("file")
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_pullback)

    s = sub.add_parser("check", help="run every structure-theorem check on a cospan")
    s.add_argument("file")
    s.add_argument("--strict", action="store_true", help="treat skipped off-support modular triples as failures")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("example", help="build a worked example and verify its canonical isomorphism")
    s.add_argument("family", choices=("cech", "transformation"))
    s.add_argument("--params", required=True)
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_example)

    s = sub.add_parser("modular", help="print the modular function over the support")
    s.add_argument("file")
    s.set_defaults(func=cmd_modular)

    s = sub.add_parser("gen", help="emit a seeded random instance")
    s.add_argument("what", choices=("groupoid", "cospan"))
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--bounds", default="4,24")
    s.add_argument("--null", action="store_true", help="engineer a null orbit in the unit measure")
    s.add_argument("--out")
    s.set_defaults(func=cmd_gen)

    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except InvalidCospan as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_VALIDATION
    except GroupoidError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_VALIDATION


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
