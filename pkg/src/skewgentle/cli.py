"""Command-line interface: ``skewgentle <subcommand> ...``."""
from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from .algebra import StructuralError, admissible_presentation, validate_gentle, validate_skew_gentle
from .battery import dual_coherence, run_battery
from .complexes import BandParameter, ComplexError, band_complex, string_complex
from .corpus import MAX_EDGES, corpus_generate
from .groebner import InfiniteDimensional, certify_strong_koszul, quadratic_dual
from .invariants import invariants
from .io import SchemaError, admissible_to_dict, algebra_to_dict, load_algebra, load_json
from .surface import ExceptionalDissection, dissection_of, dual_graph, to_dot, to_json
from .words import CurveError, GradedCurve, HomotopyWord, WordError, curve_to_word, parse_word, word_to_curve

EXIT_OK, EXIT_INVALID, EXIT_IO = 0, 1, 2


class Invalid(Exception):
    """The input was read but fails a check; exit status 1."""


def _emit(fmt: str, data: dict, text: str, dot: str | None = None):
    if fmt == "json":
        print(json.dumps(data, indent=2, sort_keys=False, default=str))
    elif fmt == "dot":
        if dot is None:
            raise SchemaError("this subcommand has no DOT output")
        print(dot)
    else:
        print(text)


def _word(args) -> HomotopyWord:
    if args.word_file:
        d = load_json(args.word_file)
        try:
            return HomotopyWord.from_dict(d)
        except WordError as exc:
            raise SchemaError(str(exc)) from exc
    if not args.word:
        raise SchemaError("give a word with --word or --word-file")
    try:
        return parse_word(args.word)
    except WordError as exc:
        raise SchemaError(str(exc)) from exc


# ------------------------------------------------------------------ commands


def cmd_validate(args):
    p = load_algebra(args.input)
    rep = validate_skew_gentle(p) if p.special else validate_gentle(p)
    lines = [f"{rep.kind}: {'valid' if rep.ok else 'invalid'}"]
    if rep.flagged_locally:
        lines.append("locally gentle only: the ideal is not admissible")
    lines += [f"  {a}: {d}" for a, d in rep.failures]
    _emit(args.format, rep.as_dict(), "\n".join(lines))
    if not rep.ok:
        raise Invalid("presentation fails the axioms")


def _checked(path):
    p = load_algebra(path)
    rep = validate_skew_gentle(p)
    if not rep.ok:
        raise Invalid("not skew-gentle: " + "; ".join(f"{a}: {d}" for a, d in rep.failures))
    return p


def cmd_present(args):
    ap = admissible_presentation(_checked(args.input))
    d = admissible_to_dict(ap)
    text = "\n".join([f"vertices: {' '.join(ap.quiver.vertices)}"]
                     + [f"  {a.name}: {a.source} -> {a.target}" for a in ap.quiver.arrows]
                     + [f"relation: {r.format()}" for r in ap.relations])
    _emit(args.format, d, text)


def cmd_koszul(args):
    ap = admissible_presentation(_checked(args.input))
    cert, _ = certify_strong_koszul(ap)
    dual = quadratic_dual(ap)
    data = {"certificate": cert.as_dict(), "dual": admissible_to_dict(dual)}
    lines = [f"strong Koszul: {'PASS' if cert.certified else 'FAIL'}",
             f"Groebner basis: {len(cert.basis)} elements, {len(cert.overlaps)} overlaps checked"]
    lines += [f"  {g.format()}" for g in cert.basis]
    lines.append(f"quadratic dual: {len(dual.quiver.arrows)} arrows, {len(dual.relations)} relations")
    lines += [f"  {r.format()}" for r in dual.relations]
    _emit(args.format, data, "\n".join(lines))
    if not cert.certified:
        raise Invalid("overlap does not reduce to zero")


def _dissection_text(d) -> str:
    t = d.topology
    lines = [f"genus {t.genus}, boundary {t.boundary_components}, punctures {t.punctures}, "
             f"orbifold points {t.orbifold_points}, euler {t.euler_characteristic}"]
    for poly in d.decomposition.polygons:
        kind = "boundary" if poly.boundary else "interior"
        lines.append(f"  {kind} polygon: edges {' '.join(poly.edges)}; internal edges {poly.internal_edges}"
                     + (f"; orbifold {' '.join(poly.orbifold_points)}" if poly.orbifold_points else ""))
    return "\n".join(lines)


def cmd_surface(args):
    d = dissection_of(_checked(args.input))
    data = {"dissection": to_json(d.ribbon), "polygons": [x.as_dict() for x in d.decomposition.polygons],
            "topology": d.topology.as_dict()}
    _emit(args.format, data, _dissection_text(d), to_dot(d.ribbon))


def cmd_dual(args):
    p = _checked(args.input)
    dd = dual_graph(dissection_of(p))
    chk = dual_coherence(p)
    data = {"dissection": to_json(dd.ribbon), "topology": dd.topology.as_dict(),
            "algebra": algebra_to_dict(chk.dual_algebra), "collapsed_dual": algebra_to_dict(chk.triple),
            "sign_twist": chk.signs, "match": chk.match}
    text = _dissection_text(dd) + f"\nalgebra of the dual dissection matches the quadratic dual: {chk.match}"
    _emit(args.format, data, text, to_dot(dd.ribbon, "Dual"))
    if not chk.match:
        raise Invalid("dual dissection and quadratic dual disagree")


def cmd_word2curve(args):
    p = _checked(args.input)
    w = _word(args)
    try:
        c = word_to_curve(w, p)
    except WordError as exc:
        raise Invalid(str(exc)) from exc
    text = f"{c.kind}: crossings {' '.join(c.crossings)}; grading {list(c.grading)}"
    _emit(args.format, c.as_dict(), text)


def cmd_curve2word(args):
    p = _checked(args.input)
    try:
        c = GradedCurve.from_dict(load_json(args.curve))
    except CurveError as exc:
        raise SchemaError(str(exc)) from exc
    try:
        w = curve_to_word(c, p)
    except CurveError as exc:
        raise Invalid(str(exc)) from exc
    _emit(args.format, w.as_dict(), f"{w.pretty()}  {w.text()}")


def _fractions(text: str) -> tuple:
    try:
        return tuple(Fraction(x.strip()) for x in text.split(",") if x.strip())
    except ValueError as exc:
        raise SchemaError(f"bad number list {text!r}") from exc


def cmd_complex(args):
    p = _checked(args.input)
    w = _word(args)
    try:
        if w.band:
            if args.sizes:
                param = BandParameter(sizes=tuple(int(x) for x in _fractions(args.sizes)))
            else:
                param = BandParameter(_fractions(args.poly))
            c = band_complex(w, param, p)
        else:
            c = string_complex(w, p)
    except (WordError, ComplexError) as exc:
        raise Invalid(str(exc)) from exc
    _emit(args.format, c.as_dict(), c.text())


def cmd_invariants(args):
    rep = invariants(_checked(args.input))
    lines = [f"gorenstein dimension: {rep.gorenstein}",
             f"singularity profile: {list(rep.profile.sizes) or 'empty'}"]
    if rep.cartan:
        lines += [f"det C(q) = {rep.cartan.det}", f"product formula = {rep.cartan.product}",
                  f"det C_gentle(q) = {rep.cartan.det_gentle}"]
    else:
        lines.append(f"q-Cartan matrix: {rep.cartan_error}")
    _emit(args.format, rep.as_dict(), "\n".join(lines))
    if rep.cartan and not (rep.cartan.match and rep.cartan.match_gentle):
        raise Invalid("determinant identity fails")


def _battery_job(job):
    index, p, max_letters, complexes = job
    return run_battery(index, p, max_letters, complexes)


def cmd_roundtrip(args):
    corpus = corpus_generate(args.seed, args.count, max_edges=args.max_edges)
    jobs = [(i, p, args.max_letters, not args.no_complexes) for i, p in enumerate(corpus)]
    workers = args.workers or os.cpu_count() or 1
    with ProcessPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(_battery_job, jobs))
    bad = [r for r in results if not r.ok]
    data = {"seed": args.seed, "count": len(corpus), "max_letters": args.max_letters,
            "words": sum(r.words for r in results), "results": [r.as_dict() for r in results],
            "ok": not bad}
    lines = [f"{len(corpus)} algebras, {data['words']} words up to {args.max_letters} letters"]
    for r in bad:
        lines.append(f"  algebra {r.index}: {len(r.failures)} failures, first: {r.failures[0]}")
    lines.append("all checks pass" if not bad else f"{len(bad)} algebras with failures")
    _emit(args.format, data, "\n".join(lines))
    if bad:
        raise Invalid("corpus battery found failures")


# ------------------------------------------------------------------ parser


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="skewgentle", description="Skew-gentle algebras and orbifold dissections.")
    ap.add_argument("--format", choices=("text", "json", "dot"), default="text")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, func, help_, word=False):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("input", help="presentation or dissection JSON")
        sp.add_argument("--format", choices=("text", "json", "dot"), default=argparse.SUPPRESS)
        if word:
            sp.add_argument("--word", help='word text, e.g. "a2 a3, a3~, a4~ (1,2,1,0)"')
            sp.add_argument("--word-file", help="word JSON")
        sp.set_defaults(func=func)
        return sp

    add("validate", cmd_validate, "check the gentle or skew-gentle axioms")
    add("present", cmd_present, "admissible presentation")
    add("koszul", cmd_koszul, "strong Koszul certificate and quadratic dual")
    add("surface", cmd_surface, "orbifold dissection")
    add("dual", cmd_dual, "dual dissection compared with the quadratic dual")
    add("word2curve", cmd_word2curve, "graded curve of a homotopy word", word=True)
    c2w = add("curve2word", cmd_curve2word, "homotopy word of a graded curve")
    c2w.add_argument("curve", help="curve JSON")
    cx = add("complex", cmd_complex, "complex of projectives of a string or band", word=True)
    cx.add_argument("--poly", default="-2,1", help="band polynomial coefficients c0,...,1; write --poly=-2,1 when c0 is negative (default x-2)")
    cx.add_argument("--sizes", help="matrix sizes l,l',m,m' for a symmetric band")
    add("invariants", cmd_invariants, "singularity profile, Gorenstein dimension, q-Cartan determinant")

    rt = sub.add_parser("roundtrip", help="property battery over a seeded corpus")
    rt.add_argument("--format", choices=("text", "json", "dot"), default=argparse.SUPPRESS)
    rt.add_argument("--seed", type=int, default=7)
    rt.add_argument("--count", type=int, default=50)
    rt.add_argument("--max-edges", type=int, default=MAX_EDGES)
    rt.add_argument("--max-letters", type=int, default=4)
    rt.add_argument("--workers", type=int, default=0)
    rt.add_argument("--no-complexes", action="store_true", help="skip the complex checks")
    rt.set_defaults(func=cmd_roundtrip)
    return ap


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_IO if exc.code else EXIT_OK
    for name in ("count", "max_letters", "max_edges"):
        if getattr(args, name, 1) < 1:
            print(f"error: --{name.replace('_', '-')} must be positive", file=sys.stderr)
            return EXIT_IO
    try:
        args.func(args)
    except Invalid as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (SchemaError, StructuralError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ExceptionalDissection, InfiniteDimensional) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
