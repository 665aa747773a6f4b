"""Batch command line: JSON family in, JSON result (or SVG) out.

Exit codes: 0 computed, 1 the checked property does not hold, 2 invalid
input, 3 size or budget limit.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from . import famgen, ordertype, position, predicates
from .geom import ConvexBody, GeometryError
from .io import (
    RESULT_SCHEMA,
    DocumentError,
    dump,
    family_document,
    format_line,
    load_family,
    load_json,
    parse_line,
    parse_points,
    points_document,
)
from .render import render_svg

EXIT_OK, EXIT_FALSE, EXIT_INPUT, EXIT_LIMIT = 0, 1, 2, 3


def _result(args, **fields) -> dict:
    doc = {"schema": RESULT_SCHEMA, "command": args.command}
    if getattr(args, "family", None):
        doc["input"] = str(args.family)
    doc.update(fields)
    doc.setdefault("diagnostics", [])
    return doc


def _by_id(family: Sequence[ConvexBody], ids: Sequence[str]) -> list[ConvexBody]:
    table = {b.id: b for b in family}
    missing = [i for i in ids if i not in table]
    if missing:
        raise DocumentError(f"unknown body ids {missing}")
    return [table[i] for i in ids]


def _ordering_cert(cert: position.ConvexPositionCertificate | None):
    return None if cert is None else {"kind": "ordering", "ordering": list(cert.ordering)}


def _line_cert(cert: predicates.TransversalCertificate | None):
    if cert is None:
        return None
    return {"kind": "transversal", "line": format_line(cert.line), "members": list(cert.member_ids)}


# --- subcommands ------------------------------------------------------------------

def cmd_check(args, family):
    violations = predicates.check_assumptions(family)
    diagnostics = []
    try:
        crossing = predicates.crossing_pairs(family)
    except predicates.TangencyError as exc:
        crossing = None
        diagnostics.append(str(exc))
    gp = None
    if not violations and crossing == []:
        gp = predicates.is_general_position(family)
    ok = not violations and crossing == [] and gp is not False
    doc = _result(
        args,
        assumptions=[str(v) for v in violations],
        noncrossing=None if crossing is None else not crossing,
        crossing_pairs=[list(p) for p in crossing or []],
        general_position=gp,
        diagnostics=diagnostics,
    )
    return doc, EXIT_OK if ok else EXIT_FALSE


def cmd_orient(args, family):
    triple = _by_id(family, args.triple)
    if len(set(args.triple)) != 3:
        raise DocumentError("--triple needs three distinct ids")
    o = predicates.orientations(*triple)
    return _result(args, triple=list(args.triple), orientations=list(o.signs)), EXIT_OK


def cmd_convex_position(args, family):
    verdict = position.in_convex_position_direct(family)
    cert = position.exists_consistent_order(family, exhaustive=args.exhaustive)
    diagnostics = []
    if verdict != (cert is not None):
        diagnostics.append("direct test and ordering search disagree")
    doc = _result(args, convex_position=verdict, certificate=_ordering_cert(cert),
                  diagnostics=diagnostics)
    return doc, EXIT_OK if verdict else EXIT_FALSE


def cmd_order(args, family):
    if not position.in_convex_position_direct(family):
        return _result(args, ordering=None,
                       diagnostics=["family is not in convex position"]), EXIT_FALSE
    ordering = position.canonical_order(family, args.convention)
    return _result(args, convention=args.convention, ordering=list(ordering)), EXIT_OK


def cmd_subfamily(args, family):
    ids, cert = position.largest_convex_subfamily(family)
    return _result(args, size=len(ids), members=list(ids),
                   certificate={"kind": "subfamily", "members": list(ids),
                                "ordering": list(cert.ordering)}), EXIT_OK


def cmd_transversal(args, family):
    if args.min is None:
        cert = predicates.has_transversal(family)
    else:
        best = predicates.best_stabbing_line(family)
        cert = best if len(best.member_ids) >= args.min else None
    doc = _result(args, transversal=cert is not None, certificate=_line_cert(cert))
    return doc, EXIT_OK if cert is not None else EXIT_FALSE


def cmd_dichotomy(args, family):
    try:
        out = position.dichotomy(family, args.t, args.n)
    except position.NoOutcome as exc:
        return _result(args, branch=None, t=args.t, n=args.n, diagnostics=[str(exc)]), EXIT_FALSE
    if out.transversal is not None:
        cert = _line_cert(out.transversal)
    else:
        cert = {"kind": "subfamily", "members": list(out.convex),
                "ordering": list(out.certificate.ordering)}
    return _result(args, branch=out.branch, t=args.t, n=args.n, certificate=cert), EXIT_OK


def cmd_chirotope(args, family):
    try:
        chi = ordertype.chirotope(family)
    except ordertype.ChirotopeError as exc:
        raise DocumentError(f"chirotope undefined: {exc}") from None
    signs = {",".join(chi.ground[i] for i in t): "+" if s > 0 else "-"
             for t, s in sorted(chi.signs.items())}
    return _result(args, ground=list(chi.ground), signs=signs,
                   gp3=ordertype.gp3_check(chi)), EXIT_OK


def cmd_represent(args, family):
    if args.verify:
        points, bijection = parse_points(load_json(args.verify))
        ok = ordertype.verify_representation(family, points, bijection)
        return _result(args, verified=ok), EXIT_OK if ok else EXIT_FALSE
    cert = ordertype.search_representation(family, budget=args.budget, seed=args.seed)
    if cert is None:
        diag = ["no representation found; this does not prove non-representability"]
        return _result(args, representable=None, certificate=None, diagnostics=diag), EXIT_FALSE
    doc = points_document(cert.points, dict(cert.bijection))
    doc["kind"] = "representation"
    return _result(args, representable=True, certificate=doc), EXIT_OK


def cmd_bounds(args, _family):
    out = {}
    if args.n is not None:
        out["pach_toth"] = position.bound_pach_toth(args.n)
        out["m_bound"] = position.bound_M(args.n)
    if args.k is not None or args.l is not None:
        if args.k is None or args.l is None:
            raise DocumentError("--k and --l go together")
        out["lemma1"] = position.bound_lemma1(args.k, args.l)
    if not out:
        raise DocumentError("give --n and/or --k with --l")
    return _result(args, **out), EXIT_OK


def cmd_gen(args, _family):
    if args.fixture:
        return family_document(famgen.fixture(args.fixture)), EXIT_OK
    if args.spec:
        raw = args.spec
        data = json.loads(raw) if raw.lstrip().startswith("{") else load_json(raw)
        try:
            spec = famgen.GenSpec(**data)
        except TypeError as exc:
            raise DocumentError(f"bad generator spec: {exc}") from None
    else:
        if args.kind is None or args.count is None:
            raise DocumentError("gen needs --spec, --fixture, or --kind with --count")
        spec = famgen.GenSpec(seed=args.seed, count=args.count, kind=args.kind,
                              general_position=args.general_position)
    return family_document(famgen.generate(spec)), EXIT_OK


def cmd_render(args, family):
    line = None
    ordering = args.ordering
    if args.certificate:
        cert = load_json(args.certificate).get("certificate") or {}
        if "line" in cert:
            line = parse_line(cert["line"])
        ordering = ordering or cert.get("ordering")
    if args.line:
        line = parse_line(dict(zip("abc", args.line)))
    svg = render_svg(family, line=line, ordering=ordering, title=str(args.family))
    if args.out:
        Path(args.out).write_text(svg)
        return _result(args, svg=str(args.out)), EXIT_OK
    return svg, EXIT_OK


def cmd_verify(args, family):
    """Re-check the certificate carried by a result document."""
    cert = load_json(args.certificate).get("certificate")
    if not isinstance(cert, dict) or "kind" not in cert:
        raise DocumentError("result document carries no certificate")
    kind = cert["kind"]
    if kind == "ordering":
        ok = position.verify_certificate(
            family, position.ConvexPositionCertificate(tuple(cert["ordering"])))
    elif kind == "subfamily":
        sub = _by_id(family, cert["members"])
        ok = (position.in_convex_position_direct(sub) if sub else True) and position.verify_certificate(
            sub, position.ConvexPositionCertificate(tuple(cert["ordering"])))
    elif kind == "transversal":
        line = parse_line(cert["line"])
        ok = all(predicates.line_meets(line, b) for b in _by_id(family, cert["members"]))
    elif kind == "representation":
        points, bijection = parse_points(cert)
        ok = ordertype.verify_representation(family, points, bijection)
    else:
        raise DocumentError(f"unknown certificate kind {kind!r}")
    return _result(args, kind=kind, verified=ok), EXIT_OK if ok else EXIT_FALSE


COMMANDS = {
    "check": cmd_check,
    "orient": cmd_orient,
    "convex-position": cmd_convex_position,
    "order": cmd_order,
    "subfamily": cmd_subfamily,
    "transversal": cmd_transversal,
    "dichotomy": cmd_dichotomy,
    "chirotope": cmd_chirotope,
    "represent": cmd_represent,
    "bounds": cmd_bounds,
    "gen": cmd_gen,
    "render": cmd_render,
    "verify": cmd_verify,
}
NO_FAMILY = {"bounds", "gen"}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="convbodies", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def with_family(name, help):
        sp = sub.add_parser(name, help=help)
        sp.add_argument("family", help="family JSON file ('-' for stdin)")
        return sp

    with_family("check", "configuration assumptions, noncrossing and general position")
    sp = with_family("orient", "orientation set of an ordered triple")
    sp.add_argument("--triple", nargs=3, required=True, metavar="ID")
    sp = with_family("convex-position", "convex position verdict with ordering certificate")
    sp.add_argument("--exhaustive", action="store_true", help="search orderings even when in convex position")
    sp = with_family("order", "first-appearance ordering along the hull boundary")
    sp.add_argument("--convention", choices=["+", "-"], default="+")
    with_family("subfamily", "largest subfamily in convex position")
    sp = with_family("transversal", "line transversal of the whole family (or of --min members)")
    sp.add_argument("--min", type=int, default=None, metavar="T")
    sp = with_family("dichotomy", "t members on a line, or n members in convex position")
    sp.add_argument("--t", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    with_family("chirotope", "sign table of a 3-nondisconnectable family")
    sp = with_family("represent", "search for (or --verify) a representation by points")
    sp.add_argument("--verify", metavar="POINTS_JSON")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--budget", type=int, default=200)
    sp = sub.add_parser("bounds", help="closed-form bounds")
    sp.add_argument("--n", type=int)
    sp.add_argument("--k", type=int)
    sp.add_argument("--l", type=int)
    sp = sub.add_parser("gen", help="generate a family or print a fixture")
    sp.add_argument("--spec", help="generator spec as inline JSON or a JSON file")
    sp.add_argument("--fixture", choices=famgen.FIXTURES)
    sp.add_argument("--kind", choices=famgen.KINDS)
    sp.add_argument("--count", type=int)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--general-position", action="store_true")
    sp = with_family("render", "SVG drawing of the family")
    sp.add_argument("--out", help="write the SVG here instead of stdout")
    sp.add_argument("--line", nargs=3, metavar=("A", "B", "C"), help="draw the line a*x + b*y = c")
    sp.add_argument("--ordering", nargs="+", metavar="ID")
    sp.add_argument("--certificate", metavar="RESULT_JSON", help="draw the certificate of a result document")
    sp = with_family("verify", "re-check the certificate of a result document")
    sp.add_argument("--certificate", required=True, metavar="RESULT_JSON")
    return p


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        family = None if args.command in NO_FAMILY else load_family(args.family)
        out, code = COMMANDS[args.command](args, family)
    except (position.SizeLimitError, famgen.GenerationError) as exc:
        out, code = {"schema": RESULT_SCHEMA, "command": args.command, "error": str(exc)}, EXIT_LIMIT
    except (DocumentError, GeometryError, ValueError, KeyError) as exc:
        out, code = {"schema": RESULT_SCHEMA, "command": args.command, "error": str(exc)}, EXIT_INPUT
    if isinstance(out, str):
        stdout.write(out)
    else:
        stdout.write(dump(out) + "\n")
    if code in (EXIT_INPUT, EXIT_LIMIT):
        print(f"convbodies {args.command}: {out.get('error')}", file=stderr)
    return code


def main() -> None:
    sys.exit(run())
