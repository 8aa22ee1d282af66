"""Command-line surface: partitions, genus, passports, census, bounds,
system emit/solve, the quartic certificate, and degree search.

Output is a pure function of arguments and inputs: everything is sorted,
timings go to stderr and only with --timings.  Exit codes: 0 success,
2 usage error, 3 guard or resource limit.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
import time
from fractions import Fraction

import mpmath

from . import bounds as bounds_mod
from . import census as census_mod
from . import curves as curves_mod
from . import equations as eq_mod
from . import groebner as gb_mod
from .passports import (
    PartitionGuardError,
    enumerate_partitions,
    lower_bound_from_genus,
    parse_lambda,
    rh_genus,
    types_with_genus,
)
from .perm import DegreeGuardError, format_cycles

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_GUARD = 3


def _emit(payload: dict, as_json: bool, text_lines: list[str]) -> None:
    if as_json:
        print(json.dumps(payload, indent=2, sort_keys=True, default=str))
    else:
        for line in text_lines:
            print(line)


def _lambda_str(lam) -> str:
    return str(lam)


# -- subcommand handlers -------------------------------------------------------


def cmd_partitions(args) -> int:
    parts = enumerate_partitions(args.d)
    lines = [str(p) for p in parts]
    lines.append(f"count: {len(parts)}")
    _emit({"degree": args.d, "partitions": [list(p.parts) for p in parts],
           "count": len(parts)}, args.json, lines)
    return EXIT_OK


def cmd_genus(args) -> int:
    lam = parse_lambda(args.lam, args.degree)
    g = rh_genus(lam)
    text = "none" if g is None else str(g)
    _emit({"lambda": _lambda_str(lam), "genus": g}, args.json, [text])
    return EXIT_OK


def cmd_passports(args) -> int:
    entries = census_mod.passport_report(args.degree, args.genus, workers=args.workers)
    payload = []
    lines = []
    for e in entries:
        item = {
            "lambda": _lambda_str(e.lam),
            "genus": e.genus,
            "class_count": e.class_count,
            "cyclic": e.cyclic_count(),
            "noncyclic": e.noncyclic_count(),
        }
        payload.append(item)
        lines.append(f"{item['lambda']}  classes={e.class_count} "
                     f"(cyclic {item['cyclic']}, noncyclic {item['noncyclic']})")
    if not entries:
        lines.append("no ramification types with that genus")
    _emit({"degree": args.degree, "genus": args.genus, "entries": payload},
          args.json, lines)
    return EXIT_OK


def cmd_census(args) -> int:
    lam = parse_lambda(args.lam, args.degree)
    g = rh_genus(lam)
    if g is None:
        _emit({"lambda": _lambda_str(lam), "genus": None, "classes": []},
              args.json,
              ["no genus satisfies the ramification constraint; no covers exist"])
        return EXIT_OK
    triples = census_mod.enumerate_classes(lam, workers=args.workers)
    classes = []
    for t in triples:
        tag = census_mod.classify_monodromy(t)
        from .perm import centralizer_order
        aut = centralizer_order([t.sigma0, t.sigma1])
        classes.append({
            "sigma0": format_cycles(t.sigma0),
            "sigma1": format_cycles(t.sigma1),
            "sigmaInf": format_cycles(t.sigma_inf),
            "monodromy_order": tag.order,
            "tag": tag.kind,
            "automorphisms": aut,
        })
    lines = [f"type {lam}  genus {g}  classes {len(classes)}"]
    for c in classes:
        lines.append(f"  {c['sigma0']} | {c['sigma1']} | {c['sigmaInf']}"
                     f"  monodromy {c['tag']}({c['monodromy_order']})"
                     f"  aut {c['automorphisms']}")
    _emit({"lambda": _lambda_str(lam), "genus": g, "class_count": len(classes),
           "classes": classes}, args.json, lines)
    return EXIT_OK


_MINPOLY_TERM = re.compile(r"([+-]?[^+-]+)")


def _parse_minpoly(text: str) -> tuple[int, ...]:
    """Integer univariate polynomial like 'x^2-2' into coefficient tuple."""
    text = text.replace(" ", "").replace("**", "^")
    if not text:
        raise ValueError("empty polynomial")
    coeffs: dict[int, int] = {}
    for term in _MINPOLY_TERM.findall(text):
        sign = -1 if term.startswith("-") else 1
        body = term.lstrip("+-")
        if not body:
            raise ValueError(f"bad term in {text!r}")
        if "x" in body:
            coeff_part, _, rest = body.partition("x")
            coeff = int(coeff_part.rstrip("*")) if coeff_part.rstrip("*") else 1
            if rest.startswith("^"):
                power = int(rest[1:])
            elif rest == "":
                power = 1
            else:
                raise ValueError(f"bad term {term!r}")
        else:
            coeff = int(body)
            power = 0
        coeffs[power] = coeffs.get(power, 0) + sign * coeff
    degree = max(coeffs)
    return tuple(coeffs.get(i, 0) for i in range(degree + 1))


def cmd_bounds(args) -> int:
    points = []
    for token in args.branch.split(","):
        token = token.strip()
        if not token:
            continue
        if token in ("oo", "inf", "infinity"):
            points.append(bounds_mod.INFINITY)
        else:
            points.append(bounds_mod.rational_point(Fraction(token)))
    for mp in args.minpoly or []:
        points.append(bounds_mod.algebraic_point(_parse_minpoly(mp)))
    if not points:
        raise ValueError("no branch points given")
    bset = bounds_mod.branch_set(points)
    exponent = bounds_mod.khadjavi_exponent(bset.orbit_count)
    bound = bounds_mod.belyi_upper_bound(args.deg_pi, bset)
    lines = [
        f"points: {', '.join(str(p) for p in bset.points)}",
        f"N (Galois orbit count): {bset.orbit_count}",
        f"H (branch height): {bset.height}",
        f"exponent 9*N^3*2^(N-2)*N!: {exponent}",
        f"bound: {bound}",
    ]
    for note in bset.notes:
        lines.append(f"note: {note}")
    with mpmath.workdps(30):
        log10s = mpmath.nstr(bound.log10, 20)
    _emit({
        "N": bset.orbit_count,
        "H": str(bset.height),
        "exponent": str(exponent),
        "deg_pi": args.deg_pi,
        "bound_exact": str(bound.exact) if bound.exact is not None else None,
        "bound_log10": log10s,
        "notes": list(bset.notes),
    }, args.json, lines)
    return EXIT_OK


def _load_fixture(name: str, degree: int):
    return curves_mod.fixture(name, degree=degree)


def cmd_system_emit(args) -> int:
    lam = parse_lambda(args.lam, args.degree)
    g = rh_genus(lam)
    curve, rr = _load_fixture(args.curve, args.degree)
    if g is None or g != curve.genus:
        msg = ("no genus satisfies the ramification constraint"
               if g is None else
               f"type forces genus {g} but curve has genus {curve.genus}")
        _emit({"rejected": msg, "cases": 0}, args.json,
              [f"rejected at the ramification filter: {msg}"])
        return EXIT_OK
    cases = eq_mod.enumerate_cases(curve, rr, lam)
    selected = []
    if args.case == "general":
        selected = [(0, cases[0])]
    elif args.case == "all":
        selected = list(enumerate(cases))
    else:
        idx = int(args.case)
        if not 0 <= idx < len(cases):
            raise ValueError(f"case index {idx} out of range 0..{len(cases) - 1}")
        selected = [(idx, cases[idx])]
    os.makedirs(args.out, exist_ok=True)
    emitted = []
    flagged = []
    for idx, case in selected:
        try:
            system = eq_mod.build_system(curve, rr, lam, case)
        except eq_mod.ChartTransformRequired as exc:
            flagged.append({"case": idx, "label": case.label(), "reason": exc.reason})
            continue
        path = os.path.join(args.out, f"case_{idx:03d}.txt")
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(eq_mod.dump_system(system))
        emitted.append({
            "case": idx,
            "label": case.label(),
            "file": path,
            "variables_core": system.counts["variables_core"],
            "equations_core": system.counts["equations_core"],
            "variables_total": system.counts["variables_total"],
            "equations_total": system.counts["equations_total"],
        })
    lines = [f"cases enumerated: {len(cases)}"]
    for e in emitted:
        lines.append(f"emitted case {e['case']} [{e['label']}] -> {e['file']} "
                     f"core {e['variables_core']}v/{e['equations_core']}e "
                     f"total {e['variables_total']}v/{e['equations_total']}e")
    for f in flagged:
        lines.append(f"flagged case {f['case']} [{f['label']}]: chart transform "
                     f"required ({f['reason']})")
    _emit({"cases": len(cases), "emitted": emitted, "flagged": flagged},
          args.json, lines)
    return EXIT_OK


def cmd_system_solve(args) -> int:
    with open(args.infile, "r", encoding="utf-8") as fh:
        names, polys = eq_mod.parse_system(fh.read())
    order = gb_mod.ORDERS[args.order]
    limits = gb_mod.Limits(max_pairs=args.max_pairs, max_degree=args.max_degree)
    verdict = gb_mod.is_empty_variety(polys, order, limits)
    lines = [f"variables: {len(names)}", f"equations: {len(polys)}",
             f"verdict: {verdict.verdict}"]
    if verdict.stats:
        lines.append(f"stats: {json.dumps(verdict.stats, sort_keys=True)}")
    _emit({"variables": len(names), "equations": len(polys),
           "verdict": verdict.verdict, "stats": verdict.stats},
          args.json, lines)
    return EXIT_OK if verdict.verdict != gb_mod.UNKNOWN else EXIT_GUARD


def cmd_verify(args) -> int:
    if args.target != "fermat4":
        raise ValueError("only the fermat4 certificate is available")
    report = census_mod.verify_fermat4(workers=args.workers)
    lines = []
    for step in report.steps:
        lines.append(f"[{step.provenance}] {step.name}: {step.claim}")
    lines.append(f"belyi degree of {report.curve}: {report.belyi_degree}")
    _emit(report.as_dict(), args.json, lines)
    return EXIT_OK


def cmd_degree_search(args) -> int:
    curve, _ = _load_fixture(args.curve, degree=1)
    genus = curve.genus
    start = lower_bound_from_genus(genus)
    lines = [f"curve {args.curve} (genus {genus}); degree lower bound {start}"]
    found = None
    records = []
    for d in range(start, args.max_degree + 1):
        lams = types_with_genus(d, genus)
        candidates = []
        for lam in lams:
            triples = census_mod.enumerate_classes(lam, workers=args.workers)
            if triples:
                candidates.append({"lambda": _lambda_str(lam),
                                   "classes": len(triples)})
        rec = {"degree": d, "types": len(lams), "candidates": candidates}
        if not candidates:
            lines.append(f"d={d}: {len(lams)} types, census empty - "
                         "no cover of this degree exists on any such curve")
            records.append(rec)
            continue
        lines.append(f"d={d}: census candidates "
                     + ", ".join(f"{c['lambda']} ({c['classes']} classes)"
                                 for c in candidates))
        if not args.with_systems:
            found = d
            rec["verdict"] = "candidate (combinatorial screen only)"
            records.append(rec)
            lines.append(
                f"first degree passing the combinatorial screen: {d} "
                "(equation-level confirmation not run; use --with-systems)")
            break
        verdict = _confirm_with_systems(args, d, genus, lines)
        rec["verdict"] = verdict
        records.append(rec)
        if verdict == "nonempty":
            found = d
            lines.append(f"confirmed minimal degree by equations: {d}")
            break
        if verdict == "unknown":
            lines.append(f"d={d}: equation systems undecided at desk scale; "
                         "stopping with verdict unknown")
            break
    payload = {"curve": args.curve, "genus": genus, "records": records,
               "result": found}
    _emit(payload, args.json, lines)
    return EXIT_OK


def _confirm_with_systems(args, d: int, genus: int, lines: list[str]) -> str:
    curve, rr = _load_fixture(args.curve, degree=d)
    any_unknown = False
    for lam in types_with_genus(d, genus):
        if not census_mod.enumerate_classes(lam, workers=args.workers):
            continue
        cases = eq_mod.enumerate_cases(curve, rr, lam)
        for idx, case in enumerate(cases):
            try:
                system = eq_mod.build_system(curve, rr, lam, case)
            except eq_mod.ChartTransformRequired:
                any_unknown = True
                continue
            if len(system.variables) > args.solve_var_cap:
                any_unknown = True
                if args.out:
                    os.makedirs(args.out, exist_ok=True)
                    path = os.path.join(
                        args.out, f"d{d}_{lam.degree}_{idx:03d}.txt")
                    with open(path, "w", encoding="utf-8") as fh:
                        fh.write(eq_mod.dump_system(system))
                    lines.append(f"d={d} case {idx}: exported to {path} "
                                 "(too large to solve in-process)")
                continue
            verdict = gb_mod.is_empty_variety(list(system.equations))
            if verdict.verdict == gb_mod.NONEMPTY:
                lines.append(f"d={d} {lam} case {idx} [{case.label()}]: nonempty")
                return "nonempty"
            if verdict.verdict == gb_mod.UNKNOWN:
                any_unknown = True
    return "unknown" if any_unknown else "empty"


# -- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="belyi",
        description="Minimal-degree certificates for three-point covers of curves")
    parser.add_argument("--json", action="store_true", help="JSON output")
    parser.add_argument("--timings", action="store_true",
                        help="print elapsed time to stderr")
    parser.add_argument("--workers", type=int, default=None,
                        help="census worker processes (default $BELYI_WORKERS or 1)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("partitions", help="list partitions of d")
    p.add_argument("d", type=int)
    p.set_defaults(func=cmd_partitions)

    p = sub.add_parser("genus", help="genus forced by a ramification type")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--lambda", dest="lam", required=True,
                   help='three partitions, e.g. "7/7/7" or "2,1/2,1/3"')
    p.set_defaults(func=cmd_genus)

    p = sub.add_parser("passports", help="census summary for (degree, genus)")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--genus", type=int, required=True)
    p.set_defaults(func=cmd_passports)

    p = sub.add_parser("census", help="triple classes for one ramification type")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--lambda", dest="lam", required=True)
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("bounds", help="effective degree bound from a branch set")
    p.add_argument("--branch", required=True,
                   help='comma list of rationals and "oo", e.g. "0,1,oo,3/2"')
    p.add_argument("--minpoly", action="append",
                   help='integer minimal polynomial, e.g. "x^2-2" (repeatable)')
    p.add_argument("--deg-pi", dest="deg_pi", type=int, default=1)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("system", help="emit or solve polynomial systems")
    system_sub = p.add_subparsers(dest="system_command", required=True)

    pe = system_sub.add_parser("emit", help="write system files for a type")
    pe.add_argument("--curve", choices=sorted(curves_mod.FIXTURES), required=True)
    pe.add_argument("--degree", type=int, required=True)
    pe.add_argument("--lambda", dest="lam", required=True)
    pe.add_argument("--case", default="general",
                    help='"general", "all", or a case index')
    pe.add_argument("--out", required=True)
    pe.set_defaults(func=cmd_system_emit)

    ps = system_sub.add_parser("solve", help="emptiness of an exported system")
    ps.add_argument("--in", dest="infile", required=True)
    ps.add_argument("--order", choices=sorted(gb_mod.ORDERS), default="grevlex")
    ps.add_argument("--max-pairs", type=int, default=20000)
    ps.add_argument("--max-degree", type=int, default=80)
    ps.set_defaults(func=cmd_system_solve)

    p = sub.add_parser("verify", help="replay a stored degree certificate")
    p.add_argument("target", choices=["fermat4"])
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("degree-search",
                       help="scan degrees with the combinatorial screen")
    p.add_argument("--curve", choices=sorted(curves_mod.FIXTURES), required=True)
    p.add_argument("--max-degree", type=int, default=8)
    p.add_argument("--with-systems", action="store_true",
                   help="confirm candidates by building and solving systems")
    p.add_argument("--out", default=None,
                   help="directory for systems too large to solve")
    p.add_argument("--solve-var-cap", type=int, default=24,
                   help="skip in-process solving above this many variables")
    p.set_defaults(func=cmd_degree_search)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    t0 = time.time()
    try:
        code = args.func(args)
    except (DegreeGuardError, PartitionGuardError, gb_mod.LimitExceeded) as exc:
        print(f"resource guard: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.timings:
        print(f"elapsed: {time.time() - t0:.3f}s", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
