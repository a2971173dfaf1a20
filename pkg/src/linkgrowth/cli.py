"""Command-line front end: ``linkgrowth {table,alex,mahler,cover,growth}``."""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .alexander import alexander_data
from .covers import (branch_column_count, build_complex, homology_direct, homology_relative,
                     sigma_prime_rank)
from .growth import emit, estimate_rate, parse_family, run_family, to_csv, to_json
from .laurent import LaurentPoly, format_poly, parse_poly
from .lattices import parse_lattice
from .linkio import (BUILTINS, LinkDiagram, builtin_link, builtin_polynomial, parse_pd,
                     pd_to_diagram, resolve_name, wirtinger)
from .mahler import DEFAULT_TOL, mahler

SCHEMA_PATH = Path(__file__).with_name("schema.json")

EXIT_OK, EXIT_COMPUTE, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _common(parser: argparse.ArgumentParser, suppress: bool) -> None:
    # Global flags are accepted before or after the subcommand; the subparser copies use
    # SUPPRESS so they only override when given.
    dflt = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--tol", type=float, default=dflt(DEFAULT_TOL),
                        help="quadrature tolerance on log M")
    parser.add_argument("--threads", type=int, default=dflt(1), help="worker processes for growth")
    parser.add_argument("--seed", type=int, default=dflt(0), help="root-finder seed")
    parser.add_argument("--format", choices=("text", "json", "csv"), default=dflt("text"))


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="linkgrowth",
                                 description="Alexander polynomials, Mahler measures and "
                                             "homology growth of abelian branched covers.")
    _common(ap, suppress=False)
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, help_):
        p = sub.add_parser(name, help=help_)
        _common(p, suppress=True)
        return p

    add("table", "list built-in links")

    def link_source(p):
        g = p.add_mutually_exclusive_group(required=True)
        g.add_argument("--link", help="built-in name or alias")
        g.add_argument("--pd", help="PD code text, e.g. 'X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]'")
        g.add_argument("--diagram-json", help="file holding a LinkDiagram as JSON")
        p.add_argument("--free-components", type=int, default=None,
                       help="with --pd: number of extra crossingless components")

    p = add("alex", "Alexander polynomial")
    link_source(p)

    p = add("mahler", "Mahler measure")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--poly", help="Laurent polynomial, e.g. '2 - u1 - u2 + 2*u1*u2'")
    g.add_argument("--link", help="built-in link (its Alexander polynomial)")

    p = add("cover", "homology of a branched cover")
    link_source(p)
    p.add_argument("--lattice", required=True, help="diag:3,2 | cyclic:7 | cols:2,1;-1,2 | scalar:n")
    p.add_argument("--method", choices=("direct", "relative", "both"), default="relative")

    p = add("growth", "torsion growth along a lattice family")
    p.add_argument("--link", required=True)
    p.add_argument("--family", required=True, help="cyclic:R | diag:N | list:SPEC|SPEC...")
    p.add_argument("--tail", type=int, default=10)
    p.add_argument("--method", choices=("direct", "relative"), default="relative")
    p.add_argument("--out", default=None, help="write the series here (csv or json)")
    return ap


def _known(name: str) -> str:
    try:
        return resolve_name(name).name
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _diagram(args) -> LinkDiagram:
    if args.link:
        return builtin_link(_known(args.link))
    if args.pd:
        return pd_to_diagram(parse_pd(args.pd), free_components=args.free_components)
    try:
        text = Path(args.diagram_json).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {args.diagram_json}: {exc}") from None
    return LinkDiagram.from_json(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def cmd_table(args, out) -> int:
    rows = []
    for b in BUILTINS.values():
        rows.append({"name": b.name, "aliases": list(b.aliases), "components": b.components,
                     "delta": b.known_delta, "has_diagram": b.name != "lehmer-poly",
                     "note": b.note})
    if args.format == "json":
        print(_dump(rows), file=out)
        return EXIT_OK
    w = max(len(r["name"]) for r in rows)
    for r in rows:
        alias = ",".join(r["aliases"]) or "-"
        print(f"{r['name']:<{w}}  d={r['components']}  aliases={alias:<22}  Delta = {r['delta']}",
              file=out)
    return EXIT_OK


def cmd_alex(args, out) -> int:
    res = alexander_data(wirtinger(_diagram(args)))
    rec = {"delta": format_poly(res.delta), "det_R": format_poly(res.det_R),
           "convention_note": res.convention_note}
    if args.format == "json":
        print(_dump(rec), file=out)
    else:
        print(rec["delta"], file=out)
        print(json.dumps(rec, sort_keys=True), file=out)
    return EXIT_OK


def _poly_for(args) -> LaurentPoly:
    if args.poly is not None:
        return parse_poly(args.poly)
    name = _known(args.link)
    p = builtin_polynomial(name)
    if p is not None:
        return p
    return alexander_data(wirtinger(builtin_link(name))).delta


def cmd_mahler(args, out) -> int:
    f = _poly_for(args)
    res = mahler(f, tol=args.tol, seed=args.seed)
    rec = {"polynomial": format_poly(f), "value": res.value, "log_value": res.log_value,
           "method": res.method, "error_bound": res.error_bound, "converged": res.converged}
    if args.format == "json":
        print(_dump(rec), file=out)
    else:
        print(f"M = {res.value:.10f}  log M = {res.log_value:.10f}  "
              f"(method {res.method}, error bound {res.error_bound:.2e})", file=out)
    return EXIT_OK if res.converged else EXIT_COMPUTE


def cmd_cover(args, out) -> int:
    pres = wirtinger(_diagram(args))
    lam = parse_lattice(args.lattice, pres.d)
    q = build_complex(pres, lam)
    extra = {"sigma_prime_rank": sigma_prime_rank(pres, lam),
             "branch_columns": branch_column_count(pres, lam)}
    summaries = {}
    if args.method in ("relative", "both"):
        summaries["relative"] = homology_relative(q)
    if args.method in ("direct", "both"):
        summaries["direct"] = homology_direct(q)
    if "relative" in summaries:
        sfix = summaries["relative"].sfix_dim
    else:  # dim SFix - betti = m - 1
        sfix = summaries["direct"].betti + q.m - 1

    def rec(h):
        d = h.to_dict()
        d["sfix_dim"] = sfix
        d.update(extra)
        return d

    if args.method == "both":
        a, b = summaries["direct"], summaries["relative"]
        payload = {"direct": rec(a), "relative": rec(b), "agree": a.same_group(b)}
    else:
        payload = rec(summaries[args.method])
    if args.format == "json":
        print(_dump(payload), file=out)
    else:
        for name, h in summaries.items():
            tors = " x ".join(f"Z/{x}" for x in h.invariant_factors) or "0"
            print(f"{name}: H1 = Z^{h.betti} + ({tors})  |T| = {h.torsion_order}  "
                  f"m = {h.index}  <L> = {h.shortest_vector}", file=out)
        print(f"sigma' rank = {extra['sigma_prime_rank']}  branch columns = "
              f"{extra['branch_columns']}  dim SFix = {sfix}", file=out)
        if args.method == "both":
            print("paths agree" if payload["agree"] else "PATHS DISAGREE", file=out)
    if args.method == "both" and not payload["agree"]:
        return EXIT_COMPUTE
    return EXIT_OK


def cmd_growth(args, out) -> int:
    name = _known(args.link)
    pres = wirtinger(builtin_link(name))
    fam = parse_family(args.family)
    if fam.kind == "cyclic" and pres.d != 1:
        raise UsageError("cyclic families need a knot; use diag:N for links")
    series = run_family(pres, fam, method=args.method, threads=args.threads, tol=args.tol,
                        seed=args.seed, link=name)
    rate = estimate_rate(series, min(args.tail, len(series)))
    summary = {"link": name, "family": series.family, "mode": series.mode, "note": series.note,
               "reference_polynomial": None if series.reference_poly is None
               else format_poly(series.reference_poly),
               "failures": len(series.failures), **rate.to_dict()}
    fmt = args.format
    if args.out:
        emit(series, "json" if fmt == "json" else "csv", args.out)
    if fmt == "csv":
        if not args.out:
            out.write(to_csv(series.records))
        print(_dump(summary), file=sys.stderr)
    elif fmt == "json":
        if not args.out:
            print(_dump({"summary": summary, "records": json.loads(to_json(series.records))}),
                  file=out)
        else:
            print(_dump(summary), file=out)
    else:
        for r in series:
            if r.error:
                print(f"{r.lattice:<14} m={r.m:<5} FAILED: {r.error}", file=out)
            else:
                print(f"{r.lattice:<14} m={r.m:<5} betti={r.betti:<3} "
                      f"log(b)/m={r.normalized_log:.6f}", file=out)
        ref = "n/a" if rate.reference_log_M is None else f"{rate.reference_log_M:.6f}"
        gap = "n/a" if rate.abs_gap is None else f"{rate.abs_gap:.6f}"
        print(f"last={rate.last:.6f} tail_max={rate.tail_max:.6f} (tail {rate.tail}) "
              f"log M={ref} gap={gap}  [{series.note}]", file=out)
    return EXIT_COMPUTE if series.failures else EXIT_OK


COMMANDS = {"table": cmd_table, "alex": cmd_alex, "mahler": cmd_mahler,
            "cover": cmd_cover, "growth": cmd_growth}


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.format == "csv" and args.command != "growth":
        print("linkgrowth: error: --format csv is only available for growth", file=sys.stderr)
        return EXIT_USAGE
    try:
        return COMMANDS[args.command](args, out)
    except UsageError as exc:
        print(f"linkgrowth: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, ArithmeticError, OSError) as exc:
        print(f"linkgrowth: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_COMPUTE


if __name__ == "__main__":
    sys.exit(main())
