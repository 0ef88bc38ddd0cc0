"""Command-line front end: ``ics <command> EXPR ...``.

Exit codes: 0 success or affirmative verdict, 2 usage error, 3 negative
verdict, 4 a closed form disagreed with brute force.
"""
from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from itertools import product as iproduct

from . import closed_forms as cf
from .exprparser import ExprSemanticError, ExprSyntaxError, build, parse_expr, size_of
from .ics import enumerate_ics
from .poset import DEFAULT_MAX_ELEMENTS, Poset, PosetError, product_of_chains
from .rowmotion import functional_graph_dot, orbit_decomposition, rowmotion_map
from .stats import Statistic, csp_check, homomesy_report, parse_statistic

EXIT_OK, EXIT_USAGE, EXIT_NEGATIVE, EXIT_VERIFY = 0, 2, 3, 4


class UsageError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def element_cap(allow_large: bool) -> int:
    raw = os.environ.get("ICS_MAX_ELEMENTS")
    if raw is None:
        return DEFAULT_MAX_ELEMENTS
    if not allow_large:
        raise UsageError("ICS_MAX_ELEMENTS is set; pass --allow-large to acknowledge the override")
    try:
        cap = int(raw)
    except ValueError:
        raise UsageError(f"ICS_MAX_ELEMENTS must be an integer, got {raw!r}") from None
    if cap < 1:
        raise UsageError("ICS_MAX_ELEMENTS must be positive")
    return cap


def load(args) -> tuple[Poset, str]:
    node = parse_expr(args.expr)
    cap = element_cap(args.allow_large)
    size = size_of(node)
    if size > cap:
        raise UsageError(f"{node} has {size} elements, over the cap of {cap} "
                         "(raise it with ICS_MAX_ELEMENTS and --allow-large)")
    return build(node), str(node)


def _set_str(p: Poset, s: int) -> str:
    return "{" + ",".join(p.label(x) for x in p.members(s)) + "}"


def _write(path: str, text: str) -> None:
    with open(path, "w") as fh:
        fh.write(text)


# -- commands -----------------------------------------------------------------

def cmd_enumerate(args) -> int:
    p, expr = load(args)
    family = enumerate_ics(p, ordered=args.seed_order == "canonical", jobs=args.jobs)
    out = sys.stdout
    if args.format == "json":
        d = {"expr": expr, "count": len(family)}
        if not args.count_only:
            d["elements"] = [p.label(x) for x in range(p.n)]
            d["sets"] = [p.members(s) for s in family]
        print(_dump(d), file=out)
    elif args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        if args.count_only:
            w.writerows([["count"], [len(family)]])
        else:
            w.writerow(["id", "size", "members"])
            for k, s in enumerate(family):
                w.writerow([k, bin(s).count("1"), " ".join(p.label(x) for x in p.members(s))])
    else:
        print(len(family), file=out)
        if not args.count_only:
            for s in family:
                print(_set_str(p, s), file=out)
    return EXIT_OK


def cmd_orbits(args) -> int:
    p, expr = load(args)
    dec = orbit_decomposition(p, jobs=args.jobs)
    if args.format == "json":
        d = dec.to_dict(p, members=args.members)
        d["expr"] = expr
        print(_dump(d))
    elif args.format == "csv":
        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerow(["orbit", "size", "members"])
        for k, o in enumerate(dec.orbits):
            w.writerow([k, o.size, " ".join(_set_str(p, s) for s in o.members)])
    else:
        print(f"poset: {expr}")
        print(f"interval-closed sets: {dec.total}")
        print(f"orbits: {len(dec.orbits)}")
        print("sizes: " + " ".join(f"{s}x{k}" for s, k in dec.size_counts().items()))
        print(f"order: {dec.order}")
        if args.members:
            for k, o in enumerate(dec.orbits):
                print(f"  [{k}] size {o.size}: " + " -> ".join(_set_str(p, s) for s in o.members))
    if args.dot:
        _write(args.dot, functional_graph_dot(p, rowmotion_map(p, jobs=args.jobs)))
    if args.figure:
        from .plotting import orbit_histogram
        orbit_histogram(dec, args.figure, title=f"{expr}: order {dec.order}")
    return EXIT_OK


def cmd_homomesy(args) -> int:
    p, expr = load(args)
    stat = parse_statistic(p, args.stat)
    rep = homomesy_report(p, stat, orbit_decomposition(p, jobs=args.jobs))
    if args.format == "json":
        d = rep.to_dict()
        d["expr"] = expr
        print(_dump(d))
    elif args.format == "csv":
        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerow(["orbit", "size", "average"])
        for k, (a, s) in enumerate(zip(rep.averages, rep.sizes)):
            w.writerow([k, s, f"{a.numerator}/{a.denominator}"])
    else:
        print(f"poset: {expr}")
        print(f"statistic: {rep.stat}")
        for k, (a, s) in enumerate(zip(rep.averages, rep.sizes)):
            print(f"  orbit {k} (size {s}): average {a}")
        if rep.homomesic:
            print(f"homomesic: yes, c = {rep.c}")
        else:
            i, j = rep.witness
            print(f"homomesic: no, orbit {i} averages {rep.averages[i]} "
                  f"but orbit {j} averages {rep.averages[j]}")
    if args.figure:
        from .plotting import orbit_averages
        orbit_averages(rep, args.figure, title=f"{expr}: {rep.stat}")
    return EXIT_OK if rep.homomesic else EXIT_NEGATIVE


def cmd_csp(args) -> int:
    p, expr = load(args)
    stat = parse_statistic(p, args.stat)
    try:
        v = csp_check(p, stat, orbit_decomposition(p, jobs=args.jobs))
    except ValueError as e:
        raise UsageError(str(e)) from None
    if args.format == "json":
        print(_dump({"expr": expr, "stat": stat.id, "order": v.order,
                     "holds": v.holds, "failing_d": v.failing_d}))
    else:
        print(f"poset: {expr}\nstatistic: {stat.id}\norder: {v.order}")
        if v.holds:
            print("cyclic sieving: holds")
        else:
            print(f"cyclic sieving: fails at d = {v.failing_d} "
                  f"({v.fixed_points[v.failing_d]} fixed points)")
    return EXIT_OK if v.holds else EXIT_NEGATIVE


def cmd_verify(args) -> int:
    bad = 0
    rows = []
    for c in cf.verify(args.scope):
        bad += not c.ok
        if args.format == "json":
            rows.append(c.to_dict())
        else:
            params = ",".join(str(x) for x in c.params)
            status = "ok" if c.ok else f"FAIL predicted {c.predicted} observed {c.observed}"
            print(f"{c.formula:<38} {params:<16} {status}")
    if args.format == "json":
        print(_dump({"scope": args.scope, "checks": rows, "failures": bad}))
    else:
        print(f"{bad} failure(s)" if bad else "all formulas ok")
    return EXIT_VERIFY if bad else EXIT_OK


def conjecture_cases(name: str, max_sum: int, max_elements: int) -> list[tuple[int, int]]:
    if name == "4.5":
        return [(m, n) for m, n in iproduct(range(1, max_sum), repeat=2)
                if m + n <= max_sum and m * n <= max_elements]
    if name == "4.6":
        return [(m, n) for m in (2, 3) for n in range(1, max_elements + 1)
                if (m + n - 1) % 2 == 0 and m * n <= max_elements]
    raise UsageError(f"unknown conjecture {name!r}; choose 4.5 or 4.6")


def scan_conjecture(name: str, max_sum: int = 9, max_elements: int = 24,
                    stat: str | None = None, on_case=None) -> tuple[bool, list[dict]]:
    """Check 0-mesy on every case in the budget; returns (all passed, per-case records)."""
    default = "max_minus_min" if name == "4.5" else "signed_cardinality"
    records = []
    ok = True
    for m, n in conjecture_cases(name, max_sum, max_elements):
        p = product_of_chains(m, n)
        rep = homomesy_report(p, Statistic(stat or default))
        passed = rep.homomesic and rep.global_average == 0
        ok = ok and passed
        rec = {"m": m, "n": n, "pass": passed, "orbits": len(rep.averages),
               "averages": sorted({str(a) for a in rep.averages})}
        records.append(rec)
        if on_case:
            on_case(rec)
    return ok, records


def cmd_conjecture(args) -> int:
    max_elements = args.max_elements or (10 ** 6 if args.name == "4.5" else 24)

    def show(rec):
        if args.format == "text":
            status = "ok" if rec["pass"] else "counterexample, averages " + " ".join(rec["averages"])
            print(f"[{rec['m']}]x[{rec['n']}]: {rec['orbits']} orbits, {status}")
    ok, records = scan_conjecture(args.name, args.max_sum, max_elements, args.stat, show)
    verdict = "PASS" if ok else "COUNTEREXAMPLE"
    if args.format == "json":
        print(_dump({"conjecture": args.name, "verdict": verdict, "cases": records}))
    else:
        note = "" if ok else " (first: [{m}]x[{n}])".format(**next(r for r in records if not r["pass"]))
        print(f"{verdict}{note}: {len(records)} case(s) checked; a finite check, not a proof")
    return EXIT_OK if ok else EXIT_NEGATIVE


def cmd_poset(args) -> int:
    p, expr = load(args)
    if args.format == "json":
        print(_dump(p.to_dict()))
    else:
        print(f"poset: {expr}\nelements: {p.n}\ncovers: {len(p.covers)}")
        print("ranked: " + ("yes" if p.is_ranked else "no"))
        for a, b in sorted(p.covers):
            print(f"  {p.label(a)} < {p.label(b)}")
    if args.dot:
        _write(args.dot, p.to_dot())
    return EXIT_OK


# -- argument parsing ---------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ics", description="Interval-closed sets and rowmotion on finite posets.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp, stat=False, formats=("text", "json", "csv")):
        sp.add_argument("expr", help='poset expression, e.g. "prod(chain(2),chain(5))"')
        if stat:
            sp.add_argument("stat", help="statistic, e.g. cardinality or toggleability:top")
        sp.add_argument("--format", choices=formats, default="text")
        sp.add_argument("--jobs", type=int, default=1, help="worker processes (output does not depend on it)")
        sp.add_argument("--allow-large", action="store_true",
                        help="acknowledge an ICS_MAX_ELEMENTS override of the element cap")

    sp = sub.add_parser("enumerate", help="list interval-closed sets")
    common(sp)
    sp.add_argument("--count-only", action="store_true")
    sp.add_argument("--seed-order", choices=("canonical", "generation"), default="canonical")
    sp.set_defaults(func=cmd_enumerate)

    sp = sub.add_parser("orbits", help="rowmotion orbit decomposition")
    common(sp)
    sp.add_argument("--members", action="store_true", help="list the sets in every orbit")
    sp.add_argument("--dot", metavar="FILE", help="write the rowmotion functional graph")
    sp.add_argument("--figure", metavar="FILE", help="write an orbit-size histogram")
    sp.set_defaults(func=cmd_orbits)

    sp = sub.add_parser("homomesy", help="orbit averages of a statistic")
    common(sp, stat=True)
    sp.add_argument("--figure", metavar="FILE", help="write a per-orbit averages plot")
    sp.set_defaults(func=cmd_homomesy)

    sp = sub.add_parser("csp", help="cyclic sieving check for a nonnegative statistic")
    common(sp, stat=True, formats=("text", "json"))
    sp.set_defaults(func=cmd_csp)

    sp = sub.add_parser("poset", help="describe or export a poset")
    common(sp, formats=("text", "json"))
    sp.add_argument("--dot", metavar="FILE", help="write the Hasse diagram")
    sp.set_defaults(func=cmd_poset)

    sp = sub.add_parser("verify", help="check closed forms against brute force")
    sp.add_argument("scope", choices=("quick", "full"))
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("conjecture", help="scan a homomesy conjecture on products of two chains")
    sp.add_argument("name", choices=("4.5", "4.6"))
    sp.add_argument("--max-sum", type=int, default=9, help="largest m+n (4.5)")
    sp.add_argument("--max-elements", type=int, default=None,
                    help="largest m*n (default 24 for 4.6, unbounded for 4.5)")
    sp.add_argument("--stat", default=None, help="replace the conjectured statistic (negative tests)")
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.set_defaults(func=cmd_conjecture)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if getattr(args, "jobs", 1) < 1:
        ap.error("--jobs must be at least 1")
    try:
        return args.func(args)
    except (ExprSyntaxError, ExprSemanticError, PosetError, UsageError, ValueError) as e:
        print(f"ics: error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
