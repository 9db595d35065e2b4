"""Command-line surface.

Subcommands construct the named charts, assemble the graded answer,
evaluate the Stiefel-Whitney predicate, print tableaux, and run the
verification suites.  Exit codes: 0 success, 2 usage error, 3 scope or
structure error.
"""
from __future__ import annotations

import argparse
import sys

from .chart import ChartError, StructureError, group_at, strict_equiv, weak_equiv
from .charts import make_M, make_Mhat, make_Mstar, make_V, make_Vstar
from .edges import (build_edge, build_edge_prime, build_upper_edge,
                    closed_form_edge, closed_form_upper_edge)
from .render import render
from .summands import (build_A, build_A_tilde, build_B, build_B_tilde,
                       build_B_tilde_small)
from .cohomology import build_A_star, build_B_star
from .applications import sw_predicate
from .assembly import (ScopeError, duality_audit, free_part_series,
                       genthm_partition, ko_cohomology, ko_homology,
                       tableau_A, tableau_B)


def _group_str(exps):
    if not exps:
        return "0"
    return " + ".join(f"Z/{2 ** e}" for e in exps)


def cmd_mchart(args):
    if args.coh is not None:
        ch = make_Mstar(args.k, args.coh, args.max)
    else:
        ch = make_M(args.k, args.i, args.max)
    print(render(ch, args.format))


def cmd_edge(args):
    if args.prime:
        ch = build_edge_prime(args.e, args.l, args.max)
    elif args.closed_form:
        ch = closed_form_edge(args.e, args.l, args.max) if args.e >= 2 \
            else closed_form_upper_edge(args.l, args.max)
    elif args.e == 1:
        ch = build_upper_edge(args.l, args.max)
    else:
        ch = build_edge(args.e, args.l, args.max,
                        keep_sources=args.keep_sources)
    print(render(ch, args.format))


def cmd_summand(args):
    if args.which == "A":
        if args.star:
            ch = build_A_star(args.k, args.max)
        elif args.tilde:
            ch = build_A_tilde(args.k, args.max)
        else:
            ch = build_A(args.k, args.max)
    else:
        if args.l is None:
            raise ChartError("B summands need --l")
        if args.star:
            ch = build_B_star(args.k, args.l, args.z, args.max)
        elif args.tilde:
            ch = (build_B_tilde_small if args.k <= 2 else build_B_tilde)(
                args.k, args.l, args.z, args.max)
        else:
            ch = build_B(args.k, args.l, args.z, args.max)
    print(render(ch, args.format))


def cmd_ko(args):
    rep = ko_homology(args.max, include_free=args.with_free)
    if args.format == "json":
        import json
        rows = {}
        for n, tors, free in rep.rows():
            entry = {"order_exponents": tors,
                     "contributors": [f"{c.family}_{c.k}" +
                                      (f",{c.l}" if c.l else "") +
                                      (f" z^{c.z}" if c.z else "") +
                                      f" @{c.suspension}"
                                      for c in rep.contributors_at(n)]}
            if args.with_free:
                entry["free_rank"] = free
            rows[n] = entry
        print(json.dumps(rows, indent=1))
        return
    for n, tors, free in rep.rows():
        if not tors and not free:
            continue
        line = f"{n:3d}  {_group_str(tors)}"
        if args.with_free and free:
            line += f"  + Z/2 free x{free}" if free > 1 else "  + Z/2 free"
        names = [f"{c.family}{c.k}" + (f",{c.l}" if c.l else "") +
                 (f"[z^{c.z}]" if c.z else "") + f"@{c.suspension}"
                 for c in rep.contributors_at(n)]
        if names:
            line += "   (" + "; ".join(names) + ")"
        print(line)


def cmd_ko_coh(args):
    rep = ko_cohomology(args.max)
    for n in range(0, args.max + 1):
        tors = rep.group(n)
        if tors:
            print(f"{n:3d}  {_group_str(tors)}")


def cmd_free_series(args):
    print(free_part_series())


def cmd_sw(args):
    v = sw_predicate(args.n)
    if v.exists:
        name, grading, order = v.witness
        print(f"yes; witness {name}, grading {grading}, Z/{2 ** order}")
    else:
        msg = f"no Spin manifold of dimension {args.n} detected"
        if v.note:
            msg += f" ({v.note})"
        print(msg)


def cmd_tableau(args):
    rows = (tableau_A(args.k) if args.which == "A"
            else tableau_B(args.k, args.l, args.z))
    for (tgt, src), label in rows:
        line = f"{tgt} <- {src}"
        if label:
            line += f"   ({label[0]},{label[1]})"
        print(line)


def cmd_check(args):
    from . import checks
    suites = (checks.SUITES.keys() if args.suite == "all" else [args.suite])
    failed = 0
    for name in suites:
        for label, ok in checks.SUITES[name]():
            print(f"[{'PASS' if ok else 'FAIL'}] {name}: {label}")
            failed += 0 if ok else 1
    if failed:
        print(f"{failed} check(s) failed")
        sys.exit(1)
    print("all checks passed")


def main(argv=None):
    p = argparse.ArgumentParser(prog="kochart")
    sub = p.add_subparsers(dest="cmd", required=True)

    q = sub.add_parser("mchart", help="standard M chart")
    q.add_argument("--k", type=int, required=True)
    q.add_argument("--i", type=int, default=0)
    q.add_argument("--coh", type=int, default=None,
                   help="build the cohomological variant with this shift")
    q.add_argument("--max", type=int, default=40)
    q.add_argument("--format", default="ascii",
                   choices=["ascii", "svg", "json", "tikz"])
    q.set_defaults(func=cmd_mchart)

    q = sub.add_parser("edge", help="edge or pre-edge chart")
    q.add_argument("--e", type=int, required=True)
    q.add_argument("--l", type=int, required=True)
    q.add_argument("--prime", action="store_true")
    q.add_argument("--closed-form", action="store_true")
    q.add_argument("--keep-sources", action="store_true")
    q.add_argument("--max", type=int, default=0)
    q.add_argument("--format", default="ascii",
                   choices=["ascii", "svg", "json", "tikz"])
    q.set_defaults(func=cmd_edge)

    q = sub.add_parser("summand", help="A or B summand chart")
    q.add_argument("which", choices=["A", "B"])
    q.add_argument("--k", type=int, required=True)
    q.add_argument("--l", type=int, default=None)
    q.add_argument("--z", type=int, default=0)
    q.add_argument("--star", action="store_true")
    q.add_argument("--tilde", action="store_true")
    q.add_argument("--max", type=int, default=0)
    q.add_argument("--format", default="ascii",
                   choices=["ascii", "svg", "json", "tikz"])
    q.set_defaults(func=cmd_summand)

    q = sub.add_parser("ko", help="assembled homology through a grading")
    q.add_argument("--max", type=int, required=True)
    q.add_argument("--with-free", action="store_true")
    q.add_argument("--format", default="table", choices=["table", "json"])
    q.set_defaults(func=cmd_ko)

    q = sub.add_parser("ko-coh", help="assembled cohomology through a degree")
    q.add_argument("--max", type=int, required=True)
    q.set_defaults(func=cmd_ko_coh)

    q = sub.add_parser("free-series", help="series of the trivial part")
    q.set_defaults(func=cmd_free_series)

    q = sub.add_parser("sw", help="dual Stiefel-Whitney detector")
    q.add_argument("--n", type=int, required=True)
    q.set_defaults(func=cmd_sw)

    q = sub.add_parser("tableau", help="symbolic tableau of a summand")
    q.add_argument("which", choices=["A", "B"])
    q.add_argument("--k", type=int, required=True)
    q.add_argument("--l", type=int, default=None)
    q.add_argument("--z", type=int, default=0)
    q.set_defaults(func=cmd_tableau)

    q = sub.add_parser("check", help="verification suites")
    q.add_argument("--suite", default="all",
                   choices=["edges", "duality", "tableau", "fixtures", "all"])
    q.set_defaults(func=cmd_check)

    try:
        args = p.parse_args(argv)
    except SystemExit as e:
        raise SystemExit(2 if e.code not in (0, None) else 0)
    try:
        args.func(args)
    except (ScopeError, StructureError) as e:
        print(f"error: {e}", file=sys.stderr)
        sys.exit(3)
    except ChartError as e:
        print(f"error: {e}", file=sys.stderr)
        sys.exit(2)
    return 0


if __name__ == "__main__":
    main()
