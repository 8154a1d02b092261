"""Command-line front end.

Ranks are always Lie ranks: ``--type A --rank r`` is ``SL_{r+1}``, ``B r`` is
``SO_{2r+1}``, ``C r`` is ``Sp_{2r}`` and ``D r`` is ``SO_{2r}``.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from math import comb
from typing import Sequence

from .fpt_engine import (
    TABLE1_CAPTION,
    TABLE2_CAPTION,
    FlagQuery,
    FptResult,
    MethodDisagreement,
    QueryError,
    TableRow,
    evaluate,
    render_table,
    table1,
    table2,
)
from .lattices import (
    FinitePoset,
    LatticeError,
    YoungLatticeSpec,
    build_idn,
    build_young,
    minuscule_lattice,
    principal_chain,
)
from .root_system import RootSystemError, RootSystemType

REPORT_SCHEMA = "flagfpt.report/v1"
TABLE_SCHEMA = "flagfpt.table/v1"

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_PRECONDITION = 3
EXIT_DISAGREEMENT = 4

RANK_HELP = "Lie rank: A r = SL_(r+1), B r = SO_(2r+1), C r = Sp_(2r), D r = SO_(2r)"


def rational(x: Fraction | int) -> dict[str, int]:
    x = Fraction(x)
    return {"num": x.numerator, "den": x.denominator}


def report_json(res: FptResult, elapsed: float | None = None) -> dict:
    q = res.query
    return {
        "schema": REPORT_SCHEMA,
        "query": {
            "type": q.type.family,
            "rank": q.type.rank,
            "removed": list(q.parab.removed),
            "weight": q.weight,
            "multiple": q.multiple,
        },
        "fpt": rational(res.fpt),
        "a_invariant": res.a_invariant,
        "gorenstein": res.gorenstein,
        "f_pure": res.f_pure,
        "lct": rational(res.lct),
        "methods": list(res.methods),
        "witnesses": {k: rational(v) for k, v in res.witnesses.items()},
        "timings": {"total_ms": round(1000 * elapsed, 3) if elapsed is not None else None},
    }


def report_text(res: FptResult) -> str:
    a = "not derived (non-Gorenstein)" if res.a_invariant is None else str(res.a_invariant)
    lines = [
        f"query:       {res.query.label()}",
        f"fpt:         {res.fpt}",
        f"lct:         {res.lct}",
        f"a-invariant: {a}",
        f"gorenstein:  {str(res.gorenstein).lower()}",
        f"f-pure:      {str(res.f_pure).lower()}",
        f"methods:     {', '.join(res.methods)}",
    ]
    lines += [f"  {k:<12} {v}" for k, v in res.witnesses.items()]
    return "\n".join(lines)


def table_json(which: int, rows: Sequence[TableRow], caption: str) -> dict:
    return {
        "schema": TABLE_SCHEMA,
        "table": which,
        "caption": caption,
        "rows": [
            {
                "label": row.label,
                "indices": row.indices,
                "variety": row.variety,
                "formula": row.formula,
                "cells": [
                    {
                        "type": c.type.family,
                        "rank": c.type.rank,
                        "d": c.d,
                        "fpt": rational(c.fpt),
                        "lct": rational(c.result.lct),
                        "methods": list(c.result.methods),
                    }
                    for c in row.cells
                ],
            }
            for row in rows
        ],
    }


def _label(x) -> str:
    return "(" + ",".join(str(v) for v in x) + ")"


def hasse_dot(p: FinitePoset, name: str | None = None) -> str:
    """DOT digraph of the cover relation, edges pointing up, principal chain highlighted.

    Consecutive chain elements are usually not covers, so each chain step is
    drawn as its own red edge; ``constraint=false`` keeps the cover ranking.
    """
    steps = principal_chain(p).elements
    chain = set(steps)
    ids = {x: f"n{i}" for i, x in enumerate(p.elements)}
    title = (name or p.name or "poset").replace('"', "'")
    out = [f'digraph "{title}" {{', "  rankdir=BT;", "  node [shape=box, fontname=monospace];"]
    for x in p.elements:
        attrs = f'label="{_label(x)}"'
        if x in chain:
            attrs += ", style=filled, fillcolor=gold, penwidth=2"
        out.append(f"  {ids[x]} [{attrs}];")
    covers = set(p.hasse_edges())
    chain_steps = set(zip(steps, steps[1:]))
    for lo, hi in p.hasse_edges():
        if (lo, hi) not in chain_steps:
            out.append(f"  {ids[lo]} -> {ids[hi]};")
    for lo, hi in zip(steps, steps[1:]):
        style = "color=red, penwidth=2" if (lo, hi) in covers else "color=red, penwidth=2, style=dashed, constraint=false"
        out.append(f"  {ids[lo]} -> {ids[hi]} [{style}];")
    out.append("}")
    return "\n".join(out) + "\n"


def _int_list(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="flagfpt",
        description="F-pure thresholds and a-invariants of coordinate rings of flag varieties G/Q.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fpt", help="evaluate one flag variety", description=RANK_HELP)
    p.add_argument("--type", required=True, choices=list("ABCDEFG"), type=str.upper)
    p.add_argument("--rank", required=True, type=_positive, help=RANK_HELP)
    p.add_argument("--removed", required=True, type=_int_list,
                   help="simple roots removed from Delta, e.g. 2,3,5 (Bourbaki numbering)")
    weight = p.add_mutually_exclusive_group()
    weight.add_argument("--veronese", type=_positive, metavar="M", help="use the weight M*varpi_d (maximal Q)")
    weight.add_argument("--rho-multiple", type=_positive, metavar="M", help="use the weight M*rho_I (non-maximal Q)")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--fast", action="store_true", help="run only the first applicable method")

    t = sub.add_parser("table", help="reproduce Table 1 (minuscule) or Table 2 (exceptional)")
    t.add_argument("which", type=int, choices=[1, 2])
    t.add_argument("--rank-bound", type=_positive, default=8, help="largest Lie rank for the Table 1 families")
    t.add_argument("--format", choices=["text", "json"], default="text")

    h = sub.add_parser("hasse", help="DOT Hasse diagram with the principal chain highlighted")
    h.add_argument("--cap", type=_positive, default=500, help="refuse posets larger than this (default 500)")
    h.add_argument("--format", choices=["dot"], default="dot")
    hs = h.add_subparsers(dest="lattice", required=True)
    hi = hs.add_parser("idn", help="I(d,n)")
    hi.add_argument("d", type=_positive)
    hi.add_argument("n", type=_positive)
    hy = hs.add_parser("young", help="Young lattice H_Q of SL_n")
    hy.add_argument("n", type=_positive)
    hy.add_argument("ds", type=_int_list)
    hm = hs.add_parser("minuscule", help="minuscule lattice of (type, Lie rank, d)")
    hm.add_argument("type", choices=list("ABCDEFG"), type=str.upper)
    hm.add_argument("rank", type=_positive)
    hm.add_argument("d", type=_positive)
    hm.add_argument("--model", choices=["auto", "tuple", "weight"], default="auto")

    s = sub.add_parser("selftest", help="run the cross-validation suite")
    s.add_argument("--max-rank", type=_positive, default=8, help="largest Lie rank for the classical families")
    s.add_argument("--golden", help="alternate golden-value fixture (JSON)")
    s.add_argument("--no-errata", action="store_true", help="compare Table 2 with the fixture values verbatim, ignoring errata")
    return parser


def cmd_fpt(args) -> int:
    start = time.perf_counter()
    q = FlagQuery.make(args.type, args.rank, args.removed, veronese=args.veronese, rho_multiple=args.rho_multiple)
    res = evaluate(q, strict=not args.fast)
    elapsed = time.perf_counter() - start
    if args.format == "json":
        print(json.dumps(report_json(res, elapsed), indent=2))
    else:
        print(report_text(res))
    return EXIT_OK


def cmd_table(args) -> int:
    if args.which == 1:
        rows, caption = table1(args.rank_bound), TABLE1_CAPTION
    else:
        rows, caption = table2(), TABLE2_CAPTION
    if args.format == "json":
        print(json.dumps(table_json(args.which, rows, caption), indent=2))
    else:
        print(render_table(rows, caption, by_rank=args.which == 1))
    return EXIT_OK


def _over_cap(size: int, cap: int) -> bool:
    if size > cap:
        print(f"error: poset has {size} elements, above the cap of {cap}; raise it with --cap", file=sys.stderr)
        return True
    return False


def cmd_hasse(args) -> int:
    # size is known up front for the tuple lattices; check before building the order matrix
    if args.lattice == "idn":
        if 1 <= args.d <= args.n and _over_cap(comb(args.n, args.d), args.cap):
            return EXIT_PRECONDITION
        p = build_idn(args.d, args.n)
    elif args.lattice == "young":
        spec = YoungLatticeSpec(args.n, tuple(args.ds))
        if _over_cap(sum(comb(args.n, d) for d in spec.ds), args.cap):
            return EXIT_PRECONDITION
        p = build_young(spec)
    else:
        p = minuscule_lattice(RootSystemType(args.type, args.rank), None, args.d, model=args.model)
    if _over_cap(len(p), args.cap):
        return EXIT_PRECONDITION
    sys.stdout.write(hasse_dot(p))
    return EXIT_OK


def cmd_selftest(args) -> int:
    from .selftest import run_checks

    checks = run_checks(args.max_rank, args.golden, use_errata=not args.no_errata)
    failed = [c for c in checks if not c.ok]
    for c in checks:
        status = "PASS" if c.ok else "FAIL"
        print(f"{status}  {c.name}" + (f": {c.detail}" if c.detail else ""))
    print(f"{len(checks) - len(failed)}/{len(checks)} checks passed")
    if failed:
        print("failed: " + "; ".join(c.name for c in failed))
        return EXIT_FAILED
    return EXIT_OK


COMMANDS = {"fpt": cmd_fpt, "table": cmd_table, "hasse": cmd_hasse, "selftest": cmd_selftest}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except MethodDisagreement as exc:
        print(f"internal disagreement: {exc}", file=sys.stderr)
        return EXIT_DISAGREEMENT
    except (QueryError, RootSystemError, LatticeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    raise SystemExit(main())
