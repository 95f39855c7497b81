"""Command-line interface: ``autpack <command> ...``.

All numbers are printed exactly (``p/q`` or ``p``). Errors go to stderr
with exit status 2; a failed verification exits with status 1.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Sequence, TextIO

from .configfile import load_configuration
from .curves import (
    CurveAction,
    CurveType,
    enumerate_exceptional_types,
    enumerate_generating_vectors,
    mu_upper_bound,
    riemann_hurwitz_genus,
)
from .errors import AutpackError, VerificationFailed
from .groups import FiniteGroup, builtin, is_builtin_spec, load_catalog
from .packing import DEFAULT_TIME_BUDGET, max_packing, packing_ratio
from .scenario import run_verification
from .search import (
    SearchSpec,
    bundled_catalog,
    default_catalog,
    format_fraction,
    ratio_table,
    ratio_table_csv,
    ratio_table_text,
    records_csv,
    records_text,
    report_header,
    run_search,
)
from .slope import EIGHT_THIRDS, check_slope_bound, invariants

BUDGET_ENV = "GPL_TIME_BUDGET"


class UsageError(Exception):
    pass


def _budget(args: argparse.Namespace) -> float:
    if args.budget is not None:
        return args.budget
    env = os.environ.get(BUDGET_ENV)
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"{BUDGET_ENV} must be an integer number of seconds, got {env!r}")
    return DEFAULT_TIME_BUDGET


def _catalog(args: argparse.Namespace) -> list[FiniteGroup]:
    groups: list[FiniteGroup] = []
    for path in args.catalog:
        groups += load_catalog(path)
    return groups


def _resolve_group(name: str, args: argparse.Namespace) -> FiniteGroup:
    if is_builtin_spec(name):
        return builtin(name)
    for G in _catalog(args):
        if G.name == name:
            return G
    raise UsageError(f"unknown group {name!r}: not a builtin spec and not in any --catalog file")


def _curve_type(text: str) -> CurveType:
    try:
        return CurveType.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _coef(q) -> str:
    return f"{format_fraction(q)}(g-1)"


# ---------------------------------------------------------------------------
# commands


def cmd_types(args, out: TextIO) -> int:
    rows = enumerate_exceptional_types()
    if args.format == "csv":
        out.write("type,m_coefficient,order_coefficient\n")
        for r in rows:
            out.write(f"\"{r.curve_type.label}\",{_coef(r.m_coefficient)},{_coef(r.order_coefficient)}\n")
    else:
        for r in rows:
            out.write(f"{r.curve_type.label} {_coef(r.m_coefficient)} {_coef(r.order_coefficient)}\n")
    return 0


def cmd_genus(args, out: TextIO) -> int:
    ct = args.type
    out.write(f"{riemann_hurwitz_genus(args.order, ct.quotient_genus, ct.branch_orders)}\n")
    return 0


def _vectors(args):
    G = _resolve_group(args.group, args)
    vectors = enumerate_generating_vectors(G, args.type, args.require_distinct)
    return G, vectors


def cmd_vectors(args, out: TextIO) -> int:
    G, vectors = _vectors(args)
    out.write(f"group {G.name} order {G.order} type {args.type.label}\n")
    if not vectors:
        out.write("no generating vectors\n")
        return 0
    genus = CurveAction.from_vector(vectors[0]).genus
    out.write(f"genus {genus}, {len(vectors)} vector classes up to conjugation\n")
    for i, v in enumerate(vectors, 1):
        out.write(f"{i}: {' '.join(map(str, v.elements))}\n")
    return 0


def cmd_pack(args, out: TextIO) -> int:
    G, vectors = _vectors(args)
    budget = _budget(args)
    actions = [CurveAction.from_vector(v) for v in vectors]
    out.write(f"group {G.name} order {G.order} type {args.type.label}\n")
    if not vectors:
        out.write("no generating vectors\n")
        return 0
    best = None
    for i, (v, action) in enumerate(zip(vectors, actions), 1):
        res = max_packing(G, action.fixed_mask, time_budget=budget)
        flag = " (time budget hit: lower bound)" if res.time_bounded else ""
        out.write(
            f"class {i}: vector {' '.join(map(str, v.elements))} |F|={len(action.fixed_set)} "
            f"m={res.m} witness {' '.join(map(str, res.witness))}{flag}\n"
        )
        if best is None or res.m > best[1].m:
            best = (i, res, action.genus)
    i, res, genus = best
    cap = mu_upper_bound(G.order, args.type.branch_orders[-1])
    out.write(
        f"best: m={res.m} from class {i}, genus {genus}, "
        f"ratio {_coef(packing_ratio(res.m, genus))}, |G|/nu_k={cap}\n"
    )
    return 0


def cmd_slope(args, out: TextIO) -> int:
    config = load_configuration(args.config)
    inv = invariants(config)
    out.write(f"c2 {format_fraction(inv.c2)}\n")
    out.write(f"c1^2 {format_fraction(inv.c1sq)}\n")
    out.write(f"sigma {format_fraction(inv.sigma)}\n")
    out.write(f"slope {format_fraction(inv.slope)}\n")
    out.write(f"components {config.m}, galois {'yes' if config.galois else 'no'}, "
              f"simple {'yes' if config.simple else 'no'}\n")
    relation = "below" if inv.slope < 3 else "equal to" if inv.slope == 3 else "above"
    out.write(f"slope is {relation} 3\n")
    g = config.genus2
    if config.galois and config.simple and config.m and g >= 2 and config.m <= 3 * (g - 1):
        verdict = check_slope_bound(g, config.ramification_indices())
        if verdict.slope != inv.slope:
            raise UsageError("simple Galois slope disagrees with the configuration's slope")
        out.write(f"8/3 bound (m={config.m} <= 3(g-1)={verdict.capacity}): {verdict.verdict}, "
                  f"gap {format_fraction(verdict.gap)}\n")
    else:
        relation = "below" if inv.slope < EIGHT_THIRDS else "equal to" if inv.slope == EIGHT_THIRDS else "above"
        out.write(f"8/3 bound not applicable; slope is {relation} 8/3\n")
    return 0


def cmd_search(args, out: TextIO) -> int:
    catalog = default_catalog() + bundled_catalog() + _catalog(args)
    if args.group:
        by_name = {G.name: G for G in catalog}
        chosen = {}
        for name in args.group:
            G = by_name.get(name) or (builtin(name) if is_builtin_spec(name) else None)
            if G is None:
                raise UsageError(f"unknown group {name!r}")
            chosen[G.name] = by_name.get(G.name, G)
        catalog = list(chosen.values())
    kwargs = {}
    if args.type:
        kwargs["types"] = tuple(args.type)
    try:
        spec = SearchSpec(
            max_genus=args.max_genus,
            catalog=tuple(catalog),
            per_instance_budget=_budget(args),
            require_distinct=args.require_distinct,
            **kwargs,
        )
    except ValueError as exc:
        raise UsageError(str(exc))
    records = run_search(spec, jobs=args.jobs)
    flags = {
        "max_genus": args.max_genus,
        "types": ";".join(t.label for t in spec.types),
        "require_distinct": args.require_distinct,
        "budget": f"{spec.per_instance_budget:g}s",
    }
    if args.group:
        flags["groups"] = ";".join(sorted(G.name for G in catalog))
    header = report_header(["bundled:small-groups.cat", *args.catalog], flags)
    if args.table:
        rows = ratio_table(records)
        text = ratio_table_csv(rows, header) if args.format == "csv" else ratio_table_text(rows, header)
    else:
        text = records_csv(records, header) if args.format == "csv" else records_text(records, header)
    out.write(text)
    return 0


def cmd_verify_paper(args, out: TextIO) -> int:
    def show(step):
        out.write(f"ok {step.number:2d} {step.description}\n")

    run_verification(report=show)
    out.write("all 12 checks passed\n")
    return 0


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--catalog", action="append", default=[], metavar="FILE",
                        help="group catalog file (repeatable)")
    common.add_argument("--format", choices=("csv", "text"), default="text")

    solver = argparse.ArgumentParser(add_help=False)
    solver.add_argument("--budget", type=float, default=None, metavar="SECONDS",
                        help=f"per-instance solver budget (default {BUDGET_ENV} or "
                             f"{int(DEFAULT_TIME_BUDGET)})")
    solver.add_argument("--require-distinct", action="store_true",
                        help="only use generating vectors with pairwise distinct entries")

    p = argparse.ArgumentParser(prog="autpack", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    sub.add_parser("types", parents=[common], help="list the exceptional types")

    sp = sub.add_parser("genus", parents=[common], help="Riemann-Hurwitz genus")
    sp.add_argument("order", type=int)
    sp.add_argument("type", type=_curve_type, help="e.g. h=0;2,3,7")

    for name, help_ in (("vectors", "generating vectors up to conjugation"),
                        ("pack", "maximum packing for each vector class")):
        sp = sub.add_parser(name, parents=[common, solver], help=help_)
        sp.add_argument("group", help="builtin spec such as sl2(3), or a catalog name")
        sp.add_argument("type", type=_curve_type)

    sp = sub.add_parser("slope", parents=[common], help="invariants of a configuration file")
    sp.add_argument("config")

    sp = sub.add_parser("search", parents=[common, solver], help="catalog-limited packing search")
    sp.add_argument("--max-genus", type=int, default=4)
    sp.add_argument("--type", type=_curve_type, action="append", default=[],
                    help="restrict to this type (repeatable; default: exceptional types)")
    sp.add_argument("--group", action="append", default=[],
                    help="restrict to this group (repeatable)")
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--table", action="store_true", help="print the per-type ratio table")

    sub.add_parser("verify-paper", parents=[common], help="check the SL(2,3) slope-8/3 example")
    return p


_COMMANDS = {
    "types": cmd_types,
    "genus": cmd_genus,
    "vectors": cmd_vectors,
    "pack": cmd_pack,
    "slope": cmd_slope,
    "search": cmd_search,
    "verify-paper": cmd_verify_paper,
}


def main(argv: Sequence[str] | None = None, out: TextIO | None = None) -> int:
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args, out)
    except VerificationFailed as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return 1
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (AutpackError, ValueError, ZeroDivisionError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


def main_entry() -> None:
    sys.exit(main())
