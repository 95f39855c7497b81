"""Sweeps over (group, type, genus) triples and the resulting ratio tables.

Every report is catalog-limited: only groups supplied in the catalog are
examined, so an observed maximum is a lower bound for the true one.
"""

from __future__ import annotations

import csv
import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from typing import Iterable, Sequence

from .curves import (
    CurveAction,
    CurveType,
    enumerate_exceptional_types,
    enumerate_generating_vectors,
    forced_group_order,
    lambda_invariant,
    mu_upper_bound,
)
from .errors import SearchError
from .groups import FiniteGroup, builtin, parse_catalog
from .packing import DEFAULT_TIME_BUDGET, max_packing, packing_ratio
from .slope import optimal_uniform_ramification, simple_galois_slope

__all__ = [
    "DEFAULT_BUILTINS",
    "REFERENCE_BOUNDS",
    "SearchSpec",
    "SearchRecord",
    "RatioRow",
    "default_catalog",
    "bundled_catalog",
    "groups_for",
    "run_search",
    "replay",
    "ratio_table",
    "format_fraction",
    "report_header",
    "records_csv",
    "records_text",
    "ratio_table_csv",
    "ratio_table_text",
]

# Builtins whose orders cover the exceptional types at small genus
# (12, 20, 24, 36, 40, 48, 84, 120, 168 ...) plus a few small groups.
DEFAULT_BUILTINS: tuple[str, ...] = (
    "cyclic(12)",
    "abelian(2,6)",
    "dihedral(6)",
    "alternating(4)",
    "product(cyclic(2),symmetric(3))",
    "cyclic(20)",
    "dihedral(10)",
    "abelian(2,10)",
    "sl2(3)",
    "symmetric(4)",
    "dihedral(12)",
    "product(cyclic(2),alternating(4))",
    "product(cyclic(4),symmetric(3))",
    "product(cyclic(2),dihedral(6))",
    "cyclic(24)",
    "abelian(2,12)",
    "dihedral(18)",
    "product(cyclic(3),alternating(4))",
    "product(symmetric(3),symmetric(3))",
    "product(cyclic(3),cyclic(12))",
    "dihedral(20)",
    "product(cyclic(2),dihedral(10))",
    "product(cyclic(2),symmetric(4))",
    "product(cyclic(2),sl2(3))",
    "dihedral(24)",
    "dihedral(42)",
    "product(cyclic(2),psl2(7))",
    "alternating(5)",
    "symmetric(5)",
    "sl2(5)",
    "product(cyclic(2),alternating(5))",
    "psl2(7)",
    "sl2(7)",
    "alternating(6)",
    "psl2(11)",
    "symmetric(6)",
    "psl2(13)",
)

# Published upper bounds for m per (g - 1), with the genus up to which
# they were established by exhaustive computation.
REFERENCE_BOUNDS: dict[tuple[int, ...], tuple[Fraction, int]] = {
    (2, 2, 2, 3): (Fraction(2), 30),
    (2, 3, 7): (Fraction(3), 23),
    (2, 3, 8): (Fraction(3), 23),
    (2, 3, 9): (Fraction(2), 23),
    (2, 4, 5): (Fraction(2), 23),
    (2, 4, 6): (Fraction(2), 50),
    (2, 5, 5): (Fraction(4, 3), 50),
    (3, 3, 4): (Fraction(3), 50),
}

BUNDLED_CATALOG = "small-groups.cat"


def default_catalog() -> list[FiniteGroup]:
    return [builtin(spec) for spec in DEFAULT_BUILTINS]


def bundled_catalog() -> list[FiniteGroup]:
    """Extra permutation groups shipped with the package (Q8, GL(2,3), ...)."""
    text = resources.files("autpack").joinpath("data").joinpath(BUNDLED_CATALOG).read_text("utf-8")
    return parse_catalog(io.StringIO(text))


def format_fraction(q: Fraction | int) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class SearchSpec:
    max_genus: int
    types: tuple[CurveType, ...] = field(
        default_factory=lambda: tuple(r.curve_type for r in enumerate_exceptional_types())
    )
    catalog: tuple[FiniteGroup, ...] = ()
    per_instance_budget: float | None = DEFAULT_TIME_BUDGET
    require_distinct: bool = False
    min_genus: int = 2

    def __post_init__(self) -> None:
        object.__setattr__(self, "types", tuple(self.types))
        object.__setattr__(self, "catalog", tuple(self.catalog))
        if self.max_genus < 2 or self.min_genus < 2:
            raise ValueError("genus bounds must be at least 2")
        if any(t.quotient_genus != 0 for t in self.types):
            raise ValueError("search types must have quotient genus 0")
        names = [G.name for G in self.catalog]
        dupes = sorted({n for n in names if names.count(n) > 1})
        if dupes:
            raise ValueError(f"duplicate catalog names: {', '.join(dupes)}")


@dataclass(frozen=True)
class SearchRecord:
    group: str
    order: int
    curve_type: CurveType
    genus: int
    vector_classes: int
    m: int
    ratio: Fraction
    best_vector: tuple[int, ...]
    witness: tuple[int, ...]
    slope_all_threes: Fraction
    optimal_r: int
    optimal_slope: Fraction
    truncated: bool
    nodes: int = field(default=0, compare=False)

    @property
    def sort_key(self) -> tuple:
        return (self.curve_type, self.genus, self.group)


def groups_for(
    curve_type: CurveType, genus: int, catalog: Iterable[FiniteGroup]
) -> list[FiniteGroup]:
    """Catalog members of the order forced by Riemann-Hurwitz."""
    order = forced_group_order(curve_type, genus)
    if order is None:
        return []
    return [G for G in catalog if G.order == order]


def _solve(
    group: FiniteGroup,
    curve_type: CurveType,
    genus: int,
    budget: float | None,
    require_distinct: bool,
) -> SearchRecord | None:
    vectors = enumerate_generating_vectors(group, curve_type, require_distinct)
    if not vectors:
        return None
    best = None
    truncated = False
    nodes = 0
    for vec in vectors:
        action = CurveAction.from_vector(vec)
        if action.genus != genus:
            raise SearchError(f"{group.name} {curve_type.label}: genus {action.genus} != {genus}")
        res = max_packing(group, action.fixed_mask, time_budget=budget)
        truncated |= res.time_bounded
        nodes += res.nodes_explored
        if best is None or res.m > best[0].m:
            best = (res, vec)
    res, vec = best
    m = res.m
    ratio = packing_ratio(m, genus)
    cap = mu_upper_bound(group.order, curve_type.branch_orders[-1])
    if m > cap:
        raise SearchError(f"{group.name} {curve_type.label} g={genus}: m={m} exceeds |G|/nu_k={cap}")
    coefficient = 2 / lambda_invariant(curve_type)
    if ratio > coefficient:
        raise SearchError(
            f"{group.name} {curve_type.label} g={genus}: ratio {ratio} exceeds {coefficient}"
        )
    r_opt, s_opt = optimal_uniform_ramification(genus, m)
    return SearchRecord(
        group=group.name,
        order=group.order,
        curve_type=curve_type,
        genus=genus,
        vector_classes=len(vectors),
        m=m,
        ratio=ratio,
        best_vector=vec.elements,
        witness=res.witness,
        slope_all_threes=simple_galois_slope(genus, [3] * m),
        optimal_r=r_opt,
        optimal_slope=s_opt,
        truncated=truncated,
        nodes=nodes,
    )


def _solve_packed(args) -> SearchRecord | None:
    return _solve(*args)


def run_search(spec: SearchSpec, jobs: int = 1) -> list[SearchRecord]:
    """Best packing per (type, genus, group), sorted by that key.

    Work items are independent; with ``jobs > 1`` they run in worker
    processes, and the result does not depend on scheduling.
    """
    catalog = sorted(spec.catalog, key=lambda G: G.name)
    items = []
    for ct in sorted(set(spec.types)):
        for g in range(spec.min_genus, spec.max_genus + 1):
            for G in groups_for(ct, g, catalog):
                items.append((G, ct, g, spec.per_instance_budget, spec.require_distinct))
    if jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_solve_packed, items))
    else:
        results = [_solve_packed(item) for item in items]
    return sorted((r for r in results if r is not None), key=lambda r: r.sort_key)


def replay(record: SearchRecord, group: FiniteGroup, budget: float | None = None) -> int:
    """Re-solve the stored vector class; returns the packing size."""
    from .curves import GeneratingVector

    action = CurveAction.from_vector(GeneratingVector(group, record.best_vector))
    return max_packing(group, action.fixed_mask, time_budget=budget).m


@dataclass(frozen=True)
class RatioRow:
    curve_type: CurveType
    max_ratio: Fraction
    witness_group: str
    witness_genus: int
    genus_min: int
    genus_max: int
    coefficient: Fraction  # 2/lambda, the a-priori bound per (g-1)
    reference_bound: Fraction | None
    reference_genus: int | None
    truncated: bool


def ratio_table(records: Sequence[SearchRecord]) -> list[RatioRow]:
    by_type: dict[CurveType, list[SearchRecord]] = {}
    for rec in sorted(records, key=lambda r: r.sort_key):
        by_type.setdefault(rec.curve_type, []).append(rec)
    rows = []
    for ct, recs in by_type.items():
        top = max(recs, key=lambda r: r.ratio)  # first maximum in sort order
        ref = REFERENCE_BOUNDS.get(ct.branch_orders) if ct.quotient_genus == 0 else None
        rows.append(
            RatioRow(
                curve_type=ct,
                max_ratio=top.ratio,
                witness_group=top.group,
                witness_genus=top.genus,
                genus_min=min(r.genus for r in recs),
                genus_max=max(r.genus for r in recs),
                coefficient=2 / lambda_invariant(ct),
                reference_bound=ref[0] if ref else None,
                reference_genus=ref[1] if ref else None,
                truncated=any(r.truncated for r in recs),
            )
        )
    return rows


# ---------------------------------------------------------------------------
# reports


def report_header(catalog_files: Sequence[str], flags: dict[str, object]) -> str:
    files = ",".join(catalog_files) if catalog_files else "none"
    flag_text = " ".join(f"{k}={v}" for k, v in sorted(flags.items()))
    return (
        "# catalog-limited: only listed groups were examined; "
        f"catalogs=builtin-defaults,{files}; flags: {flag_text}"
    )


_RECORD_COLUMNS = (
    "type", "genus", "group", "order", "vector_classes", "m", "ratio",
    "slope_all_threes", "optimal_r", "optimal_slope", "truncated", "best_vector", "witness",
)


def _record_values(r: SearchRecord) -> list[str]:
    return [
        r.curve_type.label,
        str(r.genus),
        r.group,
        str(r.order),
        str(r.vector_classes),
        str(r.m),
        format_fraction(r.ratio),
        format_fraction(r.slope_all_threes),
        str(r.optimal_r),
        format_fraction(r.optimal_slope),
        "yes" if r.truncated else "no",
        " ".join(map(str, r.best_vector)),
        " ".join(map(str, r.witness)),
    ]


def _csv(header: str, columns: Sequence[str], rows: Iterable[list[str]]) -> str:
    buf = io.StringIO()
    buf.write(header + "\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    writer.writerows(rows)
    return buf.getvalue()


def _text(header: str, columns: Sequence[str], rows: Iterable[list[str]], title: str) -> str:
    out = [header]
    for i, row in enumerate(rows, 1):
        out.append(f"{title} {i}")
        out.extend(f"  {c}: {v}" for c, v in zip(columns, row))
    return "\n".join(out) + "\n"


def records_csv(records: Sequence[SearchRecord], header: str) -> str:
    return _csv(header, _RECORD_COLUMNS, map(_record_values, records))


def records_text(records: Sequence[SearchRecord], header: str) -> str:
    return _text(header, _RECORD_COLUMNS, map(_record_values, records), "record")


_RATIO_COLUMNS = (
    "type", "observed_max", "witness_group", "witness_genus", "genus_range",
    "coefficient", "reference_bound", "reference_up_to_genus", "truncated",
)


def _ratio_values(row: RatioRow) -> list[str]:
    ref = "-" if row.reference_bound is None else f"{format_fraction(row.reference_bound)}(g-1)"
    return [
        row.curve_type.label,
        f"{format_fraction(row.max_ratio)}(g-1)",
        row.witness_group,
        str(row.witness_genus),
        f"{row.genus_min}-{row.genus_max}",
        f"{format_fraction(row.coefficient)}(g-1)",
        ref,
        "-" if row.reference_genus is None else str(row.reference_genus),
        "yes" if row.truncated else "no",
    ]


def ratio_table_csv(rows: Sequence[RatioRow], header: str) -> str:
    return _csv(header, _RATIO_COLUMNS, map(_ratio_values, rows))


def ratio_table_text(rows: Sequence[RatioRow], header: str) -> str:
    return _text(header, _RATIO_COLUMNS, map(_ratio_values, rows), "type")
