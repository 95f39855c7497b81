"""End-to-end check of the SL(2,3) example with slope 8/3.

The twelve assertions run in order; the first failure is raised as
:class:`VerificationFailed` carrying its step number and description.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .curves import (
    CurveAction,
    CurveType,
    GeneratingVector,
    enumerate_exceptional_types,
    is_rigid_triangle,
)
from .errors import VerificationFailed
from .groups import FiniteGroup, builtin, generates, matrix_element
from .packing import max_packing, packing_ratio, verify_packing
from .slope import (
    EIGHT_THIRDS,
    branch_divisibility_ok,
    cyclic_cover_fiber_genus,
    simple_galois_slope,
)

__all__ = ["G1", "G2", "G3", "PACKING", "EXCEPTIONAL_TABLE", "StepResult", "run_verification"]

# matrices over Z/3, rows first
G1 = ((0, 2), (1, 2))
G2 = ((0, 1), (2, 2))
G3 = ((2, 2), (2, 1))
PACKING = (((1, 0), (0, 1)), ((2, 0), (1, 2)), ((0, 1), (2, 1)))

# (type, m per (g-1), |G| per (g-1))
EXCEPTIONAL_TABLE = (
    ((2, 2, 2, 3), 4, 12),
    ((2, 3, 7), 12, 84),
    ((2, 3, 8), 6, 48),
    ((2, 3, 9), 4, 36),
    ((2, 4, 5), 8, 40),
    ((2, 4, 6), 4, 24),
    ((2, 5, 5), 4, 20),
    ((3, 3, 4), 6, 24),
)


@dataclass(frozen=True)
class StepResult:
    number: int
    description: str


def run_verification(
    group: FiniteGroup | None = None,
    report: Callable[[StepResult], None] | None = None,
) -> list[StepResult]:
    """Run all steps against ``group`` (default: the builtin ``sl2(3)``).

    ``report`` is called after each passing step.
    """
    G = builtin("sl2(3)") if group is None else group
    state: dict[str, object] = {}

    def elements():
        if "elements" not in state:
            state["elements"] = tuple(matrix_element(G, 3, m) for m in (G1, G2, G3))
        return state["elements"]

    def action() -> CurveAction:
        if "action" not in state:
            state["action"] = CurveAction.from_vector(GeneratingVector(G, elements()))
        return state["action"]

    def packing_size() -> int:
        if "m" not in state:
            state["m"] = max_packing(G, action().fixed_set, time_budget=None).m
        return state["m"]

    def exceptional_rows():
        return tuple(
            (r.curve_type.branch_orders, r.m_coefficient, r.order_coefficient)
            for r in enumerate_exceptional_types()
        )

    steps: list[tuple[str, Callable[[], bool]]] = [
        ("sl2(3) has order 24", lambda: G.order == 24),
        ("g1 and g2 generate the group", lambda: generates(G, elements()[:2])),
        (
            "(g1, g2, g3) has type (3,3,4)",
            lambda: G.product(elements()) == 0
            and action().curve_type == CurveType.of(3, 3, 4),
        ),
        ("the curve has genus 2", lambda: action().genus == 2),
        (
            "the explicit three-element set is a packing",
            lambda: verify_packing(
                G, action().fixed_set, [matrix_element(G, 3, m) for m in PACKING]
            ),
        ),
        ("the maximum packing has m = 3", lambda: packing_size() == 3),
        (
            "m/(g-1) = 3",
            lambda: packing_ratio(packing_size(), action().genus) == 3,
        ),
        ("simple Galois slope of (3,3,3) over genus 2 is 8/3",
         lambda: simple_galois_slope(2, (3, 3, 3)) == EIGHT_THIRDS),
        ("the cyclic triple cover has fibre genus 7", lambda: cyclic_cover_fiber_genus(3, 2, 3) == 7),
        ("3 branch graphs are divisible by r = 3", lambda: branch_divisibility_ok(3, 3)),
        ("(3,3,4) is a rigid triangle type", lambda: is_rigid_triangle(CurveType.of(3, 3, 4))),
        (
            "the exceptional types match the 8-row table",
            lambda: exceptional_rows()
            == tuple((t, Fraction(a), Fraction(b)) for t, a, b in EXCEPTIONAL_TABLE),
        ),
    ]

    passed = []
    for number, (description, check) in enumerate(steps, 1):
        try:
            ok = bool(check())
            detail = ""
        except Exception as exc:  # any error is a failed step, reported by name
            ok, detail = False, f" ({type(exc).__name__}: {exc})"
        if not ok:
            raise VerificationFailed(f"step {number} failed: {description}{detail}")
        step = StepResult(number, description)
        passed.append(step)
        if report is not None:
            report(step)
    return passed
