"""Group actions on curves: Riemann-Hurwitz bookkeeping, generating vectors
and the set of elements that have fixed points."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Sequence

import numpy as np

from .errors import GenusTooSmall, NegativeGenus, NonDivisor, NonIntegralGenus
from .groups import FiniteGroup, generates

__all__ = [
    "CurveType",
    "GeneratingVector",
    "CurveAction",
    "ExceptionalType",
    "riemann_hurwitz_genus",
    "forced_group_order",
    "enumerate_generating_vectors",
    "fixed_point_elements",
    "fixed_point_mask",
    "mu_upper_bound",
    "lambda_invariant",
    "enumerate_exceptional_types",
    "is_rigid_triangle",
]


@dataclass(frozen=True, order=True)
class CurveType:
    """Quotient genus and branch multiplicities, kept sorted ascending."""

    quotient_genus: int
    branch_orders: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        orders = tuple(sorted(int(v) for v in self.branch_orders))
        if self.quotient_genus < 0:
            raise ValueError("quotient genus must be non-negative")
        if any(v < 2 for v in orders):
            raise ValueError(f"branch orders must be >= 2, got {orders}")
        object.__setattr__(self, "branch_orders", orders)

    @classmethod
    def of(cls, *orders: int, h: int = 0) -> "CurveType":
        return cls(h, tuple(orders))

    @classmethod
    def parse(cls, text: str) -> "CurveType":
        """Parse the ``h=0;2,3,7`` notation."""
        try:
            head, _, tail = text.strip().partition(";")
            key, _, value = head.partition("=")
            if key.strip() != "h" or not _:
                raise ValueError
            h = int(value)
            orders = tuple(int(v) for v in tail.split(",") if v.strip())
        except ValueError:
            raise ValueError(f"bad curve type {text!r}; expected e.g. 'h=0;2,3,7'") from None
        return cls(h, orders)

    @property
    def k(self) -> int:
        return len(self.branch_orders)

    def __str__(self) -> str:
        return f"h={self.quotient_genus};" + ",".join(map(str, self.branch_orders))

    @property
    def label(self) -> str:
        """``(2,3,7)`` style label; the quotient genus is shown only if nonzero."""
        inner = "(" + ",".join(map(str, self.branch_orders)) + ")"
        return inner if self.quotient_genus == 0 else f"h={self.quotient_genus}{inner}"

    def orbifold_characteristic(self) -> Fraction:
        """``2h - 2 + sum(1 - 1/nu)``; the genus of a cover of degree n is
        then ``n * this / 2 + 1``."""
        return 2 * self.quotient_genus - 2 + sum(
            (1 - Fraction(1, v) for v in self.branch_orders), Fraction(0)
        )


def riemann_hurwitz_genus(group_order: int, h: int, branch_orders: Sequence[int]) -> int:
    """Genus of a curve with a ``group_order`` action of the given type.

    >>> riemann_hurwitz_genus(24, 0, (3, 3, 4))
    2
    """
    if group_order < 1:
        raise ValueError("group order must be positive")
    two_g_minus_2 = group_order * CurveType(h, tuple(branch_orders)).orbifold_characteristic()
    genus = two_g_minus_2 / 2 + 1
    if genus.denominator != 1:
        raise NonIntegralGenus(
            f"|G|={group_order}, h={h}, {tuple(branch_orders)} gives 2g-2 = {two_g_minus_2}"
        )
    if genus < 0:
        raise NegativeGenus(f"|G|={group_order}, h={h}, {tuple(branch_orders)} gives g = {genus}")
    return int(genus)


def forced_group_order(curve_type: CurveType, genus: int) -> int | None:
    """The only order a group acting with this type on a genus-``genus``
    curve can have, or None when it is not a positive integer."""
    chi = curve_type.orbifold_characteristic()
    if chi <= 0:
        return None
    order = Fraction(2 * genus - 2) / chi
    if order.denominator != 1 or order < 1:
        return None
    return int(order)


@dataclass(frozen=True)
class GeneratingVector:
    """Elements ``g1..gk`` with product 1 that generate the group."""

    group: FiniteGroup = field(repr=False)
    elements: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "elements", tuple(int(x) for x in self.elements))
        if self.group.product(self.elements) != 0:
            raise ValueError(f"product of {self.elements} is not the identity")
        if not generates(self.group, self.elements):
            raise ValueError(f"{self.elements} do not generate {self.group.name}")

    @property
    def orders(self) -> tuple[int, ...]:
        return tuple(int(self.group.element_orders[x]) for x in self.elements)

    @property
    def curve_type(self) -> CurveType:
        return CurveType(0, self.orders)


def _canonical_conjugate(group: FiniteGroup, elements: Sequence[int]) -> tuple[int, ...]:
    """Lexicographically least simultaneous conjugate of ``elements``."""
    conj = group.conjugation
    cols = [conj[:, x] for x in elements]
    best = np.lexsort(cols[::-1])[0]
    return tuple(int(c[best]) for c in cols)


def enumerate_generating_vectors(
    group: FiniteGroup, curve_type: CurveType, require_distinct: bool = False
) -> list[GeneratingVector]:
    """All generating vectors of ``curve_type`` up to simultaneous conjugation.

    Each class is represented by its lexicographically least member, and the
    result is sorted. Slot ``i`` has order ``branch_orders[i]``.
    """
    if curve_type.quotient_genus != 0:
        raise ValueError("vector enumeration supports quotient genus 0 only")
    k = curve_type.k
    if k < 3:
        raise ValueError("vector enumeration needs at least three branch points")

    nus = curve_type.branch_orders
    orders = group.element_orders
    if any(group.order % v for v in nus):
        return []
    by_order = {v: np.flatnonzero(orders == v) for v in set(nus)}
    if any(by_order[v].size == 0 for v in nus):
        return []
    mul, inv = group.mul, group.inv
    # smallest member of each class is its representative
    class_reps = [c[0] for c in group.conjugacy_classes]
    first = [x for x in class_reps if orders[x] == nus[0]]

    found: set[tuple[int, ...]] = set()
    middle_slots = [by_order[v] for v in nus[1 : k - 2]]
    for g1 in first:
        for middle in itertools.product(*middle_slots):
            prefix = (g1, *(int(x) for x in middle))
            p = group.product(prefix)
            cand = by_order[nus[k - 2]]
            last = inv[mul[p, cand]]
            keep = orders[last] == nus[k - 1]
            for gk1, gk in zip(cand[keep], last[keep]):
                vec = (*prefix, int(gk1), int(gk))
                if require_distinct and len(set(vec)) != k:
                    continue
                if not generates(group, vec[:-1]):
                    continue
                found.add(_canonical_conjugate(group, vec))
    return [GeneratingVector(group, v) for v in sorted(found)]


def fixed_point_mask(group: FiniteGroup, elements: Sequence[int]) -> np.ndarray:
    """Boolean mask of the nontrivial elements conjugate to a power of some
    ``elements[i]``; these are exactly the automorphisms with fixed points."""
    mask = np.zeros(group.order, dtype=bool)
    class_ids = group.class_ids
    hit_classes = set()
    for g in elements:
        x = 0
        while True:
            x = int(group.mul[x, g])
            if x == 0:
                break
            hit_classes.add(int(class_ids[x]))
    if hit_classes:
        mask[np.isin(class_ids, list(hit_classes))] = True
    mask[0] = False
    mask.setflags(write=False)
    return mask


def fixed_point_elements(group: FiniteGroup, elements: Sequence[int]) -> frozenset[int]:
    """The fixed-point set F for a (possibly empty) generating vector."""
    return frozenset(int(v) for v in np.flatnonzero(fixed_point_mask(group, elements)))


@dataclass(frozen=True)
class CurveAction:
    """A generating vector together with the genus of the curve it defines
    and its fixed-point set. Only curves of genus >= 2 are accepted."""

    vector: GeneratingVector
    genus: int
    fixed_set: frozenset[int] = field(repr=False)

    @classmethod
    def from_vector(cls, vector: GeneratingVector) -> "CurveAction":
        ct = vector.curve_type
        genus = riemann_hurwitz_genus(vector.group.order, 0, ct.branch_orders)
        if genus < 2:
            raise GenusTooSmall(
                f"{vector.group.name} with type {ct.label} acts on a curve of genus {genus}"
            )
        return cls(vector, genus, fixed_point_elements(vector.group, vector.elements))

    @property
    def group(self) -> FiniteGroup:
        return self.vector.group

    @property
    def curve_type(self) -> CurveType:
        return self.vector.curve_type

    @property
    def fixed_mask(self) -> np.ndarray:
        mask = np.zeros(self.group.order, dtype=bool)
        mask[list(self.fixed_set)] = True
        return mask


def mu_upper_bound(group_order: int, nu_k: int) -> int:
    """``|G| / nu_k``: packings meet each coset of a largest stabilizer at
    most once. ``nu_k = 1`` encodes an unramified action."""
    if nu_k < 1:
        raise ValueError("nu_k must be positive")
    if group_order % nu_k:
        raise NonDivisor(f"{nu_k} does not divide {group_order}")
    return group_order // nu_k


def lambda_invariant(curve_type: CurveType) -> Fraction:
    """``nu_k * (2h - 2 + sum(1 - 1/nu_i))``, so that ``mu = (2g-2)/lambda``."""
    nu_k = curve_type.branch_orders[-1] if curve_type.branch_orders else 1
    return nu_k * curve_type.orbifold_characteristic()


class ExceptionalType(NamedTuple):
    curve_type: CurveType
    m_coefficient: Fraction  # packing bound per (g-1)
    order_coefficient: Fraction  # |G| per (g-1)


_LAMBDA_CUTOFF = Fraction(2, 3)


def enumerate_exceptional_types() -> list[ExceptionalType]:
    """Genus-zero types whose packing bound ``2/lambda`` exceeds 3 per (g-1).

    The search is finite: with ``k`` branch points lambda is at least
    ``k - 4`` (all orders 2), so ``k <= 4``; for fixed ``k`` we have
    ``lambda = nu_k * (S - 1) - 1`` where ``S`` sums ``1 - 1/nu_i`` over the
    first ``k - 1`` slots, which bounds both the prefix and ``nu_k``.
    """
    rows = []
    k = 3
    while k - 4 < _LAMBDA_CUTOFF:
        # nu_{k-1} * ((k-2)/2) - 1 <= lambda forces nu_{k-1} < (16/3) / (k-2)
        prefix_cap = int(Fraction(16, 3) / (k - 2))
        for prefix in itertools.combinations_with_replacement(range(2, prefix_cap + 1), k - 1):
            s_minus_1 = sum((1 - Fraction(1, v) for v in prefix), Fraction(0)) - 1
            if s_minus_1 <= 0:
                continue
            nu = prefix[-1]
            while nu * s_minus_1 - 1 < _LAMBDA_CUTOFF:
                ct = CurveType(0, (*prefix, nu))
                lam = lambda_invariant(ct)
                if 0 < lam < _LAMBDA_CUTOFF:
                    rows.append(ExceptionalType(ct, 2 / lam, 2 * nu / lam))
                nu += 1
        k += 1
    rows.sort(key=lambda r: r.curve_type.branch_orders)
    return rows


def is_rigid_triangle(curve_type: CurveType) -> bool:
    """Triangle actions (genus-zero quotient, three branch points) are rigid."""
    return curve_type.quotient_genus == 0 and curve_type.k == 3
