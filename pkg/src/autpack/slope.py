"""Chern invariants and slopes of double etale Kodaira fibrations.

Everything here is exact: integers and :class:`fractions.Fraction` only.
A configuration lives on ``B1 x B2`` with Euler numbers ``e1, e2``; each
branch component ``D_i`` maps etale to both factors with degrees ``d1, d2``
and its preimage splits into strata ``(r_ij, n_ij)`` (ramification index,
degree over ``D_i``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from ._multisets import MultisetSpace
from .errors import (
    InconsistentDegrees,
    NonIntegralGenus,
    PreconditionViolated,
    ZeroDenominator,
)

__all__ = [
    "Stratum",
    "BranchComponent",
    "AdmissibleConfiguration",
    "SurfaceInvariants",
    "SlopeBoundVerdict",
    "SweepReport",
    "EIGHT_THIRDS",
    "component_euler",
    "euler_of_component",
    "invariants",
    "abstract_slope",
    "galois_slope",
    "simple_galois_slope",
    "simple_galois_configuration",
    "check_slope_bound",
    "drop_last_component_increases",
    "betterbound_slope",
    "optimal_uniform_ramification",
    "cyclic_cover_fiber_genus",
    "branch_divisibility_ok",
    "sweep_slope_bound",
    "sweep_monotonicity",
]

EIGHT_THIRDS = Fraction(8, 3)


@dataclass(frozen=True)
class Stratum:
    r: int
    n: int

    def __post_init__(self) -> None:
        if self.r < 2 or self.n < 1:
            raise ValueError(f"need r >= 2 and n >= 1, got r={self.r}, n={self.n}")


@dataclass(frozen=True)
class BranchComponent:
    d1: int
    d2: int
    strata: tuple[Stratum, ...]

    def __post_init__(self) -> None:
        strata = tuple(s if isinstance(s, Stratum) else Stratum(*s) for s in self.strata)
        object.__setattr__(self, "strata", strata)
        if self.d1 < 1 or self.d2 < 1:
            raise ValueError("component degrees must be positive")
        if not strata:
            raise ValueError("a branch component needs at least one stratum")

    @property
    def covering_degree(self) -> int:
        return sum(s.n * s.r for s in self.strata)

    @property
    def beta(self) -> int:
        return sum(s.n * (s.r - 1) for s in self.strata)

    @property
    def correction(self) -> Fraction:
        """``sum_j n_j (r_j - 1)(r_j + 1) / r_j``."""
        return sum((Fraction(s.n * (s.r - 1) * (s.r + 1), s.r) for s in self.strata), Fraction(0))


def component_euler(d1: int, e1: int, d2: int, e2: int) -> int:
    """``e(D) = d1 e(B1) = d2 e(B2)``; both products must agree."""
    if d1 * e1 != d2 * e2:
        raise InconsistentDegrees(f"d1*e1 = {d1 * e1} but d2*e2 = {d2 * e2}")
    return d1 * e1


@dataclass(frozen=True)
class AdmissibleConfiguration:
    """Numerical branch data of a double etale Kodaira fibration.

    Validated on construction: ``d = sum_j n_ij r_ij`` for every component,
    ``d1 e1 = d2 e2``, and a Galois configuration has one ramification index
    per component.
    """

    e1: int
    e2: int
    d: int
    components: tuple[BranchComponent, ...] = ()
    galois: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "components", tuple(self.components))
        for e in (self.e1, self.e2):
            if e > -2 or e % 2:
                raise ValueError(f"Euler numbers of base curves are even and <= -2, got {e}")
        if self.d < 1:
            raise ValueError("covering degree must be positive")
        for i, comp in enumerate(self.components):
            if comp.covering_degree != self.d:
                raise ValueError(
                    f"component {i}: sum n*r = {comp.covering_degree} differs from d = {self.d}"
                )
            component_euler(comp.d1, self.e1, comp.d2, self.e2)
            if self.galois and len({s.r for s in comp.strata}) != 1:
                raise ValueError(f"component {i}: Galois configurations need a common r")

    @property
    def m(self) -> int:
        return len(self.components)

    @property
    def simple(self) -> bool:
        return all(c.d1 == 1 for c in self.components)

    @property
    def very_simple(self) -> bool:
        return self.simple and self.e1 == self.e2

    @property
    def genus2(self) -> int:
        return (2 - self.e2) // 2

    def ramification_indices(self) -> list[int]:
        if not self.galois:
            raise ValueError("ramification indices per component need a Galois configuration")
        return [c.strata[0].r for c in self.components]


def euler_of_component(config: AdmissibleConfiguration, i: int) -> int:
    c = config.components[i]
    return component_euler(c.d1, config.e1, c.d2, config.e2)


@dataclass(frozen=True)
class SurfaceInvariants:
    c2: Fraction
    c1sq: Fraction
    sigma: Fraction
    slope: Fraction

    def __post_init__(self) -> None:
        assert 3 * self.sigma == self.c1sq - 2 * self.c2


def _numerator_denominator(config: AdmissibleConfiguration) -> tuple[Fraction, Fraction]:
    c2 = Fraction(config.d * config.e1 * config.e2)
    corr = Fraction(0)
    for i, comp in enumerate(config.components):
        e = euler_of_component(config, i)
        c2 -= comp.beta * e
        corr -= comp.correction * e
    return corr, c2


def invariants(config: AdmissibleConfiguration) -> SurfaceInvariants:
    """``c2``, ``c1^2``, signature and slope of a surface realising ``config``."""
    corr, c2 = _numerator_denominator(config)
    c1sq = 2 * c2 + corr
    if c2 == 0:
        raise ZeroDenominator("c2 vanishes")
    return SurfaceInvariants(c2, c1sq, (c1sq - 2 * c2) / 3, c1sq / c2)


def abstract_slope(config: AdmissibleConfiguration) -> Fraction:
    """Slope formula evaluated on the data alone, realisable or not."""
    num, den = _numerator_denominator(config)
    if den == 0:
        raise ZeroDenominator("denominator of the abstract slope vanishes")
    return 2 + num / den


def galois_slope(
    e_list: Sequence[int], r_list: Sequence[int], e1: int, e2: int
) -> Fraction:
    """Slope of a Galois configuration from ``e(D_i)`` and ``r_i`` alone."""
    if len(e_list) != len(r_list):
        raise ValueError("e_list and r_list must have the same length")
    num = -sum((Fraction(r * r - 1, r * r) * e for e, r in zip(e_list, r_list)), Fraction(0))
    den = e1 * e2 - sum((Fraction(r - 1, r) * e for e, r in zip(e_list, r_list)), Fraction(0))
    if den == 0:
        raise ZeroDenominator("denominator of the Galois slope vanishes")
    return 2 + num / den


def simple_galois_slope(g: int, r_list: Sequence[int]) -> Fraction:
    """Slope of a simple Galois configuration with ``m = len(r_list)`` graph
    components over a target curve of genus ``g``."""
    m = len(r_list)
    if g < 2 or m < 1 or any(r < 2 for r in r_list):
        raise ValueError("need g >= 2, at least one component and all r >= 2")
    inv1 = sum((Fraction(1, r) for r in r_list), Fraction(0))
    inv2 = sum((Fraction(1, r * r) for r in r_list), Fraction(0))
    return 2 + (1 - inv2 / m) / (Fraction(2 * g - 2, m) + 1 - inv1 / m)


def simple_galois_configuration(
    g: int, r_list: Sequence[int], base_degree: int = 1
) -> AdmissibleConfiguration:
    """A simple Galois configuration realising ``r_list``: graphs of maps
    ``B1 -> B2`` where ``B1`` covers ``B2`` (genus ``g``) with degree
    ``base_degree``, one stratum per component and ``d = lcm(r_list)``."""
    e2 = 2 - 2 * g
    e1 = base_degree * e2
    d = math.lcm(*r_list) if r_list else 1
    comps = tuple(BranchComponent(1, base_degree, (Stratum(r, d // r),)) for r in r_list)
    return AdmissibleConfiguration(e1, e2, d, comps, galois=True)


@dataclass(frozen=True)
class SlopeBoundVerdict:
    verdict: str  # "below" or "equal"; "above" would refute the bound
    slope: Fraction
    gap: Fraction  # 8/3 - slope
    m: int
    capacity: int  # 3(g-1)
    all_three: bool


def check_slope_bound(g: int, r_list: Sequence[int]) -> SlopeBoundVerdict:
    """Compare a simple Galois slope with 8/3 for ``m <= 3(g-1)``.

    Equality must occur exactly when ``m = 3(g-1)`` and every ``r_i = 3``;
    anything else is reported as a counterexample.
    """
    m = len(r_list)
    capacity = 3 * (g - 1)
    if g < 2:
        raise PreconditionViolated("genus must be at least 2")
    if m > capacity:
        raise PreconditionViolated(f"m = {m} exceeds 3(g-1) = {capacity}")
    slope = simple_galois_slope(g, r_list) if m else Fraction(2)
    all_three = all(r == 3 for r in r_list)
    gap = EIGHT_THIRDS - slope
    verdict = "equal" if gap == 0 else "below" if gap > 0 else "above"
    if verdict == "above" or (verdict == "equal") != (m == capacity and all_three):
        raise RuntimeError(f"slope bound fails for g={g}, r={tuple(r_list)}: slope {slope}")
    return SlopeBoundVerdict(verdict, slope, gap, m, capacity, all_three)


def drop_last_component_increases(g: int, r_list: Sequence[int]) -> bool:
    """Removing the last component strictly lowers the slope when at most
    ``4(g-1)`` components are present."""
    if g < 2:
        raise PreconditionViolated("genus must be at least 2")
    if not r_list or len(r_list) > 4 * (g - 1):
        raise PreconditionViolated(
            f"need 1 <= len(r_list) <= 4(g-1) = {4 * (g - 1)}, got {len(r_list)}"
        )
    before = simple_galois_slope(g, r_list[:-1]) if len(r_list) > 1 else Fraction(2)
    after = simple_galois_slope(g, r_list)
    if not before < after:
        raise RuntimeError(f"monotonicity fails for g={g}, r={tuple(r_list)}")
    return True


def betterbound_slope(m: int, g: int) -> Fraction:
    """Slope of the double cover branched over ``m`` graphs (``m - 1`` when
    ``m`` is odd, one degree-one component being left out)."""
    if g < 2 or m < 1:
        raise ValueError("need g >= 2 and m >= 1")
    used = m if m % 2 == 0 else m - 1
    return simple_galois_slope(g, [2] * used) if used else Fraction(2)


def optimal_uniform_ramification(g: int, m: int) -> tuple[int, Fraction]:
    """Ramification index maximising the simple Galois slope for ``m``
    components over genus ``g``.

    The slope is ``2 + sum(1 - 1/r_i^2) / (2g-2 + sum(1 - 1/r_i))``; by the
    Dinkelbach argument the optimum is separable, so a uniform index is
    optimal, and the uniform slope is unimodal in ``r``. Ties go to the
    smaller index.
    """
    if g < 2 or m < 1:
        raise ValueError("need g >= 2 and m >= 1")
    r, best = 2, simple_galois_slope(g, [2] * m)
    while True:
        nxt = simple_galois_slope(g, [r + 1] * m)
        if nxt <= best:
            return r, best
        r, best = r + 1, nxt


def cyclic_cover_fiber_genus(r: int, g_base: int, m: int) -> int:
    """Genus of a cyclic degree-``r`` cover of a genus-``g_base`` curve
    totally ramified at ``m`` points: ``2g - 2 = r(2g_base - 2) + m(r - 1)``."""
    if r < 2 or g_base < 2 or m < 0:
        raise ValueError("need r >= 2, g_base >= 2 and m >= 0")
    two_g_minus_2 = r * (2 * g_base - 2) + m * (r - 1)
    if two_g_minus_2 % 2:
        raise NonIntegralGenus(f"2g - 2 = {two_g_minus_2} is odd")
    return two_g_minus_2 // 2 + 1


def branch_divisibility_ok(r: int, m: int) -> bool:
    """A simple cyclic cover of degree ``r`` branched at ``m`` graph points
    needs the branch divisor class to be divisible by ``r``."""
    if r < 2:
        raise ValueError("r must be at least 2")
    return m % r == 0


# ---------------------------------------------------------------------------
# exhaustive sweeps


@dataclass
class SweepReport:
    g: int
    max_size: int
    multisets: int = 0
    violations: list[tuple[int, ...]] = field(default_factory=list)
    equalities: list[tuple[int, ...]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def _scaled_parts(g: int, chunk, scale: int) -> tuple[np.ndarray, np.ndarray]:
    """Numerator and denominator of ``slope - 2`` scaled by ``scale**2``."""
    sq = scale * scale
    num = chunk.m * sq - chunk.s2
    den = (2 * g - 2 + chunk.m) * sq - scale * chunk.s1
    return num, den


def sweep_slope_bound(genera: Iterable[int] = range(2, 7), r_max: int = 12) -> list[SweepReport]:
    """Check the 8/3 bound on every multiset of indices ``2..r_max`` with at
    most ``3(g-1)`` elements, in exact integer arithmetic.

    Each multiset has slope ``2 + N/D`` with ``D > 0``; the bound is
    ``3N <= 2D``. Empty multisets (slope 2) are included.
    """
    reports = []
    for g in genera:
        size = 3 * (g - 1)
        space = MultisetSpace(range(2, r_max + 1), size)
        rep = SweepReport(g, size)
        for chunk in space.chunks():
            num, den = _scaled_parts(g, chunk, space.scale)
            assert (den > 0).all()
            rep.multisets += chunk.m.size
            lhs, rhs = 3 * num, 2 * den
            for i in np.flatnonzero(lhs >= rhs):
                r = space.decode(chunk.left[i], chunk.right[i])
                if lhs[i] > rhs[i] or not (len(r) == size and set(r) == {3}):
                    rep.violations.append(r)
                else:
                    rep.equalities.append(r)
        if rep.equalities != [(3,) * size]:
            rep.violations.append(("missing equality", (3,) * size))
        assert rep.multisets == len(space)
        reports.append(rep)
    return reports


def sweep_monotonicity(genera: Iterable[int] = range(2, 7), r_max: int = 12) -> list[SweepReport]:
    """Check that adding any component ``r`` to any multiset ``R`` with
    ``|R| + 1 <= 4(g-1)`` strictly raises the slope.

    With ``slope(R) = 2 + N/D`` the added component changes ``N`` by
    ``L^2 (1 - 1/r^2)`` and ``D`` by ``L^2 (1 - 1/r)``, so the increase is
    equivalent to ``r N < (r + 1) D``.
    """
    reports = []
    for g in genera:
        size = 4 * (g - 1) - 1
        space = MultisetSpace(range(2, r_max + 1), size)
        rep = SweepReport(g, size)
        for chunk in space.chunks():
            num, den = _scaled_parts(g, chunk, space.scale)
            assert (den > 0).all()
            rep.multisets += chunk.m.size
            for r in range(2, r_max + 1):
                for i in np.flatnonzero(r * num >= (r + 1) * den):
                    rep.violations.append(space.decode(chunk.left[i], chunk.right[i]) + (r,))
        assert rep.multisets == len(space)
        reports.append(rep)
    return reports
