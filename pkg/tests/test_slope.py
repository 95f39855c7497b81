from __future__ import annotations

import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from autpack.errors import InconsistentDegrees, NonIntegralGenus, PreconditionViolated, ZeroDenominator
from autpack.slope import (
    EIGHT_THIRDS,
    AdmissibleConfiguration,
    BranchComponent,
    Stratum,
    abstract_slope,
    betterbound_slope,
    branch_divisibility_ok,
    check_slope_bound,
    component_euler,
    cyclic_cover_fiber_genus,
    drop_last_component_increases,
    euler_of_component,
    galois_slope,
    invariants,
    optimal_uniform_ramification,
    simple_galois_configuration,
    simple_galois_slope,
    sweep_monotonicity,
    sweep_slope_bound,
)


def example_config(e1=-2):
    comp = BranchComponent(1, e1 // -2, (Stratum(3, 1),))
    return AdmissibleConfiguration(e1, -2, 3, (comp,) * 3, galois=True)


class TestEuler:
    def test_examples(self):
        assert component_euler(1, -2, 1, -2) == -2
        assert component_euler(2, -2, 1, -4) == -4
        with pytest.raises(InconsistentDegrees):
            component_euler(2, -2, 3, -2)

    def test_on_config(self):
        assert euler_of_component(example_config(), 0) == -2

    def test_config_rejects_inconsistent(self):
        with pytest.raises(InconsistentDegrees):
            AdmissibleConfiguration(-2, -2, 2, (BranchComponent(2, 3, ((2, 1),)),))

    def test_config_validation(self):
        with pytest.raises(ValueError):
            AdmissibleConfiguration(-3, -2, 1)
        with pytest.raises(ValueError):
            AdmissibleConfiguration(0, -2, 1)
        with pytest.raises(ValueError):  # d differs from sum n r
            AdmissibleConfiguration(-2, -2, 3, (BranchComponent(1, 1, ((2, 1),)),))
        with pytest.raises(ValueError):  # Galois needs one r per component
            AdmissibleConfiguration(-2, -2, 5, (BranchComponent(1, 1, ((2, 1), (3, 1))),), galois=True)


class TestInvariants:
    def test_etale(self):
        inv = invariants(AdmissibleConfiguration(-2, -4, 1))
        assert (inv.c2, inv.c1sq, inv.sigma, inv.slope) == (8, 16, 0, 2)
        assert abstract_slope(AdmissibleConfiguration(-2, -4, 1)) == 2

    @pytest.mark.parametrize("e1", [-2, -4, -6, -10])
    def test_example_slope_any_base(self, e1):
        assert invariants(example_config(e1)).slope == EIGHT_THIRDS
        assert abstract_slope(example_config(e1)) == EIGHT_THIRDS

    def test_example_values(self):
        inv = invariants(example_config(-6))
        assert (inv.c2, inv.c1sq, inv.sigma) == (72, 192, 16)

    def test_hand_expansion_r2(self):
        # d = 2, e1 = e2 = -2, one graph with r = 2, n = 1, e(D) = -2:
        # c2 = 2*4 - 1*(-2) = 10, numerator = -(1*1*3/2)(-2) = 3, slope = 23/10
        cfg = AdmissibleConfiguration(-2, -2, 2, (BranchComponent(1, 1, ((2, 1),)),))
        assert abstract_slope(cfg) == Fraction(23, 10)
        inv = invariants(cfg)
        assert inv.c2 == 10 and inv.c1sq == 23

    def test_galois_zero_denominator(self):
        # e1 e2 - (1/2) e(D) = 1 - 1 = 0; not geometric, but the guard must fire
        with pytest.raises(ZeroDenominator):
            galois_slope([2], [2], 1, 1)


class TestClosedForms:
    def test_galois_examples(self):
        assert galois_slope([], [], -2, -2) == 2
        assert galois_slope([-2] * 3, [3] * 3, -2, -2) == EIGHT_THIRDS

    def test_simple_examples(self):
        assert simple_galois_slope(2, (3, 3, 3)) == EIGHT_THIRDS
        assert simple_galois_slope(2, (2,) * 8) == 3
        for r in range(2, 15):
            assert simple_galois_slope(2, (r,)) == 2 + (1 - Fraction(1, r * r)) / (3 - Fraction(1, r))

    def test_simple_guards(self):
        with pytest.raises(ValueError):
            simple_galois_slope(1, (3,))
        with pytest.raises(ValueError):
            simple_galois_slope(2, ())


@st.composite
def galois_configs(draw, simple: bool):
    g2 = draw(st.integers(2, 6))
    e2 = 2 - 2 * g2
    r_list = draw(st.lists(st.integers(2, 12), min_size=1, max_size=8))
    d = math.lcm(*r_list) * draw(st.integers(1, 2))
    if simple:
        base = draw(st.integers(1, 3))
        e1 = base * e2
        d1s = [1] * len(r_list)
        d2s = [base] * len(r_list)
    else:
        a = draw(st.integers(1, 5))
        e1 = -2 * a
        b = -e2 // 2
        t = draw(st.integers(1, 3))
        gcd = math.gcd(a, b)
        d1s = [t * b // gcd] * len(r_list)
        d2s = [t * a // gcd] * len(r_list)
    comps = []
    for r, d1, d2 in zip(r_list, d1s, d2s):
        total = d // r
        cut = sorted(draw(st.lists(st.integers(1, total - 1), max_size=3, unique=True))) if total > 1 else []
        parts = [hi - lo for lo, hi in zip([0, *cut], [*cut, total])]
        comps.append(BranchComponent(d1, d2, tuple(Stratum(r, n) for n in parts)))
    return g2, r_list, AdmissibleConfiguration(e1, e2, d, tuple(comps), galois=True)


@settings(max_examples=300, deadline=None)
@given(data=galois_configs(simple=True))
def test_simple_galois_coherence(data):
    g, r_list, cfg = data
    inv = invariants(cfg)
    e_list = [euler_of_component(cfg, i) for i in range(cfg.m)]
    assert cfg.simple
    assert inv.slope == abstract_slope(cfg) == galois_slope(e_list, r_list, cfg.e1, cfg.e2)
    assert inv.slope == simple_galois_slope(g, r_list)
    assert 3 * inv.sigma == inv.c1sq - 2 * inv.c2
    assert 2 < inv.slope < 3
    if len(r_list) <= 3 * (g - 1):
        assert inv.slope <= EIGHT_THIRDS


@settings(max_examples=300, deadline=None)
@given(data=galois_configs(simple=False))
def test_galois_coherence(data):
    _, r_list, cfg = data
    inv = invariants(cfg)
    e_list = [euler_of_component(cfg, i) for i in range(cfg.m)]
    assert inv.slope == abstract_slope(cfg) == galois_slope(e_list, r_list, cfg.e1, cfg.e2)
    assert 3 * inv.sigma == inv.c1sq - 2 * inv.c2


@settings(max_examples=200, deadline=None)
@given(
    e1=st.integers(1, 4), e2=st.integers(1, 4),
    strata=st.lists(st.lists(st.tuples(st.integers(2, 7), st.integers(1, 3)), min_size=1, max_size=3),
                    max_size=4),
)
def test_signature_identity_non_galois(e1, e2, strata):
    # make every component have the same covering degree by padding with r = d strata
    d = max([sum(r * n for r, n in s) for s in strata] + [2])
    comps = []
    for s in strata:
        rest = d - sum(r * n for r, n in s)
        if rest == 1:
            continue
        st_list = [Stratum(r, n) for r, n in s] + ([Stratum(rest, 1)] if rest else [])
        comps.append(BranchComponent(e2, e1, tuple(st_list)))  # d1 e1 = d2 e2 with e's scaled
    cfg = AdmissibleConfiguration(-2 * e1, -2 * e2, d, tuple(comps))
    try:
        inv = invariants(cfg)
    except ZeroDenominator:
        return
    assert 3 * inv.sigma == inv.c1sq - 2 * inv.c2
    assert inv.slope == abstract_slope(cfg)


class TestSlopeBound:
    def test_equal(self):
        v = check_slope_bound(2, (3, 3, 3))
        assert v.verdict == "equal" and v.slope == EIGHT_THIRDS and v.gap == 0

    @pytest.mark.parametrize("r", [(3, 3, 4), (2, 2, 2), (3, 3), (12,)])
    def test_below(self, r):
        v = check_slope_bound(2, r)
        assert v.verdict == "below" and v.slope < EIGHT_THIRDS

    def test_precondition(self):
        with pytest.raises(PreconditionViolated):
            check_slope_bound(2, (3, 3, 3, 3))

    def test_small_exhaustive_with_fractions(self):
        # independent evaluation straight from the closed form
        for g in (2, 3):
            cap = 3 * (g - 1)
            for m in range(1, cap + 1):
                for r in itertools.combinations_with_replacement(range(2, 8), m):
                    s = 2 + Fraction(sum(1 - Fraction(1, x * x) for x in r)) / (
                        2 * g - 2 + sum(1 - Fraction(1, x) for x in r))
                    assert s == simple_galois_slope(g, r)
                    assert s <= EIGHT_THIRDS
                    assert (s == EIGHT_THIRDS) == (m == cap and set(r) == {3})


class TestMonotonicity:
    @pytest.mark.parametrize("g, r", [(2, (3, 3, 3)), (3, (2, 5)), (2, (2, 2, 2, 2)), (4, (12,) * 12)])
    def test_holds(self, g, r):
        assert drop_last_component_increases(g, r)

    def test_guard(self):
        with pytest.raises(PreconditionViolated):
            drop_last_component_increases(2, (2,) * 5)
        with pytest.raises(PreconditionViolated):
            drop_last_component_increases(2, ())


class TestSweeps:
    def test_small_sweeps(self):
        (rep,) = sweep_slope_bound(genera=[2], r_max=6)
        assert rep.ok and rep.equalities == [(3, 3, 3)]
        assert rep.multisets == math.comb(3 + 5, 5)
        (mono,) = sweep_monotonicity(genera=[2], r_max=6)
        assert mono.ok and mono.multisets == math.comb(3 + 5, 5)


class TestBetterBound:
    def test_examples(self):
        assert betterbound_slope(8, 2) == 3
        assert betterbound_slope(3, 2) == Fraction(5, 2)
        assert betterbound_slope(16, 3) == 3
        assert betterbound_slope(1, 2) == 2

    @pytest.mark.parametrize("g", range(2, 11))
    def test_boundary(self, g):
        assert betterbound_slope(8 * (g - 1), g) == 3
        assert betterbound_slope(8 * (g - 1) + 1, g) == 3
        assert betterbound_slope(8 * (g - 1) + 2, g) > 3
        for m in range(2, 8 * (g - 1), 2):
            assert betterbound_slope(m, g) < 3


class TestCyclicCovers:
    def test_fibre_genus(self):
        assert cyclic_cover_fiber_genus(3, 2, 3) == 7
        assert cyclic_cover_fiber_genus(2, 2, 0) == 3
        assert cyclic_cover_fiber_genus(3, 2, 4) == 8
        with pytest.raises(NonIntegralGenus):
            cyclic_cover_fiber_genus(2, 2, 1)

    def test_divisibility(self):
        assert branch_divisibility_ok(3, 3)
        assert not branch_divisibility_ok(3, 4)
        assert branch_divisibility_ok(2, 8)

    def test_configuration_builder(self):
        cfg = simple_galois_configuration(2, (3, 3, 3))
        assert cfg.d == 3 and cfg.simple and cfg.very_simple
        assert invariants(cfg).slope == EIGHT_THIRDS
        cfg = simple_galois_configuration(3, (2, 3, 4), base_degree=2)
        assert not cfg.very_simple
        assert invariants(cfg).slope == simple_galois_slope(3, (2, 3, 4))


class TestOptimalUniform:
    @pytest.mark.parametrize("g", range(2, 7))
    def test_three_is_optimal_at_capacity(self, g):
        assert optimal_uniform_ramification(g, 3 * (g - 1)) == (3, EIGHT_THIRDS)

    @pytest.mark.parametrize("g, m", [(2, 1), (2, 5), (3, 2), (4, 20), (5, 7)])
    def test_matches_scan(self, g, m):
        r, s = optimal_uniform_ramification(g, m)
        scan = max((simple_galois_slope(g, [x] * m), -x) for x in range(2, 60))
        assert (s, -r) == scan
