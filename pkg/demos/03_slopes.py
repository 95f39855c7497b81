"""Exact slopes of double etale Kodaira fibrations.

Run with ``python demos/03_slopes.py``.
"""

from __future__ import annotations

from autpack.slope import (
    betterbound_slope,
    check_slope_bound,
    invariants,
    optimal_uniform_ramification,
    simple_galois_configuration,
    simple_galois_slope,
    sweep_slope_bound,
)

# Three graphs over a genus-2 curve, each with ramification 3: slope 8/3.
config = simple_galois_configuration(2, [3, 3, 3])
inv = invariants(config)
print(f"c2={inv.c2} c1^2={inv.c1sq} sigma={inv.sigma} slope={inv.slope}")

# Other ramification choices with at most 3(g-1) graphs stay below 8/3.
for r in ([2, 2, 2], [3, 3], [3, 3, 4], [6, 6, 6]):
    v = check_slope_bound(2, r)
    print(f"r={r}: slope {v.slope} ({v.verdict} 8/3 by {v.gap})")

# The best uniform ramification index for m graphs over genus g.
for g, m in ((2, 3), (3, 6), (4, 12)):
    r, s = optimal_uniform_ramification(g, m)
    print(f"g={g} m={m}: best uniform r={r}, slope {s}")

# Double covers over many graphs approach slope 3 and reach it at m = 8(g-1).
for m in (2, 4, 6, 8):
    print(f"g=2, m={m}: double-cover slope {betterbound_slope(m, 2)}")

# Exhaustive check over every multiset of indices 2..12 for g=2..4.
for rep in sweep_slope_bound(range(2, 5), 12):
    print(f"g={rep.g}: {rep.multisets} multisets, {len(rep.violations)} violations, equality at {rep.equalities}")
print(f"slope for r=(3,3,3,3,3,3) over genus 3: {simple_galois_slope(3, [3] * 6)}")
