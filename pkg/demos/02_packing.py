"""Packings: sets of automorphisms whose graphs are pairwise disjoint.

A set S is a packing when no quotient x^-1 y of two members fixes a point,
so the largest packing is a maximum clique through the identity in the
compatibility graph. Run with ``python demos/02_packing.py``.
"""

from __future__ import annotations

from autpack import (
    CurveAction,
    CurveType,
    brute_force_max_packing,
    builtin,
    count_max_packings,
    enumerate_generating_vectors,
    max_packing,
    mu_upper_bound,
    packing_ratio,
    verify_packing,
)

cases = [("sl2(3)", (3, 3, 4)), ("product(cyclic(2),symmetric(4))", (2, 4, 6)), ("psl2(7)", (2, 3, 7)), ("alternating(5)", (2, 5, 5))]
for spec, nus in cases:
    G = builtin(spec)
    ct = CurveType(0, nus)
    for v in enumerate_generating_vectors(G, ct):
        action = CurveAction.from_vector(v)
        res = max_packing(G, action.fixed_mask)
        assert verify_packing(G, action.fixed_set, res.witness)
        print(f"{spec:32s} {ct.label:9s} g={action.genus} m={res.m:2d} "
              f"ratio {packing_ratio(res.m, action.genus)}(g-1)  cap |G|/nu_k={mu_upper_bound(G.order, nus[-1])}  "
              f"witness {res.witness}")

# On small groups the branch-and-bound answer can be checked by exhaustion.
G = builtin("sl2(3)")
action = CurveAction.from_vector(enumerate_generating_vectors(G, CurveType.of(3, 3, 4))[0])
print(f"\nsl2(3): solver {max_packing(G, action.fixed_set).m}, exhaustive {brute_force_max_packing(G, action.fixed_set)}, "
      f"{count_max_packings(G, action.fixed_set)} maximum packings in total")
