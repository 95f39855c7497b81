"""Groups, generating vectors and the curves they describe.

Run with ``python demos/01_groups_and_actions.py``.
"""

from __future__ import annotations

from collections import Counter

from autpack import (
    CurveAction,
    CurveType,
    builtin,
    enumerate_exceptional_types,
    enumerate_generating_vectors,
    forced_group_order,
    riemann_hurwitz_genus,
)

# SL(2,3) has 24 elements; element orders tell us which branch data can occur.
G = builtin("sl2(3)")
print(f"{G.name}: order {G.order}, element orders {dict(sorted(Counter(G.element_orders.tolist()).items()))}")

# A type (3,3,4) over the sphere forces genus 2 for a group of order 24.
ct = CurveType.of(3, 3, 4)
print(f"type {ct.label}: genus {riemann_hurwitz_genus(G.order, 0, ct.branch_orders)}")
print(f"conversely, genus 2 forces |G| = {forced_group_order(ct, 2)}")

# Generating vectors up to simultaneous conjugation, and the fixed-point
# set F of the corresponding action.
vectors = enumerate_generating_vectors(G, ct)
print(f"{len(vectors)} generating vector classes")
for v in vectors:
    action = CurveAction.from_vector(v)
    print(f"  vector {v.elements}: genus {action.genus}, |F| = {len(action.fixed_set)}")

# The eight types whose packing bound exceeds 2(g-1).
print("\nexceptional types (m bound, |G| per g-1):")
for row in enumerate_exceptional_types():
    print(f"  {row.curve_type.label:10s} {row.m_coefficient}(g-1) {row.order_coefficient}(g-1)")
