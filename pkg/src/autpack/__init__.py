"""Finite group actions on curves, packings of automorphism graphs, and
exact slope formulas for double etale Kodaira fibrations."""

from __future__ import annotations

from .curves import (
    CurveAction,
    CurveType,
    ExceptionalType,
    GeneratingVector,
    enumerate_exceptional_types,
    enumerate_generating_vectors,
    fixed_point_elements,
    forced_group_order,
    is_rigid_triangle,
    lambda_invariant,
    mu_upper_bound,
    riemann_hurwitz_genus,
)
from .errors import AutpackError, ParseError, VerificationFailed
from .groups import (
    FiniteGroup,
    builtin,
    from_multiplication_table,
    from_permutations,
    generates,
    load_catalog,
    parse_catalog,
)
from .packing import (
    PackingResult,
    brute_force_max_packing,
    count_max_packings,
    max_packing,
    packing_ratio,
    verify_packing,
)
from .slope import (
    AdmissibleConfiguration,
    BranchComponent,
    Stratum,
    SurfaceInvariants,
    abstract_slope,
    galois_slope,
    invariants,
    simple_galois_slope,
)

__version__ = "0.1.0"

__all__ = [
    "AdmissibleConfiguration",
    "AutpackError",
    "BranchComponent",
    "CurveAction",
    "CurveType",
    "ExceptionalType",
    "FiniteGroup",
    "GeneratingVector",
    "PackingResult",
    "ParseError",
    "Stratum",
    "SurfaceInvariants",
    "VerificationFailed",
    "abstract_slope",
    "brute_force_max_packing",
    "builtin",
    "count_max_packings",
    "enumerate_exceptional_types",
    "enumerate_generating_vectors",
    "fixed_point_elements",
    "forced_group_order",
    "from_multiplication_table",
    "from_permutations",
    "galois_slope",
    "generates",
    "invariants",
    "is_rigid_triangle",
    "lambda_invariant",
    "load_catalog",
    "max_packing",
    "mu_upper_bound",
    "packing_ratio",
    "parse_catalog",
    "riemann_hurwitz_genus",
    "simple_galois_slope",
    "verify_packing",
]
