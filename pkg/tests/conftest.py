from __future__ import annotations

import itertools
from functools import lru_cache

import pytest

from autpack.groups import builtin

# builtin specs of order <= 24, used for oracle comparisons
SMALL_SPECS = (
    "trivial",
    "cyclic(2)", "cyclic(3)", "cyclic(4)", "cyclic(5)", "cyclic(6)", "cyclic(7)",
    "cyclic(8)", "cyclic(9)", "cyclic(10)", "cyclic(12)", "cyclic(24)",
    "abelian(2,2)", "abelian(2,4)", "abelian(2,2,2)", "abelian(3,3)", "abelian(2,6)",
    "abelian(2,2,2,2)", "abelian(2,10)", "abelian(2,12)", "abelian(2,2,6)",
    "dihedral(3)", "dihedral(4)", "dihedral(5)", "dihedral(6)", "dihedral(7)",
    "dihedral(8)", "dihedral(9)", "dihedral(10)", "dihedral(12)",
    "symmetric(3)", "symmetric(4)", "alternating(4)", "sl2(2)", "sl2(3)",
    "product(cyclic(2),symmetric(3))", "product(cyclic(2),alternating(4))",
    "product(cyclic(4),symmetric(3))", "product(cyclic(3),symmetric(3))",
    "product(cyclic(2),dihedral(4))", "product(cyclic(2),dihedral(6))",
    "product(cyclic(3),dihedral(4))",
)


@lru_cache(maxsize=None)
def group(spec: str):
    return builtin(spec)


@pytest.fixture(scope="session")
def sl23():
    return builtin("sl2(3)")


def compose(p, q):
    """Apply q first, then p."""
    return tuple(p[i] for i in q)


def naive_closure(gens, degree):
    """Closure by repeated multiplication until nothing new appears."""
    identity = tuple(range(degree))
    elems = {identity}
    while True:
        new = {compose(a, b) for a, b in itertools.product(elems, set(gens) | elems)} - elems
        if not new:
            return elems
        elems |= new
