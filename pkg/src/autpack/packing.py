"""Maximum packings of graphs of automorphisms.

Two automorphisms ``x != y`` have disjoint graphs exactly when ``x^-1 y``
acts freely, i.e. lies outside the fixed-point set ``F``. A packing is a
clique in the compatibility graph ``x ~ y  <=>  x^-1 y not in F``. The graph
is invariant under left translation, so it suffices to search cliques
through the identity.
"""

from __future__ import annotations

import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Collection, Iterable

import numpy as np

from .errors import GenusTooSmall, GroupTooLarge, SameElement
from .groups import FiniteGroup

__all__ = [
    "PackingResult",
    "CompatibilityGraph",
    "graphs_disjoint",
    "verify_packing",
    "max_packing",
    "count_max_packings",
    "brute_force_max_packing",
    "packing_ratio",
    "DEFAULT_TIME_BUDGET",
    "BRUTE_FORCE_LIMIT",
    "COUNTING_LIMIT",
]

DEFAULT_TIME_BUDGET = 60.0
BRUTE_FORCE_LIMIT = 64
COUNTING_LIMIT = 120


def _as_mask(group: FiniteGroup, fixed: Collection[int] | np.ndarray) -> np.ndarray:
    if isinstance(fixed, np.ndarray) and fixed.dtype == bool:
        return fixed
    mask = np.zeros(group.order, dtype=bool)
    mask[list(fixed)] = True
    return mask


def graphs_disjoint(group: FiniteGroup, fixed, x: int, y: int) -> bool:
    if x == y:
        raise SameElement(f"element {x} compared with itself")
    mask = _as_mask(group, fixed)
    return not mask[group.mul[group.inv[x], y]]


def verify_packing(group: FiniteGroup, fixed, subset: Iterable[int]) -> bool:
    s = np.array(sorted(set(int(v) for v in subset)), dtype=np.int64)
    if s.size < 2:
        return True
    mask = _as_mask(group, fixed)
    quotients = group.mul[group.inv[s][:, None], s[None, :]]
    off_diag = ~np.eye(s.size, dtype=bool)
    return not mask[quotients][off_diag].any()


class CompatibilityGraph:
    """Compatibility graph of ``(G, F)`` with adjacency rows stored as int
    bitsets (bit ``y`` of ``adj[x]`` is set iff ``x ~ y``)."""

    def __init__(self, group: FiniteGroup, fixed):
        self.group = group
        self.fixed_mask = _as_mask(group, fixed)
        if self.fixed_mask[0]:
            raise ValueError("the identity cannot be in the fixed-point set")
        if not np.array_equal(self.fixed_mask, self.fixed_mask[group.inv]):
            raise ValueError("fixed-point set must be closed under inversion")
        free = ~self.fixed_mask
        n = group.order
        adj = []
        for x in range(n):
            row = free[group.mul[group.inv[x]]]
            row[x] = False
            adj.append(_bits(row))
        self.adj = adj

    @property
    def order(self) -> int:
        return self.group.order

    def neighbours_of_identity(self) -> int:
        return self.adj[0]


def _bits(row: np.ndarray) -> int:
    return int.from_bytes(np.packbits(row, bitorder="little").tobytes(), "little")


def _members(bits: int) -> list[int]:
    out = []
    while bits:
        low = bits & -bits
        out.append(low.bit_length() - 1)
        bits ^= low
    return out


@dataclass(frozen=True)
class PackingResult:
    """``m`` is exact unless ``time_bounded``; ``witness`` is the
    lexicographically least maximum packing through the identity unless
    ``canonical`` is False (the witness search itself ran out of time)."""

    m: int
    witness: tuple[int, ...]
    nodes_explored: int
    time_bounded: bool = False
    canonical: bool = True

    def __post_init__(self) -> None:
        assert len(self.witness) == self.m and 0 in self.witness


class _OutOfTime(Exception):
    pass


class _Done(Exception):
    pass


def _colour_classes(adj: list[int], bits: int) -> tuple[list[int], list[int]]:
    """Greedy sequential colouring of ``bits`` in index order.

    Returns the vertices grouped by colour and the colour of each; colours
    are non-decreasing along the returned list."""
    order, colours = [], []
    uncoloured = bits
    c = 0
    while uncoloured:
        c += 1
        avail = uncoloured
        while avail:
            low = avail & -avail
            v = low.bit_length() - 1
            order.append(v)
            colours.append(c)
            uncoloured ^= low
            avail &= ~(adj[v] | low)
    return order, colours


class _Search:
    def __init__(self, adj: list[int], deadline: float | None):
        self.adj = adj
        self.deadline = deadline
        self.nodes = 0

    def tick(self) -> None:
        self.nodes += 1
        if self.deadline is not None and not self.nodes & 255:
            if time.monotonic() > self.deadline:
                raise _OutOfTime


class _MaxCliqueSearch(_Search):
    """Colour-bounded branch and bound that only determines the clique
    number; vertices are pre-sorted by degree and branched in reverse colour
    order."""

    def __init__(self, adj, deadline, best_size: int, upper: int, orbits: list[int]):
        super().__init__(adj, deadline)
        self.best_size = best_size
        self.best: list[int] | None = None
        self.upper = upper
        self.orbits = orbits

    def expand(self, clique: list[int], bits: int) -> None:
        self.tick()
        top = not clique
        order, colours = _colour_classes(self.adj, bits)
        for i in range(len(order) - 1, -1, -1):
            if len(clique) + colours[i] <= self.best_size:
                return
            v = order[i]
            if not (bits >> v) & 1:
                continue
            clique.append(v)
            nxt = bits & self.adj[v]
            if nxt:
                self.expand(clique, nxt)
            elif len(clique) > self.best_size:
                self.best_size = len(clique)
                self.best = list(clique)
                if self.best_size >= self.upper:
                    raise _Done
            clique.pop()
            # every clique through an orbit-mate of v is an image of one
            # through v, so at the root the whole orbit is finished
            bits &= ~(self.orbits[v] if top else 1 << v)


class _LexCliqueSearch(_Search):
    """Smallest-index-first search for cliques of a fixed size; visits
    cliques in lexicographic order."""

    def __init__(self, adj, deadline):
        super().__init__(adj, deadline)
        self.count = 0

    def _bounds(self, bits: int) -> tuple[list[int], list[int]]:
        order, colours = _colour_classes(self.adj, bits)
        colour_of = dict(zip(order, colours))
        cand = _members(bits)
        bounds = [0] * len(cand)
        seen = set()
        for i in range(len(cand) - 1, -1, -1):
            seen.add(colour_of[cand[i]])
            bounds[i] = len(seen)
        return cand, bounds

    def first(self, clique: list[int], bits: int, target: int) -> list[int] | None:
        self.tick()
        if len(clique) == target:
            return list(clique)
        if not bits:
            return None
        cand, bounds = self._bounds(bits)
        for i, v in enumerate(cand):
            if len(clique) + bounds[i] < target:
                break
            clique.append(v)
            found = self.first(clique, bits & self.adj[v], target)
            clique.pop()
            if found is not None:
                return found
            bits &= ~(1 << v)
        return None

    def count_all(self, clique: list[int], bits: int, target: int) -> None:
        self.tick()
        if len(clique) == target:
            self.count += 1
            return
        if not bits:
            return
        cand, bounds = self._bounds(bits)
        for i, v in enumerate(cand):
            if len(clique) + bounds[i] < target:
                break
            clique.append(v)
            self.count_all(clique, bits & self.adj[v], target)
            clique.pop()
            bits &= ~(1 << v)


def _a_priori_bound(graph: CompatibilityGraph) -> int:
    # if every nontrivial power of x lies in F, a packing meets each left
    # coset of <x> at most once
    group, mask = graph.group, graph.fixed_mask
    best = 1
    for x in np.flatnonzero(mask):
        k = int(group.element_orders[x])
        if k <= best:
            continue
        y, ok = int(x), True
        for _ in range(k - 2):
            y = int(group.mul[y, x])
            if not mask[y]:
                ok = False
                break
        if ok:
            best = k
    return graph.order // best


def _relabelled(graph: CompatibilityGraph) -> tuple[list[int], list[int], list[int]]:
    """Neighbourhood of the identity, renumbered by decreasing degree
    inside it.

    Returns the new -> old label map, the adjacency in new labels and, for
    each new vertex, the bitset of its orbit under the graph automorphisms
    fixing the identity that we exploit: conjugation and inversion.
    """
    cand = _members(graph.neighbours_of_identity())
    inside = graph.neighbours_of_identity()
    degree = {v: (graph.adj[v] & inside).bit_count() for v in cand}
    old = sorted(cand, key=lambda v: (-degree[v], v))
    new_of = {v: i for i, v in enumerate(old)}
    adj = []
    for v in old:
        row = 0
        for u in _members(graph.adj[v] & inside):
            row |= 1 << new_of[u]
        adj.append(row)
    group = graph.group
    key = np.minimum(group.class_ids, group.class_ids[group.inv])
    orbit_bits: dict[int, int] = {}
    for i, v in enumerate(old):
        orbit_bits[int(key[v])] = orbit_bits.get(int(key[v]), 0) | (1 << i)
    orbits = [orbit_bits[int(key[v])] for v in old]
    return old, adj, orbits


def max_packing(
    group: FiniteGroup,
    fixed,
    time_budget: float | None = DEFAULT_TIME_BUDGET,
    seed_lower_bound: int = 0,
) -> PackingResult:
    """Exact maximum packing through the identity.

    The size is found by a colour-bounded branch and bound; the canonical
    witness is then recovered by a smallest-index-first pass that looks for
    the first clique of that size. ``seed_lower_bound`` is a size known to
    be achievable and only prunes. If the budget runs out, ``m`` is merely a
    lower bound and ``time_bounded`` is set.
    """
    graph = fixed if isinstance(fixed, CompatibilityGraph) else CompatibilityGraph(group, fixed)
    deadline = None if time_budget is None else time.monotonic() + time_budget
    upper = _a_priori_bound(graph)
    old, adj, orbits = _relabelled(graph)

    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, graph.order + 200))
    try:
        size_search = _run_size(adj, orbits, deadline, seed_lower_bound, upper)
        if size_search.best is None and seed_lower_bound > 1 and not size_search.truncated:
            # the seed was not achievable; it must not hide the true answer
            size_search = _run_size(adj, orbits, deadline, 0, upper)
        m = size_search.best_size if size_search.best is not None else 1
        fallback = [0] + sorted(old[v] for v in (size_search.best or []))
        nodes = size_search.nodes

        lex = _LexCliqueSearch(graph.adj, deadline)
        canonical = True
        try:
            witness = lex.first([0], graph.neighbours_of_identity(), m)
        except _OutOfTime:
            witness, canonical = None, False
        nodes += lex.nodes
        if witness is None:
            witness = fallback
            canonical = canonical and m == 1
    finally:
        sys.setrecursionlimit(limit)
    return PackingResult(m, tuple(witness), nodes, size_search.truncated, canonical)


def _run_size(adj, orbits, deadline, seed: int, upper: int) -> _MaxCliqueSearch:
    # sizes count the identity, which is not a vertex of the relabelled graph
    search = _MaxCliqueSearch(adj, deadline, max(0, seed - 2), max(0, upper - 1), orbits)
    search.truncated = False
    try:
        if adj and search.best_size < search.upper:
            search.expand([], (1 << len(adj)) - 1)
    except _Done:
        pass
    except _OutOfTime:
        search.truncated = True
    if search.best is not None:
        search.best_size += 1
    elif search.best_size == 0:
        search.best = []
        search.best_size = 1
    return search


def count_max_packings(group: FiniteGroup, fixed, m: int | None = None) -> int:
    """Number of maximum packings of ``G`` (not only those through 1).

    Counting is exponential, so it is restricted to ``|G| <= 120``. Each
    packing through the identity has ``|G|`` translates, each of which is hit
    ``m`` times, giving ``total = count_through_identity * |G| / m``.
    """
    if group.order > COUNTING_LIMIT:
        raise GroupTooLarge(f"counting needs |G| <= {COUNTING_LIMIT}")
    graph = CompatibilityGraph(group, fixed)
    if m is None:
        m = max_packing(group, graph, time_budget=None).m
    search = _LexCliqueSearch(graph.adj, None)
    search.count_all([0], graph.neighbours_of_identity(), m)
    total, rem = divmod(search.count * group.order, m)
    assert rem == 0
    return total


def brute_force_max_packing(group: FiniteGroup, fixed) -> int:
    """Largest packing by exhaustive extension of every valid subset.

    An independent check on :func:`max_packing`: it reads the group table
    directly, does not assume the identity is in an optimal packing and does
    no bounding beyond feasibility.
    """
    n = group.order
    if n > BRUTE_FORCE_LIMIT:
        raise GroupTooLarge(f"brute force is limited to |G| <= {BRUTE_FORCE_LIMIT}")
    fixed_set = set(int(v) for v in np.flatnonzero(_as_mask(group, fixed)))
    mul, inv = group.mul.tolist(), group.inv.tolist()

    def ok(x: int, y: int) -> bool:
        return mul[inv[x]][y] not in fixed_set and mul[inv[y]][x] not in fixed_set

    best = 0
    stack: list[tuple[list[int], int]] = [([], 0)]
    while stack:
        chosen, start = stack.pop()
        best = max(best, len(chosen))
        for y in range(start, n):
            if all(ok(x, y) for x in chosen):
                stack.append((chosen + [y], y + 1))
    return best


def packing_ratio(m: int, g: int) -> Fraction:
    """``m / (g - 1)``, the quantity bounded by Table-style results."""
    if g < 2:
        raise GenusTooSmall(f"genus {g} < 2")
    return Fraction(m, g - 1)
