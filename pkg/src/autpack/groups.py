"""Small finite groups stored as dense multiplication tables.

Elements are the integers ``0 .. n-1`` and the identity is always ``0``.
Products follow function composition: ``mul[x, y]`` is "apply ``y`` first,
then ``x``", so for groups built from permutations or matrices
``mul[x, y]`` corresponds to the matrix product ``x @ y``.
"""

from __future__ import annotations

import math
import re
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import IO, Iterable, Sequence

import numpy as np

from .errors import NotAGroup, OrderCapExceeded, ParseError, UnsupportedSpec

__all__ = [
    "FiniteGroup",
    "from_multiplication_table",
    "from_permutations",
    "builtin",
    "element_order",
    "conjugacy_class",
    "subgroup_generated",
    "parse_catalog",
    "load_catalog",
    "sl2_matrix_permutation",
    "matrix_element",
    "DEFAULT_ORDER_CAP",
    "FULL_ASSOCIATIVITY_LIMIT",
]

DEFAULT_ORDER_CAP = 5000
FULL_ASSOCIATIVITY_LIMIT = 600


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """A finite group given by its multiplication table.

    Use the module-level constructors rather than instantiating directly;
    they validate the group axioms and normalise the identity to index 0.
    """

    name: str
    mul: np.ndarray
    inv: np.ndarray
    perm_images: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self) -> None:
        for arr in (self.mul, self.inv, self.perm_images):
            if arr is not None:
                arr.setflags(write=False)

    @property
    def order(self) -> int:
        return int(self.mul.shape[0])

    @property
    def identity(self) -> int:
        return 0

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name!r}, order={self.order})"

    def product(self, elements: Iterable[int]) -> int:
        """Left-to-right product ``g1 g2 ... gk``."""
        acc = 0
        for x in elements:
            acc = int(self.mul[acc, x])
        return acc

    def power(self, x: int, k: int) -> int:
        if k < 0:
            x, k = int(self.inv[x]), -k
        acc, base = 0, x
        while k:
            if k & 1:
                acc = int(self.mul[acc, base])
            base = int(self.mul[base, base])
            k >>= 1
        return acc

    @cached_property
    def element_orders(self) -> np.ndarray:
        n = self.order
        idx = np.arange(n)
        orders = np.zeros(n, dtype=np.int64)
        cur = idx.copy()
        t = 1
        while True:
            hit = (cur == 0) & (orders == 0)
            orders[hit] = t
            if orders.all():
                break
            cur = self.mul[cur, idx]
            t += 1
        orders.setflags(write=False)
        return orders

    @cached_property
    def conjugation(self) -> np.ndarray:
        """``conjugation[h, x] = h x h^-1``."""
        table = self.mul[self.mul, self.inv[:, None]]
        table.setflags(write=False)
        return table

    @cached_property
    def class_ids(self) -> np.ndarray:
        """Index of the conjugacy class of each element, classes numbered by
        their smallest member."""
        n = self.order
        ids = np.full(n, -1, dtype=np.int64)
        k = 0
        for x in range(n):
            if ids[x] < 0:
                ids[np.unique(self.conjugation[:, x])] = k
                k += 1
        ids.setflags(write=False)
        return ids

    @cached_property
    def conjugacy_classes(self) -> tuple[tuple[int, ...], ...]:
        ids = self.class_ids
        return tuple(
            tuple(int(v) for v in np.flatnonzero(ids == k))
            for k in range(int(ids.max()) + 1)
        )

    @cached_property
    def _perm_index(self) -> dict[bytes, int]:
        if self.perm_images is None:
            raise ValueError(f"group {self.name!r} has no permutation images")
        return {row.tobytes(): i for i, row in enumerate(self.perm_images)}

    def index_of_permutation(self, perm: Sequence[int]) -> int:
        """Element whose permutation image is ``perm`` (0-based images)."""
        key = np.asarray(perm, dtype=self.perm_images.dtype).tobytes()
        try:
            return self._perm_index[key]
        except KeyError:
            raise ValueError(f"permutation is not an element of {self.name}") from None


def element_order(group: FiniteGroup, x: int) -> int:
    return int(group.element_orders[x])


def conjugacy_class(group: FiniteGroup, x: int) -> frozenset[int]:
    return frozenset(int(v) for v in group.conjugation[:, x])


def subgroup_generated(group: FiniteGroup, xs: Iterable[int]) -> frozenset[int]:
    """Closure of ``xs`` under products; for a finite group this is the
    generated subgroup."""
    return frozenset(int(v) for v in np.flatnonzero(_closure_mask(group, list(xs))))


def _closure_mask(group: FiniteGroup, gens: list[int]) -> np.ndarray:
    member = np.zeros(group.order, dtype=bool)
    member[0] = True
    if not gens:
        return member
    gens_arr = np.asarray(gens, dtype=np.int64)
    frontier = np.array([0])
    while frontier.size:
        nxt = np.unique(group.mul[frontier[:, None], gens_arr[None, :]])
        nxt = nxt[~member[nxt]]
        member[nxt] = True
        frontier = nxt
    size = int(member.sum())
    assert group.order % size == 0, "subgroup order must divide the group order"
    return member


def generates(group: FiniteGroup, xs: Sequence[int]) -> bool:
    return bool(_closure_mask(group, list(xs)).all())


# ---------------------------------------------------------------------------
# construction and validation


def from_multiplication_table(name: str, table) -> FiniteGroup:
    """Validate ``table`` as a group law and return the group.

    The identity is moved to index 0 if necessary. Raises :class:`NotAGroup`
    naming the first violation found.
    """
    mul = np.array(table, dtype=np.int64)
    if mul.ndim != 2 or mul.shape[0] != mul.shape[1] or mul.shape[0] == 0:
        raise NotAGroup(f"{name}: table must be a non-empty square grid")
    n = mul.shape[0]
    if mul.min() < 0 or mul.max() >= n:
        raise NotAGroup(f"{name}: table entries must lie in 0..{n - 1}")

    idx = np.arange(n)
    candidates = [
        e for e in range(n) if (mul[e] == idx).all() and (mul[:, e] == idx).all()
    ]
    if not candidates:
        raise NotAGroup(f"{name}: no two-sided identity")
    e = candidates[0]
    if e != 0:
        # relabel by swapping e and 0
        perm = idx.copy()
        perm[[0, e]] = perm[[e, 0]]
        mul = perm[mul[np.ix_(perm, perm)]]

    inv = np.full(n, -1, dtype=np.int64)
    for x in range(n):
        right = np.flatnonzero(mul[x] == 0)
        ok = [y for y in right if mul[y, x] == 0]
        if not ok:
            raise NotAGroup(f"{name}: element {x} has no inverse")
        inv[x] = ok[0]

    _check_associative(name, mul)
    return FiniteGroup(name, mul.astype(np.int32), inv.astype(np.int32))


def _check_associative(name: str, mul: np.ndarray, rng_seed: int = 0) -> None:
    n = mul.shape[0]
    if n <= FULL_ASSOCIATIVITY_LIMIT:
        for x in range(n):
            lhs = mul[mul[x]]  # row y: (x y) z
            rhs = mul[x][mul]  # row y: x (y z)
            bad = np.argwhere(lhs != rhs)
            if bad.size:
                y, z = (int(v) for v in bad[0])
                raise NotAGroup(f"{name}: not associative at ({x}, {y}, {z})")
        return
    rng = np.random.default_rng(rng_seed)
    x, y, z = rng.integers(0, n, size=(3, 10 * n))
    lhs = mul[mul[x, y], z]
    rhs = mul[x, mul[y, z]]
    bad = np.flatnonzero(lhs != rhs)
    if bad.size:
        i = bad[0]
        raise NotAGroup(f"{name}: not associative at ({x[i]}, {y[i]}, {z[i]})")


def from_permutations(
    name: str,
    degree: int,
    generators: Sequence[Sequence[int]],
    order_cap: int = DEFAULT_ORDER_CAP,
) -> FiniteGroup:
    """Close permutations of ``{0..degree-1}`` under composition.

    Generators are 0-based image lists: ``gen[j]`` is the image of point ``j``.
    """
    gens = []
    for g in generators:
        arr = np.asarray(g, dtype=np.int64)
        if arr.shape != (degree,) or sorted(arr.tolist()) != list(range(degree)):
            raise ValueError(f"{name}: {list(g)} is not a permutation of degree {degree}")
        gens.append(arr)

    identity = np.arange(degree, dtype=np.int64)
    seen = {identity.tobytes(): 0}
    elements = [identity]
    queue = deque([identity])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = x[g]  # x o g
            key = y.tobytes()
            if key not in seen:
                if len(elements) >= order_cap:
                    raise OrderCapExceeded(f"{name}: closure exceeds {order_cap} elements")
                seen[key] = len(elements)
                elements.append(y)
                queue.append(y)

    perms = np.array(elements, dtype=np.int64).reshape(len(elements), degree)
    mul = _table_from_perms(perms)
    n = len(elements)
    inv = np.empty(n, dtype=np.int32)
    rows, cols = np.nonzero(mul == 0)
    inv[rows] = cols
    return FiniteGroup(name, mul, inv, perms.astype(np.int16 if degree < 2**15 else np.int32))


def _table_from_perms(perms: np.ndarray) -> np.ndarray:
    n, d = perms.shape
    if n == 1:
        return np.zeros((1, 1), dtype=np.int32)
    # a base: points whose images already separate all elements
    base: list[int] = []
    distinct = 1
    for p in range(d):
        count = len(np.unique(perms[:, base + [p]], axis=0))
        if count > distinct:
            base.append(p)
            distinct = count
        if distinct == n:
            break
    span = d ** len(base)
    if span > 2**62:
        raise OrderCapExceeded("permutation degree too large for table construction")
    weights = np.array([d**j for j in range(len(base))], dtype=np.int64)
    keys = perms[:, base] @ weights
    if span <= 1 << 24:
        lookup = np.full(span, -1, dtype=np.int32)
        lookup[keys] = np.arange(n, dtype=np.int32)
    else:
        order = np.argsort(keys)
        sorted_keys = keys[order]

    mul = np.empty((n, n), dtype=np.int32)
    pb = perms[:, base]
    chunk = max(1, 4_000_000 // max(1, n * len(base)))
    for start in range(0, n, chunk):
        comp = perms[start : start + chunk][:, pb]  # (x o y)(b) = x[y[b]]
        k = comp[..., 0].copy()
        for j in range(1, len(base)):
            k += comp[..., j] * weights[j]
        if span <= 1 << 24:
            mul[start : start + chunk] = lookup[k]
        else:
            mul[start : start + chunk] = order[np.searchsorted(sorted_keys, k)]
    return mul


# ---------------------------------------------------------------------------
# builtin groups


def _cycle(points: Sequence[int], degree: int) -> list[int]:
    img = list(range(degree))
    for a, b in zip(points, list(points[1:]) + [points[0]]):
        img[a] = b
    return img


def _cyclic_gens(n: int, offset: int, degree: int) -> list[list[int]]:
    if n == 1:
        return []
    return [_cycle(list(range(offset, offset + n)), degree)]


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % q for q in range(2, math.isqrt(p) + 1))


def _nonzero_vectors(p: int) -> list[tuple[int, int]]:
    return [(a, b) for a in range(p) for b in range(p) if (a, b) != (0, 0)]


def sl2_matrix_permutation(p: int, matrix: Sequence[Sequence[int]]) -> list[int]:
    """Permutation of the nonzero column vectors of ``(Z/p)^2`` (in
    lexicographic order) induced by ``v -> matrix @ v``."""
    (a, b), (c, d) = ((int(x) % p for x in row) for row in matrix)
    vecs = _nonzero_vectors(p)
    pos = {v: i for i, v in enumerate(vecs)}
    return [pos[((a * x + b * y) % p, (c * x + d * y) % p)] for x, y in vecs]


def _projective_points(p: int) -> list[tuple[int, int]]:
    return [(1, b) for b in range(p)] + [(0, 1)]


def _normalize_projective(v: tuple[int, int], p: int) -> tuple[int, int]:
    x, y = v
    if x % p:
        s = pow(x, -1, p)
        return (1, (y * s) % p)
    return (0, 1)


def _psl2_matrix_permutation(p: int, matrix: Sequence[Sequence[int]]) -> list[int]:
    (a, b), (c, d) = matrix
    pts = _projective_points(p)
    pos = {v: i for i, v in enumerate(pts)}
    return [
        pos[_normalize_projective(((a * x + b * y) % p, (c * x + d * y) % p), p)]
        for x, y in pts
    ]


_SL2_GENERATORS = (((1, 1), (0, 1)), ((1, 0), (1, 1)))


def _build_cyclic(n: int) -> tuple[int, list[list[int]]]:
    if n < 1:
        raise UnsupportedSpec("cyclic(n) needs n >= 1")
    return n, _cyclic_gens(n, 0, n)


def _build_abelian(*ns: int) -> tuple[int, list[list[int]]]:
    if not ns or any(k < 1 for k in ns):
        raise UnsupportedSpec("abelian(n1, ..., nt) needs positive factors")
    degree = sum(ns)
    gens, offset = [], 0
    for k in ns:
        gens += _cyclic_gens(k, offset, degree)
        offset += k
    return degree, gens


def _build_dihedral(n: int) -> tuple[int, list[list[int]]]:
    if n < 1:
        raise UnsupportedSpec("dihedral(n) needs n >= 1")
    if n == 1:
        return _build_abelian(2)
    if n == 2:
        return _build_abelian(2, 2)
    reflection = [(-i) % n for i in range(n)]
    return n, [_cycle(list(range(n)), n), reflection]


def _build_symmetric(n: int) -> tuple[int, list[list[int]]]:
    if not 1 <= n <= 6:
        raise UnsupportedSpec("symmetric(n) is available for 1 <= n <= 6")
    if n == 1:
        return 1, []
    return n, [_cycle([0, 1], n), _cycle(list(range(n)), n)]


def _build_alternating(n: int) -> tuple[int, list[list[int]]]:
    if not 1 <= n <= 7:
        raise UnsupportedSpec("alternating(n) is available for 1 <= n <= 7")
    if n <= 2:
        return n, []
    if n == 3:
        return 3, [_cycle([0, 1, 2], 3)]
    long = list(range(n)) if n % 2 else list(range(1, n))
    return n, [_cycle([0, 1, 2], n), _cycle(long, n)]


def _build_sl2(p: int) -> tuple[int, list[list[int]]]:
    if not (_is_prime(p) and p <= 13):
        raise UnsupportedSpec("sl2(p) needs a prime p <= 13")
    return p * p - 1, [sl2_matrix_permutation(p, m) for m in _SL2_GENERATORS]


def _build_psl2(p: int) -> tuple[int, list[list[int]]]:
    if not (_is_prime(p) and p <= 13):
        raise UnsupportedSpec("psl2(p) needs a prime p <= 13")
    return p + 1, [_psl2_matrix_permutation(p, m) for m in _SL2_GENERATORS]


_BUILDERS = {
    "cyclic": _build_cyclic,
    "abelian": _build_abelian,
    "dihedral": _build_dihedral,
    "symmetric": _build_symmetric,
    "alternating": _build_alternating,
    "sl2": _build_sl2,
    "psl2": _build_psl2,
}

_SPEC_RE = re.compile(r"^([a-z0-9]+)\((.*)\)$")


def _split_args(s: str) -> list[str]:
    args, depth, cur = [], 0, ""
    for ch in s:
        if ch == "," and depth == 0:
            args.append(cur)
            cur = ""
            continue
        depth += (ch == "(") - (ch == ")")
        if depth < 0:
            raise UnsupportedSpec(f"unbalanced parentheses in {s!r}")
        cur += ch
    if depth:
        raise UnsupportedSpec(f"unbalanced parentheses in {s!r}")
    args.append(cur)
    return args


def _builtin_perms(spec: str) -> tuple[str, int, list[list[int]]]:
    """Canonical name, degree and generators for a builtin spec string."""
    spec = re.sub(r"\s+", "", spec.lower())
    if spec == "trivial":
        spec = "cyclic(1)"
    m = _SPEC_RE.match(spec)
    if not m:
        raise UnsupportedSpec(f"unrecognised group spec {spec!r}")
    kind, argstr = m.groups()
    if kind == "product":
        parts = _split_args(argstr)
        if len(parts) != 2:
            raise UnsupportedSpec("product(spec, spec) takes exactly two factors")
        (na, da, ga), (nb, db, gb) = (_builtin_perms(s) for s in parts)
        degree = da + db
        gens = [list(g) + list(range(da, degree)) for g in ga]
        gens += [list(range(da)) + [da + i for i in g] for g in gb]
        return f"product({na},{nb})", degree, gens
    if kind not in _BUILDERS:
        raise UnsupportedSpec(f"unknown group family {kind!r}")
    try:
        args = [int(a) for a in _split_args(argstr)] if argstr else []
    except ValueError:
        raise UnsupportedSpec(f"integer arguments expected in {spec!r}") from None
    try:
        degree, gens = _BUILDERS[kind](*args)
    except TypeError:
        raise UnsupportedSpec(f"wrong number of arguments in {spec!r}") from None
    return f"{kind}({','.join(map(str, args))})", degree, gens


def builtin(spec: str, order_cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """Build a group from a constructor spec such as ``"sl2(3)"`` or
    ``"product(cyclic(2),alternating(4))"``.

    Families: ``cyclic(n)``, ``dihedral(n)`` (order 2n), ``abelian(n1,..)``,
    ``symmetric(n<=6)``, ``alternating(n<=7)``, ``sl2(p)``, ``psl2(p)`` for
    primes ``p <= 13``, ``product(a,b)`` and the alias ``trivial``.
    """
    name, degree, gens = _builtin_perms(spec)
    return from_permutations(name, degree, gens, order_cap=order_cap)


def is_builtin_spec(spec: str) -> bool:
    try:
        _builtin_perms(spec)
    except UnsupportedSpec:
        return False
    return True


def matrix_element(group: FiniteGroup, p: int, matrix: Sequence[Sequence[int]]) -> int:
    """Index of a 2x2 matrix in the builtin ``sl2(p)`` group."""
    return group.index_of_permutation(sl2_matrix_permutation(p, matrix))


# ---------------------------------------------------------------------------
# catalog files


def parse_catalog(stream: IO[str] | Iterable[str]) -> list[FiniteGroup]:
    """Read groups in the line-oriented catalog format::

        # comment
        group <name> degree <d>
        i1 i2 ... id        <- one generator per line, 1-based images
        end
    """
    groups: list[FiniteGroup] = []
    names: set[str] = set()
    current = None  # (name, degree, gens, start_line)
    lineno = 0
    for lineno, raw in enumerate(stream, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if current is None:
            if tokens[0] != "group":
                raise ParseError(f"expected 'group <name> degree <d>', got {line!r}", lineno)
            if len(tokens) != 4 or tokens[2] != "degree":
                raise ParseError("header must read 'group <name> degree <d>'", lineno)
            name = tokens[1]
            if name in names:
                raise ParseError(f"duplicate group name {name!r}", lineno)
            if is_builtin_spec(name):
                raise ParseError(f"{name!r} is reserved for a builtin group", lineno)
            try:
                degree = int(tokens[3])
            except ValueError:
                raise ParseError(f"degree must be an integer, got {tokens[3]!r}", lineno) from None
            if degree < 1:
                raise ParseError("degree must be positive", lineno)
            current = (name, degree, [], lineno)
        elif tokens == ["end"]:
            name, degree, gens, start = current
            if not gens:
                gens = [list(range(degree))]
            groups.append(from_permutations(name, degree, gens))
            names.add(name)
            current = None
        else:
            name, degree, gens, _ = current
            try:
                images = [int(t) - 1 for t in tokens]
            except ValueError:
                raise ParseError(f"generator images must be integers: {line!r}", lineno) from None
            if len(images) != degree or sorted(images) != list(range(degree)):
                raise ParseError(f"not a permutation of 1..{degree}: {line!r}", lineno)
            gens.append(images)
    if current is not None:
        raise ParseError(f"group {current[0]!r} is missing 'end'", lineno)
    return groups


def load_catalog(path) -> list[FiniteGroup]:
    with open(path, encoding="utf-8") as fh:
        return parse_catalog(fh)
