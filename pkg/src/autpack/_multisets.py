"""Vectorised enumeration of multisets of ramification indices.

A multiset of values ``r_i`` enters the simple Galois slope only through its
size and the sums ``sum 1/r_i`` and ``sum 1/r_i^2``. We scale those by
``L = lcm(values)`` so every multiset becomes an exact integer triple
``(m, s1, s2)`` with ``s1 = sum L/r_i`` and ``s2 = sum L^2/r_i^2``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

_CHUNK = 1 << 22


@dataclass
class _Half:
    values: tuple[int, ...]
    counts: np.ndarray  # (rows, len(values))
    size: np.ndarray
    s1: np.ndarray
    s2: np.ndarray


def _half(values: Sequence[int], max_size: int, scale: int) -> _Half:
    rows = []
    for size in range(max_size + 1):
        for combo in itertools.combinations_with_replacement(range(len(values)), size):
            row = [0] * len(values)
            for j in combo:
                row[j] += 1
            rows.append(row)
    counts = np.array(rows, dtype=np.int64).reshape(len(rows), len(values))
    w1 = np.array([scale // v for v in values], dtype=np.int64)
    w2 = np.array([scale * scale // (v * v) for v in values], dtype=np.int64)
    return _Half(tuple(values), counts, counts.sum(axis=1), counts @ w1, counts @ w2)


@dataclass
class MultisetChunk:
    """A block of multisets; ``left``/``right`` index the two halves and can be
    turned back into explicit multisets with :meth:`MultisetSpace.decode`."""

    m: np.ndarray
    s1: np.ndarray
    s2: np.ndarray
    left: np.ndarray
    right: np.ndarray


class MultisetSpace:
    """All multisets of ``values`` with at most ``max_size`` elements."""

    def __init__(self, values: Sequence[int], max_size: int):
        values = tuple(sorted(set(int(v) for v in values)))
        if not values or values[0] < 1:
            raise ValueError("values must be positive")
        self.values = values
        self.max_size = max_size
        self.scale = math.lcm(*values)
        if (max_size + 64) * self.scale**2 * 16 > 2**62:
            raise OverflowError("scaled sums would overflow 64-bit integers")
        mid = (len(values) + 1) // 2
        self.a = _half(values[:mid], max_size, self.scale)
        self.b = _half(values[mid:], max_size, self.scale)

    def chunks(self) -> Iterator[MultisetChunk]:
        a, b = self.a, self.b
        b_order = np.argsort(b.size, kind="stable")
        b_size_sorted = b.size[b_order]
        for size_a in range(self.max_size + 1):
            rows_a = np.flatnonzero(a.size == size_a)
            if rows_a.size == 0:
                continue
            stop = np.searchsorted(b_size_sorted, self.max_size - size_a, side="right")
            rows_b = b_order[:stop]
            step = max(1, _CHUNK // max(1, rows_b.size))
            for start in range(0, rows_a.size, step):
                ra = rows_a[start : start + step]
                left = np.repeat(ra, rows_b.size)
                right = np.tile(rows_b, ra.size)
                yield MultisetChunk(
                    a.size[left] + b.size[right],
                    a.s1[left] + b.s1[right],
                    a.s2[left] + b.s2[right],
                    left,
                    right,
                )

    def decode(self, left: int, right: int) -> tuple[int, ...]:
        out: list[int] = []
        for half, row in ((self.a, left), (self.b, right)):
            for v, c in zip(half.values, half.counts[row]):
                out += [v] * int(c)
        return tuple(out)

    def __len__(self) -> int:
        return math.comb(self.max_size + len(self.values), len(self.values))
