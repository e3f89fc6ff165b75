"""Colexicographic indexing and enumeration of vertex subsets.

All subsets of the 1-based vertex range [1, n] are kept as strictly
increasing tuples and indexed densely by their colexicographic rank,
so partitions and incidence structures can live in flat arrays.
"""

from __future__ import annotations

import math
from itertools import combinations
from typing import Iterator, Sequence, Tuple

import numpy as np

from .errors import ValidationError

JSet = Tuple[int, ...]
SetRank = int

_MAX_RANK_SPACE = 2**63 - 1


def rank_space(n: int, j: int) -> int:
    """Number of j-subsets of [1, n]; rejects sizes beyond signed 64 bits."""
    if n < 0 or j < 0:
        raise ValidationError(f"negative parameters: n={n}, j={j}")
    size = math.comb(n, j)
    if size > _MAX_RANK_SPACE:
        raise ValidationError(f"binom({n}, {j}) does not fit the 64-bit rank space")
    return size


def validate_jset(vertices: Sequence[int], n: int, j: int | None = None) -> JSet:
    """Check a subset is strictly increasing within [1, n] and return it as a tuple."""
    vs = tuple(int(v) for v in vertices)
    if j is not None and len(vs) != j:
        raise ValidationError(f"expected a {j}-set, got {len(vs)} vertices")
    if not vs:
        raise ValidationError("empty vertex set")
    if any(b <= a for a, b in zip(vs, vs[1:])):
        raise ValidationError(f"vertices not strictly increasing: {vs}")
    if vs[0] < 1 or vs[-1] > n:
        raise ValidationError(f"vertex out of [1, {n}]: {vs}")
    return vs


def rank_jset(jset: Sequence[int], n: int) -> SetRank:
    """Colexicographic rank of a j-subset of [1, n]."""
    vs = validate_jset(jset, n)
    rank_space(n, len(vs))
    return sum(math.comb(v - 1, i) for i, v in enumerate(vs, start=1))


def unrank_jset(rank: SetRank, j: int, n: int) -> JSet:
    """Inverse of rank_jset: the j-subset of [1, n] at the given colex rank."""
    if j < 1 or j > n:
        raise ValidationError(f"invalid subset size j={j} for n={n}")
    space = rank_space(n, j)
    if rank < 0 or rank >= space:
        raise ValidationError(f"rank {rank} out of [0, {space})")
    out = []
    rem = rank
    for t in range(j, 0, -1):
        # largest x with binom(x, t) <= rem, found by binary search
        lo, hi = t - 1, n - 1
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if math.comb(mid, t) <= rem:
                lo = mid
            else:
                hi = mid - 1
        rem -= math.comb(lo, t)
        out.append(lo + 1)
    return tuple(reversed(out))


def subsets_of(edge: Sequence[int], j: int) -> list[JSet]:
    """All j-subsets of an edge, in colex order of their vertex tuples."""
    vs = tuple(edge)
    if any(b <= a for a, b in zip(vs, vs[1:])):
        raise ValidationError(f"edge not strictly increasing: {vs}")
    if j > len(vs):
        raise ValidationError(f"j={j} exceeds edge size {len(vs)}")
    return sorted(combinations(vs, j), key=lambda t: t[::-1])


def iter_jsets(n: int, j: int) -> Iterator[JSet]:
    """Yield every j-subset of [1, n] in colex order."""
    if j == 0:
        yield ()
        return
    for v in range(j, n + 1):
        for rest in iter_jsets(v - 1, j - 1):
            yield rest + (v,)


def binom_table(n: int, kmax: int) -> np.ndarray:
    """Int64 table t[x, c] = binom(x, c) for 0 <= x <= n, 0 <= c <= kmax."""
    for c in range(kmax + 1):
        if math.comb(n, c) > _MAX_RANK_SPACE:
            raise ValidationError(f"binom({n}, {c}) does not fit the 64-bit rank space")
    table = np.zeros((n + 1, kmax + 1), dtype=np.int64)
    table[:, 0] = 1
    for c in range(1, kmax + 1):
        table[c:, c] = np.cumsum(table[c - 1 : n, c - 1])
    return table


def rank_rows(rows: np.ndarray, table: np.ndarray) -> np.ndarray:
    """Colex ranks of subsets stored as sorted rows of a 2-D int array."""
    if rows.shape[0] == 0:
        return np.zeros(0, dtype=np.int64)
    ranks = np.zeros(rows.shape[0], dtype=np.int64)
    for t in range(rows.shape[1]):
        ranks += table[rows[:, t] - 1, t + 1]
    return ranks


def unrank_rows(ranks: np.ndarray, j: int, n: int, table: np.ndarray) -> np.ndarray:
    """Vectorized inverse of rank_rows: (m, j) array of sorted j-subsets."""
    m = ranks.shape[0]
    out = np.zeros((m, j), dtype=np.int64)
    rem = ranks.astype(np.int64, copy=True)
    for t in range(j, 0, -1):
        col = table[: n + 1, t]
        x = np.searchsorted(col, rem, side="right") - 1
        rem = rem - col[x]
        out[:, t - 1] = x + 1
    return out


def subset_patterns(k: int, j: int) -> list[Tuple[int, ...]]:
    """Position patterns of the j-subsets of a sorted k-tuple, in colex order.

    For strictly increasing rows the colex order of the extracted subsets
    is the same for every row, so one pattern list serves a whole array.
    """
    return sorted(combinations(range(k), j), key=lambda t: t[::-1])


def edge_jset_ranks(edges: np.ndarray, j: int, table: np.ndarray) -> np.ndarray:
    """(m, binom(k,j)) array of the colex ranks of each edge's j-subsets."""
    k = edges.shape[1]
    patterns = subset_patterns(k, j)
    m = edges.shape[0]
    out = np.zeros((m, len(patterns)), dtype=np.int64)
    for ci, pattern in enumerate(patterns):
        col = np.zeros(m, dtype=np.int64)
        for t, pos in enumerate(pattern):
            col += table[edges[:, pos] - 1, t + 1]
        out[:, ci] = col
    return out
