"""Multi-coloured uniform hypergraphs and high-order connectivity.

Two j-sets of a k-graph are considered connected when a walk of edges
joins them such that every pair of consecutive edges shares at least j
vertices; components of that relation are computed over the dense colex
rank space of all j-sets.
"""

from __future__ import annotations

import math
from typing import Iterable, Sequence

import numpy as np

from .combinatorics import binom_table, edge_jset_ranks, rank_rows, rank_space
from .errors import ValidationError
from .unionfind import UnionFind


class MultiHypergraph:
    """n vertices and s colour-indexed k-uniform edge sets.

    Edges are canonicalized at construction (rows sorted ascending, rows
    ordered by colex rank) and stored read-only; the same k-set may appear
    in several colours, but never twice within one colour. Colour indices
    are 1-based throughout the public API (colour 1 = red, 2 = blue).
    """

    __slots__ = ("n", "k", "_edges")

    def __init__(self, n: int, k: int, edge_sets: Sequence[Iterable[Sequence[int]] | np.ndarray]):
        n = int(n)
        k = int(k)
        if k < 2:
            raise ValidationError(f"uniformity k={k} must be at least 2")
        if n < k:
            raise ValidationError(f"k={k} exceeds vertex count n={n}")
        if len(edge_sets) < 1:
            raise ValidationError("at least one colour is required")
        self.n = n
        self.k = k
        table = binom_table(n, k)
        canonical = []
        for colour_edges in edge_sets:
            arr = np.asarray(
                [tuple(e) for e in colour_edges] if not isinstance(colour_edges, np.ndarray) else colour_edges,
                dtype=np.int64,
            )
            if arr.size == 0:
                arr = arr.reshape(0, k)
            if arr.ndim != 2 or arr.shape[1] != k:
                raise ValidationError(f"edges must be {k}-sets")
            arr = np.sort(arr, axis=1)
            if arr.shape[0]:
                if arr.min() < 1 or arr.max() > n:
                    raise ValidationError(f"vertex out of [1, {n}]")
                if not (np.diff(arr, axis=1) > 0).all():
                    raise ValidationError("edge contains a repeated vertex")
            ranks = rank_rows(arr, table)
            order = np.argsort(ranks, kind="stable")
            ranks = ranks[order]
            if ranks.shape[0] > 1 and (np.diff(ranks) == 0).any():
                raise ValidationError("duplicate edge within a colour")
            arr = np.ascontiguousarray(arr[order])
            arr.setflags(write=False)
            canonical.append(arr)
        self._edges = tuple(canonical)

    @classmethod
    def _from_canonical(cls, n: int, k: int, edge_arrays: Sequence[np.ndarray]) -> "MultiHypergraph":
        """Trusted fast path for already-canonical int64 arrays (samplers).

        Rows must be strictly increasing and the row order strictly
        colex-increasing; this is verified with linear scans, skipping the
        sorts of the general constructor.
        """
        obj = cls.__new__(cls)
        obj.n = int(n)
        obj.k = int(k)
        canonical = []
        for arr in edge_arrays:
            arr = np.ascontiguousarray(arr, dtype=np.int64)
            if arr.ndim != 2 or arr.shape[1] != k:
                raise ValidationError(f"edges must be {k}-sets")
            if arr.shape[0]:
                if arr[:, 0].min() < 1 or arr[:, -1].max() > n:
                    raise ValidationError(f"vertex out of [1, {n}]")
                if not (np.diff(arr, axis=1) > 0).all():
                    raise ValidationError("edge contains a repeated vertex")
            if arr.shape[0] > 1:
                order = np.zeros(arr.shape[0] - 1, dtype=np.int64)
                for t in range(k - 1, -1, -1):
                    column_cmp = np.sign(arr[1:, t] - arr[:-1, t])
                    order = np.where(order == 0, column_cmp, order)
                if not (order == 1).all():
                    raise ValidationError("edges not in strictly increasing colex order")
            arr.setflags(write=False)
            canonical.append(arr)
        obj._edges = tuple(canonical)
        return obj

    @property
    def s(self) -> int:
        return len(self._edges)

    def _check_colour(self, colour: int) -> int:
        if colour < 1 or colour > self.s:
            raise ValidationError(f"colour {colour} out of [1, {self.s}]")
        return colour - 1

    def edges(self, colour: int) -> np.ndarray:
        """Edge array of one colour, shape (m, k), canonically ordered."""
        return self._edges[self._check_colour(colour)]

    def edge_count(self, colour: int) -> int:
        return int(self.edges(colour).shape[0])

    def edge_set(self, colour: int) -> frozenset:
        """Edges of one colour as a frozenset of tuples (small-scale use)."""
        return frozenset(map(tuple, self.edges(colour).tolist()))

    def check_j(self, j: int) -> int:
        if not 1 <= j < self.k:
            raise ValidationError(f"j={j} must satisfy 1 <= j < k={self.k}")
        return j

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiHypergraph):
            return NotImplemented
        return (
            self.n == other.n
            and self.k == other.k
            and self.s == other.s
            and all(np.array_equal(a, b) for a, b in zip(self._edges, other._edges))
        )

    def __hash__(self):
        return hash((self.n, self.k, tuple(a.tobytes() for a in self._edges)))

    def __repr__(self) -> str:
        counts = ", ".join(str(a.shape[0]) for a in self._edges)
        return f"MultiHypergraph(n={self.n}, k={self.k}, edges per colour=[{counts}])"


class JPartition:
    """A partition of a family of j-set ranks, stored as a dense label array.

    labels[r] is the class id of rank r, or -1 when r is outside the family.
    Class ids are canonical: numbered by increasing minimal member rank.
    """

    __slots__ = ("n", "j", "_labels", "num_classes")

    def __init__(self, n: int, j: int, labels: np.ndarray):
        self.n = int(n)
        self.j = int(j)
        space = rank_space(self.n, self.j)
        labels = np.asarray(labels, dtype=np.int64)
        if labels.shape != (space,):
            raise ValidationError(f"labels must have shape ({space},)")
        labels = labels.copy()
        mask = labels >= 0
        vals = labels[mask]
        if vals.size:
            uniq, first, inverse = np.unique(vals, return_index=True, return_inverse=True)
            order = np.empty(uniq.size, dtype=np.int64)
            order[np.argsort(first, kind="stable")] = np.arange(uniq.size)
            labels[mask] = order[inverse]
            self.num_classes = int(uniq.size)
        else:
            self.num_classes = 0
        labels.setflags(write=False)
        self._labels = labels

    @classmethod
    def singletons(cls, n: int, j: int, family: Iterable[int] | None = None) -> "JPartition":
        """Finest partition: every family member its own class (default: all of V^(j))."""
        space = rank_space(n, j)
        if family is None:
            return cls(n, j, np.arange(space, dtype=np.int64))
        labels = np.full(space, -1, dtype=np.int64)
        ranks = np.asarray(sorted(set(int(r) for r in family)), dtype=np.int64)
        if ranks.size and (ranks[0] < 0 or ranks[-1] >= space):
            raise ValidationError(f"rank out of [0, {space})")
        labels[ranks] = np.arange(ranks.size, dtype=np.int64)
        return cls(n, j, labels)

    @property
    def labels(self) -> np.ndarray:
        return self._labels

    @property
    def family_size(self) -> int:
        return int((self._labels >= 0).sum())

    def family_ranks(self) -> np.ndarray:
        return np.nonzero(self._labels >= 0)[0]

    def class_of(self, rank: int) -> int:
        cid = int(self._labels[rank])
        if cid < 0:
            raise ValidationError(f"rank {rank} is not in the partitioned family")
        return cid

    def class_members(self, class_id: int) -> np.ndarray:
        if class_id < 0 or class_id >= self.num_classes:
            raise ValidationError(f"class id {class_id} out of range")
        return np.nonzero(self._labels == class_id)[0]

    def classes(self) -> list[np.ndarray]:
        return [self.class_members(c) for c in range(self.num_classes)]

    def class_sizes(self) -> np.ndarray:
        mask = self._labels >= 0
        return np.bincount(self._labels[mask], minlength=self.num_classes).astype(np.int64)

    def __eq__(self, other) -> bool:
        if not isinstance(other, JPartition):
            return NotImplemented
        return self.n == other.n and self.j == other.j and np.array_equal(self._labels, other._labels)

    def __hash__(self):
        return hash((self.n, self.j, self._labels.tobytes()))

    def __repr__(self) -> str:
        return f"JPartition(n={self.n}, j={self.j}, classes={self.num_classes}, family={self.family_size})"


def j_components(hypergraph: MultiHypergraph, colour: int, j: int) -> JPartition:
    """Partition all of V^(j) into j-tuple-connected components of one colour.

    Two j-sets land in one class exactly when a walk of edges joins them with
    every consecutive intersection containing a j-set; that is connectivity of
    the bipartite incidence structure between j-sets and edges, so it suffices
    to union the binom(k,j) j-subsets of every edge. Isolated j-sets stay
    singleton classes.
    """
    j = hypergraph.check_j(j)
    edges = hypergraph.edges(colour)
    space = rank_space(hypergraph.n, j)
    uf = UnionFind(space)
    if edges.shape[0]:
        table = binom_table(hypergraph.n, hypergraph.k)
        incidence = edge_jset_ranks(edges, j, table)
        union = uf.union
        for row in incidence.tolist():
            first = row[0]
            for other in row[1:]:
                union(first, other)
    find = uf.find
    labels = np.fromiter((find(x) for x in range(space)), dtype=np.int64, count=space)
    return JPartition(hypergraph.n, j, labels)


def is_j_connected(hypergraph: MultiHypergraph, colour: int, j: int) -> bool:
    """True when every j-set of V^(j) lies in a single component."""
    return j_components(hypergraph, colour, j).num_classes == 1


def connectivity_threshold(n: int, k: int, j: int) -> float:
    """Threshold probability j*ln(n)/binom(n, k-j) for j-connectedness."""
    if not 1 <= j < k or k > n:
        raise ValidationError(f"need 1 <= j < k <= n, got n={n}, k={k}, j={j}")
    return j * math.log(n) / math.comb(n, k - j)
