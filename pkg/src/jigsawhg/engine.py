"""The jigsaw percolation process on multi-coloured hypergraphs.

Clusters partition a family of j-sets. Each round, two clusters join when
at least r_threshold colours each contain an edge holding a j-set from both
clusters; clusters merge along connected components of that auxiliary graph
and the process stops at a single cluster (percolation) or when no pair
qualifies.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import FrozenSet, Optional, Tuple

import numpy as np

from . import _fallback, _kernel
from .combinatorics import (
    JSet,
    binom_table,
    edge_jset_ranks,
    rank_jset,
    rank_space,
    unrank_jset,
)
from .errors import ValidationError
from .hypergraph import JPartition, MultiHypergraph
from .unionfind import UnionFind


@dataclass(frozen=True)
class PercolationResult:
    """Outcome of one percolation run.

    trajectory holds (round, cluster_count, max_cluster_size) per state,
    starting at round 0; rounds == len(trajectory) - 1.
    """

    percolated: bool
    rounds: int
    final_cluster_count: int
    trajectory: Tuple[Tuple[int, int, int], ...]
    final_partition: JPartition = field(compare=False)


@dataclass(frozen=True)
class Triple:
    """A candidate (j-set family, red edges, blue edges) triple.

    j0 holds colex ranks of j-sets; e1/e2 hold edge tuples. The size of a
    triple is |j0|.
    """

    j0: FrozenSet[int]
    e1: FrozenSet[JSet]
    e2: FrozenSet[JSet]
    j: int

    @classmethod
    def from_jsets(cls, jsets, e1, e2, j: int) -> "Triple":
        ranks = frozenset(rank_jset(js, max(js)) for js in jsets)
        return cls(ranks, frozenset(map(tuple, e1)), frozenset(map(tuple, e2)), j)

    @property
    def size(self) -> int:
        return len(self.j0)

    def jsets(self, n: int) -> list[JSet]:
        return [unrank_jset(r, self.j, n) for r in sorted(self.j0)]


def _incidences(hypergraph: MultiHypergraph, j: int) -> list[np.ndarray]:
    table = binom_table(hypergraph.n, hypergraph.k)
    out = []
    for colour in range(1, hypergraph.s + 1):
        inc = edge_jset_ranks(hypergraph.edges(colour), j, table)
        out.append(np.ascontiguousarray(inc))
    return out


def _check_r_threshold(hypergraph: MultiHypergraph, r_threshold: Optional[int]) -> int:
    if r_threshold is None:
        return hypergraph.s
    if not 1 <= r_threshold <= hypergraph.s:
        raise ValidationError(f"r_threshold {r_threshold} out of [1, {hypergraph.s}]")
    return int(r_threshold)


def _check_partition(hypergraph: MultiHypergraph, j: int, partition: JPartition) -> None:
    if partition.n != hypergraph.n or partition.j != j:
        raise ValidationError("partition does not match the hypergraph and j")


def build_aux_graph(
    hypergraph: MultiHypergraph,
    partition: JPartition,
    j: int,
    r_threshold: Optional[int] = None,
) -> set[Tuple[int, int]]:
    """Class-id pairs joined in at least r_threshold colours.

    A pair {i, i'} qualifies when each of r_threshold colours has an edge
    containing some family j-set of class i and some of class i' (the two
    j-sets may differ per colour, and a k-set carried by several colours
    serves each of them).
    """
    j = hypergraph.check_j(j)
    r = _check_r_threshold(hypergraph, r_threshold)
    _check_partition(hypergraph, j, partition)
    lo, hi = _fallback.collect_pairs(_incidences(hypergraph, j), partition.labels, r)
    return set(zip(lo.tolist(), hi.tolist()))


def percolate(
    hypergraph: MultiHypergraph,
    j: int,
    r_threshold: Optional[int] = None,
    initial: Optional[JPartition] = None,
) -> PercolationResult:
    """Run jigsaw percolation from an initial partition (default: singletons of V^(j)).

    Deterministic in (hypergraph, j, r_threshold, initial). A single-class
    initial partition counts as percolated with rounds = 0.
    """
    j = hypergraph.check_j(j)
    r = _check_r_threshold(hypergraph, r_threshold)
    if initial is None:
        initial = JPartition.singletons(hypergraph.n, j)
    _check_partition(hypergraph, j, initial)
    if initial.family_size == 0:
        raise ValidationError("initial family is empty")
    if initial.num_classes >= 2**31:
        raise ValidationError("too many classes for the packed pair keys")

    sizes = initial.class_sizes()
    trajectory = [(0, initial.num_classes, int(sizes.max()))]
    if initial.num_classes == 1:
        return PercolationResult(True, 0, 1, tuple(trajectory), initial)

    labels = initial.labels.copy()
    final_count, rounds = _kernel.run_rounds(
        _incidences(hypergraph, j), labels, initial.num_classes, sizes, r
    )
    for t, (kappa, max_size) in enumerate(rounds, start=1):
        trajectory.append((t, kappa, max_size))
    final = JPartition(hypergraph.n, j, labels)
    return PercolationResult(final_count == 1, len(rounds), final_count, tuple(trajectory), final)


def internally_spanned(triple: Triple, n: int, k: int, j: int) -> bool:
    """True when the triple's j-set family percolates on its own edge sets."""
    if triple.j != j:
        raise ValidationError(f"triple carries j={triple.j}, expected {j}")
    if not triple.j0:
        raise ValidationError("triple has an empty j-set family")
    space = rank_space(n, j)
    if any(r < 0 or r >= space for r in triple.j0):
        raise ValidationError("j-set rank out of range")
    hypergraph = MultiHypergraph(n, k, [sorted(triple.e1), sorted(triple.e2)])
    initial = JPartition.singletons(n, j, triple.j0)
    return percolate(hypergraph, j, r_threshold=2, initial=initial).percolated


def bottleneck_witness(
    hypergraph: MultiHypergraph,
    j: int,
    r_threshold: Optional[int] = None,
    N: int = 1,
) -> Optional[FrozenSet[int]]:
    """Family of the first cluster reaching size >= N under pairwise-serialized merges.

    The round-based merge history is replayed with every merge broken into
    unions of exactly two clusters (in ascending class-pair order), so the
    returned family J satisfies N <= |J| <= 2N - 2 for N >= 2 and percolates
    on the hypergraph's own edges. Returns None when no cluster ever reaches
    size N.
    """
    j = hypergraph.check_j(j)
    r = _check_r_threshold(hypergraph, r_threshold)
    space = rank_space(hypergraph.n, j)
    if N < 1 or N > space:
        raise ValidationError(f"N={N} out of [1, binom(n,j)]")
    if N == 1:
        return frozenset({0})

    incidences = _incidences(hypergraph, j)
    labels = np.arange(space, dtype=np.int64)
    uf = UnionFind(space)
    while True:
        lo, hi = _fallback.collect_pairs(incidences, labels, r)
        if lo.size == 0:
            return None
        first_member = np.unique(labels, return_index=True)[1]
        for a, b in zip(lo.tolist(), hi.tolist()):
            ra = uf.find(int(first_member[a]))
            rb = uf.find(int(first_member[b]))
            if ra == rb:
                continue
            root = uf.union(ra, rb)
            if uf.size[root] >= N:
                find = uf.find
                return frozenset(x for x in range(space) if find(x) == root)
        find = uf.find
        roots = np.fromiter((find(x) for x in range(space)), dtype=np.int64, count=space)
        labels = JPartition(hypergraph.n, j, roots).labels.copy()
        if int(labels.max()) == 0:
            return None
