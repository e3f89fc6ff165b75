"""Dimension reductions: vertex links, good-vertex classification, and the
two-block pair projection.

These operations lower a k-uniform instance to a (k-1)-uniform or graph
instance whose percolation behaviour constrains the original process.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import FrozenSet, Sequence, Tuple

import numpy as np

from .combinatorics import binom_table, rank_rows
from .engine import percolate
from .errors import ValidationError
from .hypergraph import MultiHypergraph


@dataclass(frozen=True)
class VertexClassification:
    """Disjoint split of [1, n] by whether each vertex's link percolates."""

    good: FrozenSet[int]
    exceptional: FrozenSet[int]


def link_vertex_map(n: int, v: int) -> Tuple[int, ...]:
    """Original labels of the link's vertices: position i holds the vertex
    that relabelled i+1 after removing v (order-preserving)."""
    if not 1 <= v <= n:
        raise ValidationError(f"vertex {v} out of [1, {n}]")
    return tuple(x for x in range(1, n + 1) if x != v)


def link_double_hypergraph(hypergraph: MultiHypergraph, v: int) -> MultiHypergraph:
    """Keep each colour's edges containing v, remove v, relabel to [1, n-1].

    The relabelling is order-preserving; link_vertex_map(n, v) recovers the
    original labels.
    """
    if hypergraph.k < 3:
        raise ValidationError("link is only defined for k >= 3")
    if not 1 <= v <= hypergraph.n:
        raise ValidationError(f"vertex {v} out of [1, {hypergraph.n}]")
    edge_sets = []
    for colour in range(1, hypergraph.s + 1):
        edges = hypergraph.edges(colour)
        keep = edges[(edges == v).any(axis=1)]
        stripped = keep[keep != v].reshape(keep.shape[0], hypergraph.k - 1)
        edge_sets.append(np.where(stripped > v, stripped - 1, stripped))
    return MultiHypergraph(hypergraph.n - 1, hypergraph.k - 1, edge_sets)


def classify_good_vertices(hypergraph: MultiHypergraph, j: int) -> VertexClassification:
    """A vertex is good when its link (j-1)-percolates with both colours required.

    Each link is recomputed independently; this is a verification path, not a
    performance path.
    """
    if j < 2:
        raise ValidationError("good-vertex classification needs j >= 2")
    hypergraph.check_j(j)
    if hypergraph.s != 2:
        raise ValidationError("good-vertex classification is defined for two colours")
    good = set()
    exceptional = set()
    for v in range(1, hypergraph.n + 1):
        link = link_double_hypergraph(hypergraph, v)
        if percolate(link, j - 1, r_threshold=2).percolated:
            good.add(v)
        else:
            exceptional.add(v)
    return VertexClassification(frozenset(good), frozenset(exceptional))


def bipartition_projection(hypergraph: MultiHypergraph, q: Sequence[int]) -> MultiHypergraph:
    """Project onto a vertex block Q: a pair {u, w} of Q becomes an edge of a
    colour when some edge of that colour contains it with all k-2 remaining
    vertices outside Q. Vertices of Q are relabelled order-preservingly.
    """
    if hypergraph.k < 3:
        raise ValidationError("projection is only defined for k >= 3")
    q_sorted = sorted(set(int(x) for x in q))
    if len(q_sorted) < 2:
        raise ValidationError("Q must contain at least two vertices")
    if q_sorted[0] < 1 or q_sorted[-1] > hypergraph.n:
        raise ValidationError(f"Q vertex out of [1, {hypergraph.n}]")
    q_arr = np.asarray(q_sorted, dtype=np.int64)
    pair_table = binom_table(len(q_sorted), 2)
    edge_sets = []
    for colour in range(1, hypergraph.s + 1):
        edges = hypergraph.edges(colour)
        in_q = np.isin(edges, q_arr)
        rows = in_q.sum(axis=1) == 2
        pairs = edges[rows][in_q[rows]].reshape(-1, 2)
        relabelled = np.searchsorted(q_arr, pairs) + 1
        # several source edges may yield one pair; deduplicate via ranks
        if relabelled.shape[0]:
            _, first = np.unique(rank_rows(relabelled, pair_table), return_index=True)
            relabelled = relabelled[first]
        edge_sets.append(relabelled)
    return MultiHypergraph(len(q_sorted), 2, edge_sets)
