"""Seeded samplers for the binomial hypergraph models.

Determinism contract: colour i of a sample draws from
numpy.random.Generator(PCG64(SeedSequence([seed, i]))). The number of edges
of that colour comes from the exact binomial distribution over the k-set
rank space, and the edge ranks are then chosen as a uniform subset of that
size (oversample, deduplicate, subselect), so the sample for a given
(seed, colour) is a pure function of the spec and identical across runs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from .combinatorics import binom_table, rank_rows, unrank_rows
from .errors import ValidationError
from .hypergraph import MultiHypergraph

MODEL_MULTI = "multi_hypergraph"
MODEL_LINE = "line_double_graph"

_SEED_MASK = (1 << 64) - 1


@dataclass(frozen=True)
class SampleSpec:
    """Description of one random sample: model, sizes, colour probabilities, seed."""

    n: int
    k: int
    s: int
    probabilities: Tuple[float, ...]
    model: str = MODEL_MULTI
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "probabilities", tuple(float(p) for p in self.probabilities))
        if self.model not in (MODEL_MULTI, MODEL_LINE):
            raise ValidationError(f"unknown model {self.model!r}")
        if self.s < 1 or len(self.probabilities) != self.s:
            raise ValidationError("need exactly one probability per colour")
        if any(not 0.0 <= p <= 1.0 for p in self.probabilities):
            raise ValidationError("probabilities must lie in [0, 1]")
        if self.k < 2 or self.n < self.k:
            raise ValidationError(f"need 2 <= k <= n, got n={self.n}, k={self.k}")
        if self.model == MODEL_LINE:
            if self.k != 2:
                raise ValidationError("line model forces k = 2")
            if self.s != 2:
                raise ValidationError("line model is two-coloured")
            if self.n < 3:
                raise ValidationError("line model needs n >= 3")


def _colour_rng(seed: int, colour: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed & _SEED_MASK, colour])))


def _draw_ranks(rng: np.random.Generator, space: int, count: int) -> np.ndarray:
    """Uniform sorted count-subset of [0, space) from the given generator."""
    if count == 0:
        return np.zeros(0, dtype=np.int64)
    if count == space:
        return np.arange(space, dtype=np.int64)
    if count > space // 2:
        complement = _draw_ranks(rng, space, space - count)
        mask = np.ones(space, dtype=bool)
        mask[complement] = False
        return np.nonzero(mask)[0].astype(np.int64)
    pool = np.unique(rng.integers(0, space, size=count + count // 8 + 16))
    while pool.size < count:
        extra = rng.integers(0, space, size=2 * (count - pool.size) + 16)
        pool = np.unique(np.concatenate([pool, extra]))
    if pool.size > count:
        keep = rng.choice(pool.size, size=count, replace=False, shuffle=False)
        pool = pool[np.sort(keep)]
    return pool.astype(np.int64)


def sample_multi_hypergraph(spec: SampleSpec) -> MultiHypergraph:
    """Each k-set is an edge of colour i with probability p_i, all independent."""
    if spec.model != MODEL_MULTI:
        raise ValidationError(f"spec model is {spec.model!r}, not {MODEL_MULTI!r}")
    table = binom_table(spec.n, spec.k)
    space = math.comb(spec.n, spec.k)
    edge_sets = []
    for colour in range(1, spec.s + 1):
        rng = _colour_rng(spec.seed, colour)
        count = int(rng.binomial(space, spec.probabilities[colour - 1]))
        ranks = _draw_ranks(rng, space, count)
        edge_sets.append(unrank_rows(ranks, spec.k, spec.n, table))
    # rows decoded from sorted unique ranks are already canonical
    return MultiHypergraph._from_canonical(spec.n, spec.k, edge_sets)


def sample_line_double_graph(n: int, p1: float, p2: float, seed: int) -> MultiHypergraph:
    """Double graph on the binom(n,2) pairs of [n]; only intersecting pairs may form edges.

    Every intersecting pair of 2-sets shares exactly one vertex, so the edge
    slots are indexed by (shared vertex, 2-subset of the rest).
    """
    spec = SampleSpec(n, 2, 2, (p1, p2), model=MODEL_LINE, seed=seed)
    per_center = math.comb(n - 1, 2)
    space = n * per_center
    pair_table = binom_table(n - 1, 2)
    vertex_table = binom_table(n, 2)
    edge_sets = []
    for colour in range(1, 3):
        rng = _colour_rng(spec.seed, colour)
        count = int(rng.binomial(space, spec.probabilities[colour - 1]))
        idx = _draw_ranks(rng, space, count)
        center = idx // per_center + 1
        rest = unrank_rows(idx % per_center, 2, n - 1, pair_table)
        rest = rest + (rest >= center[:, None])  # relabel [1, n-1] to [n] minus the center
        u = rank_rows(np.sort(np.stack([center, rest[:, 0]], axis=1), axis=1), vertex_table) + 1
        w = rank_rows(np.sort(np.stack([center, rest[:, 1]], axis=1), axis=1), vertex_table) + 1
        edge_sets.append(np.sort(np.stack([u, w], axis=1), axis=1))
    return MultiHypergraph(math.comb(n, 2), 2, edge_sets)


def sample(spec: SampleSpec) -> MultiHypergraph:
    """Dispatch on the spec's model."""
    if spec.model == MODEL_MULTI:
        return sample_multi_hypergraph(spec)
    return sample_line_double_graph(spec.n, spec.probabilities[0], spec.probabilities[1], spec.seed)


def two_round_split(p: float) -> float:
    """The per-round probability p' with 2p' - p'^2 = p, for two-round exposure.

    Satisfies p' >= p/2; the union of two independent samples at p' has
    per-edge inclusion probability exactly p.
    """
    if not 0.0 <= p <= 1.0:
        raise ValidationError(f"probability {p} outside [0, 1]")
    return 1.0 - math.sqrt(1.0 - p)
