"""Pure-Python (numpy) percolation round loop.

Used when the compiled core is unavailable or disabled; produces output
identical to jigsawhg._speedups.run_rounds. Class-id pairs are packed into
int64 keys (lo << 32 | hi), so class counts must stay below 2**31.
"""

from __future__ import annotations

from itertools import combinations

import numpy as np

from .unionfind import UnionFind

_EMPTY = np.zeros(0, dtype=np.int64)
_LOW32 = np.int64(0xFFFFFFFF)


def collect_pairs(incidences, labels, r_threshold):
    """Unordered class-id pairs adjacent in at least r_threshold colours.

    For each edge the class ids of its in-family j-subsets are gathered and
    every distinct pair among them is marked adjacent for that colour.
    Returns two int64 arrays (lo, hi) sorted by packed key.
    """
    per_colour = []
    for incidence in incidences:
        if incidence.shape[0] == 0:
            per_colour.append(_EMPTY)
            continue
        cls = labels[incidence]
        keys = []
        for c1, c2 in combinations(range(cls.shape[1]), 2):
            a = cls[:, c1]
            b = cls[:, c2]
            lo = np.minimum(a, b)
            hi = np.maximum(a, b)
            mask = (lo >= 0) & (lo != hi)
            if mask.any():
                keys.append((lo[mask] << 32) | hi[mask])
        per_colour.append(np.unique(np.concatenate(keys)) if keys else _EMPTY)

    nonempty = [k for k in per_colour if k.size]
    if len(nonempty) < r_threshold:
        return _EMPTY, _EMPTY
    if r_threshold <= 1:
        merged = np.unique(np.concatenate(nonempty))
    else:
        combined = np.concatenate(nonempty)
        uniq, counts = np.unique(combined, return_counts=True)
        merged = uniq[counts >= r_threshold]
    return merged >> 32, merged & _LOW32


def run_rounds(incidences, labels, num_classes, class_sizes, r_threshold):
    """Iterate merge rounds in place until one class remains or no pair qualifies.

    labels is mutated; returns (final_class_count, [(classes, max_size), ...])
    with one entry per completed round. Class ids stay canonical (numbered by
    increasing minimal member rank) after every round.
    """
    rounds = []
    kappa = int(num_classes)
    sizes = np.asarray(class_sizes, dtype=np.int64).copy()
    while kappa > 1:
        lo, hi = collect_pairs(incidences, labels, r_threshold)
        if lo.size == 0:
            break
        uf = UnionFind(kappa)
        union = uf.union
        for a, b in zip(lo.tolist(), hi.tolist()):
            union(a, b)
        find = uf.find
        roots = np.fromiter((find(c) for c in range(kappa)), dtype=np.int64, count=kappa)
        uniq, first, inverse = np.unique(roots, return_index=True, return_inverse=True)
        order = np.empty(uniq.size, dtype=np.int64)
        order[np.argsort(first, kind="stable")] = np.arange(uniq.size)
        new_ids = order[inverse]
        new_sizes = np.zeros(uniq.size, dtype=np.int64)
        np.add.at(new_sizes, new_ids, sizes)
        mask = labels >= 0
        labels[mask] = new_ids[labels[mask]]
        kappa = int(uniq.size)
        sizes = new_sizes
        rounds.append((kappa, int(sizes.max())))
    return kappa, rounds
