"""Benchmark the compiled percolation kernel against the numpy fallback.

Usage: python benchmarks/bench_engine.py [--repeats N]

Each workload samples a double hypergraph near its supercritical regime,
prepares the incidence arrays once, and times run_rounds for both
implementations on identical inputs (outputs are asserted equal).
"""

from __future__ import annotations

import argparse
import math
import time

import numpy as np

from jigsawhg import _fallback
from jigsawhg.combinatorics import binom_table, edge_jset_ranks
from jigsawhg.experiments import SweepConfig, mix_seed, probabilities_for_c
from jigsawhg.sampling import SampleSpec, sample

try:
    from jigsawhg import _speedups
except ImportError:
    _speedups = None

WORKLOADS = [
    ("graph n=1000 c=8", "multi_hypergraph", 1000, 2, 1, 8.0),
    ("graph n=4000 c=8", "multi_hypergraph", 4000, 2, 1, 8.0),
    ("3-uniform j=2 n=120 c=8", "multi_hypergraph", 120, 3, 2, 8.0),
    ("3-uniform j=2 n=240 c=8", "multi_hypergraph", 240, 3, 2, 8.0),
    ("line n=80 c=4", "line_double_graph", 80, 2, 1, 4.0),
]


def prepare(model, n, k, j, c, seed):
    config = SweepConfig(model, n, k, j, 2, 2, (c,), trials=1, seed=seed)
    p_values = probabilities_for_c(config, c)
    spec = SampleSpec(n, k, 2, p_values, model=model, seed=mix_seed(seed, 0, 0))
    hypergraph = sample(spec)
    table = binom_table(hypergraph.n, hypergraph.k)
    incidences = [
        np.ascontiguousarray(edge_jset_ranks(hypergraph.edges(colour), j, table))
        for colour in range(1, 3)
    ]
    space = math.comb(hypergraph.n, j)
    return incidences, space


def run(impl, incidences, space, repeats):
    best = float("inf")
    result = None
    for _ in range(repeats):
        labels = np.arange(space, dtype=np.int64)
        sizes = np.ones(space, dtype=np.int64)
        start = time.perf_counter()
        out = impl.run_rounds(incidences, labels, space, sizes, 2)
        best = min(best, time.perf_counter() - start)
        result = (out, labels.tolist())
    return best, result


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()

    if _speedups is None:
        print("compiled kernel not built; benchmarking the fallback only")
    header = f"{'workload':<28} {'edges/colour':>12} {'fallback':>10} {'compiled':>10} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for name, model, n, k, j, c in WORKLOADS:
        incidences, space = prepare(model, n, k, j, c, seed=1729)
        edge_count = incidences[0].shape[0]
        t_fallback, out_fallback = run(_fallback, incidences, space, args.repeats)
        if _speedups is not None:
            t_compiled, out_compiled = run(_speedups, incidences, space, args.repeats)
            assert out_fallback == out_compiled, "kernel outputs diverged"
            print(
                f"{name:<28} {edge_count:>12} {t_fallback*1000:>8.1f}ms {t_compiled*1000:>8.1f}ms "
                f"{t_fallback/t_compiled:>7.1f}x"
            )
        else:
            print(f"{name:<28} {edge_count:>12} {t_fallback*1000:>8.1f}ms {'-':>10} {'-':>8}")


if __name__ == "__main__":
    main()
