import math
from itertools import combinations

import numpy as np
import pytest

from jigsawhg.combinatorics import unrank_jset
from jigsawhg.engine import percolate
from jigsawhg.errors import ValidationError
from jigsawhg.hypergraph import MultiHypergraph
from jigsawhg.reductions import (
    bipartition_projection,
    classify_good_vertices,
    link_double_hypergraph,
    link_vertex_map,
)
from jigsawhg.sampling import SampleSpec, sample_multi_hypergraph


class TestLink:
    def test_example(self):
        h = MultiHypergraph(4, 3, [[(1, 2, 3), (1, 3, 4)], [(2, 3, 4)]])
        link = link_double_hypergraph(h, 1)
        assert link.n == 3 and link.k == 2
        assert link.edges(1).tolist() == [[1, 2], [2, 3]]
        assert link.edges(2).tolist() == []
        assert link_vertex_map(4, 1) == (2, 3, 4)

    def test_complete_stays_complete(self):
        edges = list(combinations(range(1, 6), 3))
        h = MultiHypergraph(5, 3, [edges, edges])
        link = link_double_hypergraph(h, 3)
        want = list(combinations(range(1, 5), 2))
        assert link.edge_set(1) == set(want) and link.edge_set(2) == set(want)

    def test_uncovered_vertex_gives_empty_link(self):
        h = MultiHypergraph(5, 3, [[(1, 2, 3)], [(2, 3, 4)]])
        link = link_double_hypergraph(h, 5)
        assert link.edge_count(1) == 0 and link.edge_count(2) == 0

    def test_validation(self):
        h = MultiHypergraph(4, 2, [[(1, 2)], []])
        with pytest.raises(ValidationError):
            link_double_hypergraph(h, 1)  # k = 2
        h3 = MultiHypergraph(4, 3, [[(1, 2, 3)], []])
        with pytest.raises(ValidationError):
            link_double_hypergraph(h3, 5)

    def test_link_edges_biject_with_incident_edges(self):
        # the link's edge set is exactly {relabel(e - v) : v in e}, per colour
        for seed in range(300):
            h = sample_multi_hypergraph(SampleSpec(7, 3, 2, (0.25, 0.4), seed=seed))
            v = seed % 7 + 1
            link = link_double_hypergraph(h, v)
            vmap = link_vertex_map(7, v)
            for colour in (1, 2):
                pulled_back = {
                    tuple(sorted(vmap[x - 1] for x in e)) for e in link.edge_set(colour)
                }
                want = {e for e in h.edge_set(colour) if v in e}
                assert pulled_back == {tuple(sorted(set(e) - {v})) for e in want}

    def test_link_indicator_frequency(self):
        # a fixed link slot appears with the sampling probability (3 sigma)
        n, k, p, v = 7, 3, 0.3, 2
        trials = 1000
        hits = 0
        probe = (1, 3)  # link edge; source edge {1, 2, 3}... after relabelling
        for seed in range(trials):
            h = sample_multi_hypergraph(SampleSpec(n, k, 1, (p,), seed=seed))
            link = link_double_hypergraph(h, v)
            hits += probe in link.edge_set(1)
        sigma = math.sqrt(p * (1 - p) / trials)
        assert abs(hits / trials - p) <= 3 * sigma


class TestClassifyGoodVertices:
    def test_complete_double_graph_all_good(self):
        for n in (4, 5, 6):
            edges = list(combinations(range(1, n + 1), 3))
            h = MultiHypergraph(n, 3, [edges, edges])
            cls = classify_good_vertices(h, 2)
            assert cls.good == frozenset(range(1, n + 1)) and not cls.exceptional

    def test_vertex_in_no_red_edge_is_exceptional(self):
        h = MultiHypergraph(5, 3, [[(1, 2, 3)], list(combinations(range(1, 6), 3))])
        cls = classify_good_vertices(h, 2)
        for v in (4, 5):
            assert v in cls.exceptional

    def test_hand_replayed_example(self):
        edges = [(1, 2, 3), (1, 2, 4)]
        h = MultiHypergraph(4, 3, [edges, edges])
        cls = classify_good_vertices(h, 2)
        assert 1 in cls.good and 3 in cls.exceptional
        assert cls.good | cls.exceptional == frozenset(range(1, 5))
        assert not cls.good & cls.exceptional

    def test_validation(self):
        h = MultiHypergraph(4, 3, [[(1, 2, 3)], [(1, 2, 3)]])
        with pytest.raises(ValidationError):
            classify_good_vertices(h, 1)


class TestBipartitionProjection:
    def test_examples(self):
        h = MultiHypergraph(4, 3, [[(1, 2, 3)], [(1, 2, 3)]])
        proj = bipartition_projection(h, [1, 2])
        assert proj.edges(1).tolist() == [[1, 2]]
        proj2 = bipartition_projection(h, [1, 2, 3])
        assert proj2.edge_count(1) == 0

    def test_complete_double_projects_complete(self):
        for n in (4, 6):
            edges = list(combinations(range(1, n + 1), 3))
            h = MultiHypergraph(n, 3, [edges, edges])
            q = list(range(1, n // 2 + 1))
            proj = bipartition_projection(h, q)
            want = set(combinations(range(1, len(q) + 1), 2))
            assert proj.edge_set(1) == want and proj.edge_set(2) == want

    def test_relabelling_is_order_preserving(self):
        h = MultiHypergraph(6, 3, [[(2, 4, 5), (2, 5, 6), (1, 4, 6)], []])
        proj = bipartition_projection(h, [2, 4, 6])
        # {2,4} from (2,4,5); {2,6} from (2,5,6); (1,4,6) has 2 in Q but 1 outside... count=2: {4,6}
        assert proj.edge_set(1) == {(1, 2), (1, 3), (2, 3)}

    def test_validation(self):
        h = MultiHypergraph(4, 3, [[(1, 2, 3)], []])
        with pytest.raises(ValidationError):
            bipartition_projection(h, [1])
        with pytest.raises(ValidationError):
            bipartition_projection(h, [1, 7])
        with pytest.raises(ValidationError):
            bipartition_projection(MultiHypergraph(4, 2, [[(1, 2)]]), [1, 2])


class TestStatedConsequences:
    def test_good_cluster_coalescence_sampled(self):
        # for j >= 2: all j-sets containing good vertices end in one cluster
        rng = np.random.default_rng(2718)
        nonvacuous = 0
        for _ in range(60):
            n = int(rng.integers(8, 16))
            c = 30.0
            p = min(0.95, math.sqrt(c / (n * math.log(n))))
            h = sample_multi_hypergraph(
                SampleSpec(n, 3, 2, (p, p), seed=int(rng.integers(0, 2**63)))
            )
            cls = classify_good_vertices(h, 2)
            if len(cls.good) < 2:
                continue
            nonvacuous += 1
            final = percolate(h, 2, 2).final_partition
            cluster_ids = set()
            for v in cls.good:
                ids = {
                    final.class_of(r)
                    for r in range(math.comb(n, 2))
                    if v in unrank_jset(r, 2, n)
                }
                assert len(ids) == 1
                cluster_ids |= ids
            assert len(cluster_ids) == 1
        assert nonvacuous >= 40

    def test_projection_percolation_implies_containment_sampled(self):
        rng = np.random.default_rng(1618)
        nonvacuous = 0
        for _ in range(60):
            n = int(rng.integers(10, 17))
            p = 0.22
            h = sample_multi_hypergraph(
                SampleSpec(n, 3, 2, (p, p), seed=int(rng.integers(0, 2**63)))
            )
            q = list(range(1, n // 2 + 1))
            proj = bipartition_projection(h, q)
            if not percolate(proj, 1, 2).percolated:
                continue
            nonvacuous += 1
            final = percolate(h, 1, 2).final_partition
            ids = {final.class_of(v - 1) for v in q}
            assert len(ids) == 1
        assert nonvacuous >= 30
