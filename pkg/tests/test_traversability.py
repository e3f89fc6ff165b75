import math
from itertools import combinations

import numpy as np
import pytest

from jigsawhg.combinatorics import rank_jset
from jigsawhg.engine import Triple, internally_spanned
from jigsawhg.errors import ValidationError
from jigsawhg.traversability import (
    BlueprintMatrix,
    blueprint,
    census_triples,
    enumerate_Q,
    enumerate_blueprint_matrices,
    is_edge_minimal_triple,
    is_traversable_family,
    is_traversable_triple,
    matrix_weights,
    wrb_generate,
)
from oracles import naive_Q, naive_census, oracle_traversable

COLEX = lambda t: t[::-1]


def triple_from_tuples(j0, e1, e2, j, n):
    return Triple(frozenset(rank_jset(x, n) for x in j0), frozenset(e1), frozenset(e2), j)


def triple_to_tuples(triple, n):
    return (
        frozenset(triple.jsets(n)),
        frozenset(triple.e1),
        frozenset(triple.e2),
    )


class TestTraversableFamily:
    def test_examples(self):
        assert is_traversable_family([(1,), (3,)], [(1,), (2,), (3,)], [(1, 2), (2, 3)])
        assert not is_traversable_family([(1,), (3,)], [(1,), (3,)], [(1, 2), (2, 3)])
        assert is_traversable_family([(1, 2)], [(1, 2)], [])

    def test_subset_precondition(self):
        with pytest.raises(ValidationError):
            is_traversable_family([(1,), (2,)], [(1,)], [(1, 2)])

    def test_member_in_no_edge(self):
        assert not is_traversable_family([(1,), (4,)], [(1,), (4,)], [(1, 2)])

    def test_matches_walk_oracle_randomized(self):
        rng = np.random.default_rng(23)
        for _ in range(300):
            n = int(rng.integers(3, 6))
            k = int(rng.integers(2, min(4, n)))
            j = int(rng.integers(1, k))
            jsets = list(combinations(range(1, n + 1), j))
            ksets = list(combinations(range(1, n + 1), k))
            ref_size = int(rng.integers(1, len(jsets) + 1))
            jref = [jsets[i] for i in rng.choice(len(jsets), size=ref_size, replace=False)]
            star_size = int(rng.integers(0, ref_size + 1))
            jstar = [jref[i] for i in rng.choice(ref_size, size=star_size, replace=False)]
            m = int(rng.integers(0, min(len(ksets), 6) + 1))
            edges = [ksets[i] for i in rng.choice(len(ksets), size=m, replace=False)]
            assert is_traversable_family(jstar, jref, edges) == oracle_traversable(
                jstar, jref, edges
            )


class TestTripleChecks:
    def test_traversable_triple_examples(self):
        t = Triple.from_jsets(
            [(1,), (2,), (3,), (4,)], [(1, 2), (2, 3), (3, 4)], [(1, 3), (1, 4), (2, 4)], 1
        )
        assert is_traversable_triple(t)
        t2 = Triple.from_jsets(
            [(1,), (2,), (3,), (4,)], [(1, 2), (2, 3), (3, 4)], [(1, 3), (2, 4)], 1
        )
        assert not is_traversable_triple(t2)
        assert is_traversable_triple(Triple.from_jsets([(1, 2)], [], [], 2))

    def test_edge_minimal_examples(self):
        t = Triple.from_jsets(
            [(1,), (2,), (3,), (4,)], [(1, 2), (2, 3), (3, 4)], [(1, 3), (1, 4), (2, 4)], 1
        )
        assert is_edge_minimal_triple(t)
        t2 = Triple.from_jsets(
            [(1,), (2,), (3,), (4,)],
            [(1, 2), (2, 3), (3, 4), (1, 3)],
            [(1, 3), (1, 4), (2, 4)],
            1,
        )
        assert not is_edge_minimal_triple(t2)
        assert is_edge_minimal_triple(Triple.from_jsets([(1,)], [], [], 1))
        assert not is_edge_minimal_triple(Triple.from_jsets([(1,)], [(1, 2)], [], 1))


class TestCensus:
    def test_examples(self):
        assert len(census_triples(3, 2, 1, 3, 2, 2)) == 9
        assert census_triples(3, 2, 1, 3, 1, 2) == set()
        assert len(census_triples(3, 2, 1, 1, 0, 0)) == 3

    def test_guard(self):
        with pytest.raises(ValidationError):
            census_triples(17, 2, 1, 3, 2, 2)  # binom(17,1) > 15
        with pytest.raises(ValidationError):
            census_triples(7, 3, 2, 3, 2, 2)  # binom(7,2) > 15
        with pytest.raises(ValidationError):
            census_triples(3, 2, 1, 7, 2, 2)
        with pytest.raises(ValidationError):
            census_triples(3, 2, 1, 3, 4, 2)

    def test_matches_naive_census(self):
        cases = [
            (3, 2, 1, 1, 0, 0),
            (3, 2, 1, 2, 1, 1),
            (3, 2, 1, 3, 2, 2),
            (3, 2, 1, 3, 2, 1),
            (3, 2, 1, 3, 3, 2),
            (4, 2, 1, 3, 2, 2),
            (4, 2, 1, 4, 3, 3),
            (4, 3, 2, 2, 1, 1),
            (4, 3, 2, 3, 2, 2),
        ]
        for n, k, j, ell, r, b in cases:
            got = {triple_to_tuples(t, n) for t in census_triples(n, k, j, ell, r, b)}
            want = naive_census(n, k, j, ell, r, b)
            assert got == want, (n, k, j, ell, r, b)

    def test_every_censused_triple_is_edge_minimal(self):
        for t in census_triples(4, 2, 1, 3, 2, 2):
            assert is_edge_minimal_triple(t)
            assert t.size == 3 and len(t.e1) == 2 and len(t.e2) == 2

    def test_colour_swap_bijection(self):
        for (n, k, j, ell, r, b) in [(4, 2, 1, 3, 2, 1), (4, 2, 1, 4, 3, 2), (4, 3, 2, 3, 2, 1)]:
            forward = census_triples(n, k, j, ell, r, b)
            backward = census_triples(n, k, j, ell, b, r)
            assert len(forward) == len(backward)
            swapped = {Triple(t.j0, t.e2, t.e1, t.j) for t in forward}
            assert swapped == backward


class TestBlueprint:
    def test_two_tree_example(self):
        t = triple_from_tuples(
            [(1,), (2,), (3,)], [(1, 2), (2, 3)], [(1, 2), (1, 3)], 1, 3
        )
        bp = blueprint(t, 3, 2, 1)
        assert bp.red.entries == ((0, 1, 0), (0, 1, 0), (0, 0, 0))
        assert bp.blue.entries == ((0, 0, 0), (0, 1, 0), (0, 1, 0))
        assert bp.bfs_order == (0, 1, 2)

    def test_size_one_zero_matrices(self):
        t = triple_from_tuples([(2,)], [], [], 1, 3)
        bp = blueprint(t, 3, 2, 1)
        assert bp.red.entries == ((0, 0, 0),)
        assert bp.blue.entries == ((0, 0, 0),)

    def test_deferred_blue_reveal(self):
        t = triple_from_tuples([(1,), (2,), (3,)], [(1, 2, 3)], [(1, 2, 3)], 1, 3)
        bp = blueprint(t, 3, 3, 1)
        assert bp.red.entries[0][2] == 1 and sum(map(sum, bp.red.entries)) == 1
        assert bp.blue.entries[2][2] == 1 and sum(map(sum, bp.blue.entries)) == 1

    def test_bfs_order_starts_at_colex_minimum(self):
        for t in census_triples(4, 2, 1, 3, 2, 2):
            bp = blueprint(t, 4, 2, 1)
            assert bp.bfs_order[0] == min(t.j0)
            assert set(bp.bfs_order) == t.j0

    def test_non_traversable_rejected(self):
        t = triple_from_tuples([(1,), (3,)], [], [], 1, 3)
        with pytest.raises(ValidationError):
            blueprint(t, 3, 2, 1)

    def test_weights_examples(self):
        zero = BlueprintMatrix(((0, 0, 0),))
        assert matrix_weights(zero) == (0, 0)
        t = triple_from_tuples([(1,), (2,), (3,)], [(1, 2), (2, 3)], [(1, 2), (1, 3)], 1, 3)
        bp = blueprint(t, 3, 2, 1)
        assert matrix_weights(bp.red) == (2, 2)
        t3 = triple_from_tuples([(1,), (2,), (3,)], [(1, 2, 3)], [(1, 2, 3)], 1, 3)
        bp3 = blueprint(t3, 3, 3, 1)
        assert matrix_weights(bp3.red) == (2, 1)

    def test_identities_on_census(self):
        # duty weights recover the family size, entry sums the edge counts
        for (n, k, j, ell, r, b) in [(4, 2, 1, 3, 2, 2), (4, 2, 1, 4, 3, 3), (4, 3, 2, 3, 2, 2)]:
            for t in census_triples(n, k, j, ell, r, b):
                bp = blueprint(t, n, k, j)
                assert matrix_weights(bp.red) == (ell - 1, r)
                assert matrix_weights(bp.blue) == (ell - 1, b)


class TestMatrixEnumeration:
    def test_examples(self):
        assert len(enumerate_blueprint_matrices(1, 0, 2, 1)) == 1
        two = enumerate_blueprint_matrices(2, 1, 2, 1)
        assert two == {
            BlueprintMatrix(((0, 1, 0), (0, 0, 0))),
            BlueprintMatrix(((0, 0, 0), (0, 1, 0))),
        }
        assert enumerate_blueprint_matrices(4, 1, 2, 1) == set()

    def test_nonempty_requires_enough_edges(self):
        for a in range(1, 6):
            for m in range(0, 5):
                for (k, j) in [(2, 1), (3, 2)]:
                    duty = math.comb(k, j)
                    matrices = enumerate_blueprint_matrices(a, m, k, j)
                    if matrices:
                        assert m >= (a - 1) / duty
                    for matrix in matrices:
                        f, g = matrix_weights(matrix)
                        assert f == a - 1 and g == m

    def test_size_bound(self):
        for (k, j) in [(2, 1), (3, 2)]:
            duty = math.comb(k, j)
            for a in range(1, 6):
                for m in range(0, 5):
                    count = len(enumerate_blueprint_matrices(a, m, k, j))
                    assert count <= (9 * duty**2) ** (a - 1)

    def test_guard(self):
        with pytest.raises(ValidationError):
            enumerate_blueprint_matrices(7, 2, 2, 1)
        with pytest.raises(ValidationError):
            enumerate_blueprint_matrices(3, 6, 2, 1)


class TestWRB:
    def test_size_one_instances(self):
        zero = BlueprintMatrix(((0, 0, 0),))
        outputs = set()
        for idx in range(3):
            t = wrb_generate(zero, zero, 3, 2, 1, [idx])
            assert t is not None and t.size == 1 and not t.e1 and not t.e2
            outputs.add(t)
        assert len(outputs) == 3
        with pytest.raises(ValidationError):
            wrb_generate(zero, zero, 3, 2, 1, [3])  # index out of range
        with pytest.raises(ValidationError):
            wrb_generate(zero, zero, 3, 2, 1, [0, 0])  # trailing choices
        with pytest.raises(ValidationError):
            wrb_generate(zero, zero, 3, 2, 1, [])  # exhausted early

    def test_duplicate_red_edge_discarded(self):
        red = BlueprintMatrix(((0, 2, 0), (0, 0, 0), (0, 0, 0)))
        blue = BlueprintMatrix(((0, 0, 0), (0, 1, 0), (0, 1, 0)))
        # initial {1}; first red edge (1,2) colouring (2,); then the same edge again
        assert wrb_generate(red, blue, 3, 2, 1, [0, 0, 1, 0]) is None

    def test_replays_census_triple(self):
        t = triple_from_tuples([(1,), (2,), (3,)], [(1, 2), (2, 3)], [(1, 2), (1, 3)], 1, 3)
        bp = blueprint(t, 3, 2, 1)
        # initial {1}; red (1,2) colours {2}; red (2,3) colours {3};
        # blue at step 2 takes (1,2), at step 3 takes (1,3)
        got = wrb_generate(bp.red, bp.blue, 3, 2, 1, [0, 0, 1, 1, 1, 0, 0])
        assert got == t

    def test_matrix_pair_validation(self):
        bad = BlueprintMatrix(((0, 1, 0),))
        good = BlueprintMatrix(((0, 0, 0),))
        with pytest.raises(ValidationError):
            wrb_generate(bad, good, 3, 2, 1, [0])
        with pytest.raises(ValidationError):
            wrb_generate(good, BlueprintMatrix(((0, 0),)), 3, 2, 1, [0])

    def test_zero_duty_slots_still_embed_edges(self):
        # row 2 calls for an edge that colours nothing; it still lands in E1
        red = BlueprintMatrix(((0, 0, 1, 0), (1, 0, 0, 0), (0, 0, 0, 0)))
        blue = BlueprintMatrix(((0, 0, 0, 0), (0, 0, 1, 0), (0, 0, 0, 0)))
        t = wrb_generate(red, blue, 4, 3, 1, [0, 0, 1, 2, 2, 0])
        assert t is not None
        assert t.e1 == frozenset({(1, 2, 3), (2, 3, 4)})
        assert t.e2 == frozenset({(1, 2, 3)})
        assert sorted(t.j0) == [0, 1, 2]


class TestEnumerateQ:
    def test_examples(self):
        assert len(enumerate_Q(3, 2, 1, 1, 0, 0)) == 3
        assert enumerate_Q(3, 2, 1, 3, 0, 2) == set()  # no red matrix exists
        census = census_triples(3, 2, 1, 3, 2, 2)
        assert census <= enumerate_Q(3, 2, 1, 3, 2, 2)

    def test_matches_literal_generator_union(self):
        cases = [
            (3, 2, 1, 1, 0, 0),
            (3, 2, 1, 2, 1, 1),
            (3, 2, 1, 2, 1, 0),
            (3, 2, 1, 3, 2, 2),
            (4, 2, 1, 2, 1, 1),
            (4, 3, 2, 2, 1, 1),
        ]
        for n, k, j, ell, r, b in cases:
            got = {triple_to_tuples(t, n) for t in enumerate_Q(n, k, j, ell, r, b)}
            want = naive_Q(n, k, j, ell, r, b)
            assert got == want, (n, k, j, ell, r, b)

    def test_containment_small(self):
        for (n, k, j, ell, r, b) in [(3, 2, 1, 2, 1, 1), (4, 2, 1, 3, 2, 2), (4, 3, 2, 2, 1, 1)]:
            census = census_triples(n, k, j, ell, r, b)
            if census:
                assert census <= enumerate_Q(n, k, j, ell, r, b)


class TestFactInternallySpannedTraversable:
    def test_spanned_implies_traversable_sampled(self):
        rng = np.random.default_rng(41)
        spanned_count = 0
        for _ in range(400):
            n = 4
            pairs = list(combinations(range(1, n + 1), 2))
            size = int(rng.integers(1, 5))
            members = [(-1,)]
            jsel = rng.choice(n, size=size, replace=False)
            j0 = [(int(v) + 1,) for v in jsel]
            e1 = [pairs[i] for i in rng.choice(len(pairs), size=int(rng.integers(0, 7)), replace=False)]
            e2 = [pairs[i] for i in rng.choice(len(pairs), size=int(rng.integers(0, 7)), replace=False)]
            t = Triple.from_jsets(j0, e1, e2, 1)
            if internally_spanned(t, n, 2, 1):
                spanned_count += 1
                assert is_traversable_triple(t)
        assert spanned_count > 40
