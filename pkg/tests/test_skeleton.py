"""Skeleton discovery and verification, clique tuple indexing, and the
clique-or-independent-set finder."""

import math
import random
from fractions import Fraction
from itertools import combinations

import pytest

from ordramsey.core import Color, ColoredCompleteGraph, OrderedGraph
from ordramsey.errors import DomainError, InternalContractError, ParameterError, TupleCapError
from ordramsey.skeleton import (
    Skeleton,
    build_clique_tuple_index,
    es_bound,
    es_clique_or_independent,
    find_skeleton_from_cliques,
    find_skeleton_in_dense,
    sample_color_cliques,
    verify_skeleton,
)

from conftest import complete_graph, random_ordered_graph


def brute_force_clique_tuples(host: OrderedGraph, k: int):
    """Every increasing k-tuple spanning a clique, by direct enumeration."""
    out = []
    for tup in combinations(range(1, host.n + 1), k):
        if all(host.has_edge(x, y) for x, y in combinations(tup, 2)):
            out.append(tup)
    return out


class TestSkeletonType:
    def test_valid_construction(self):
        s = Skeleton((4, 8), ((1, 2, 3), (5, 6, 7), (9, 10, 11)), 2, 3)
        assert s.a == 2 and s.b == 3

    def test_block_count_must_be_a_plus_one(self):
        with pytest.raises(DomainError):
            Skeleton((4,), ((1, 2), (5, 6), (8, 9)), 1, 2)

    def test_spine_length_must_be_a(self):
        with pytest.raises(DomainError):
            Skeleton((4, 8), ((1,), (5,)), 1, 1)

    def test_positive_parameters(self):
        with pytest.raises(DomainError):
            Skeleton((), ((1,),), 0, 1)


class TestVerifySkeleton:
    def setup_method(self):
        self.host = complete_graph(11)
        self.spine = (4, 8)
        self.blocks = ((1, 2, 3), (5, 6, 7), (9, 10, 11))

    def test_complete_host_passes(self):
        rep = verify_skeleton(self.host, Skeleton(self.spine, self.blocks, 2, 3))
        assert rep.ok
        assert rep.condition is None

    def test_short_block_fails_b(self):
        s = Skeleton(self.spine, ((1, 2, 3), (5, 6, 7), (9, 10)), 2, 3)
        rep = verify_skeleton(self.host, s)
        assert not rep.ok
        assert rep.condition == "b"
        assert rep.witness[0] == 2

    def test_missing_spine_block_edge_fails_c(self):
        edges = [e for e in combinations(range(1, 12), 2) if e != (4, 9)]
        host = OrderedGraph(11, edges)
        rep = verify_skeleton(host, Skeleton(self.spine, self.blocks, 2, 3))
        assert not rep.ok
        assert rep.condition == "c"
        assert rep.witness == (4, 9)

    def test_interleaving_violation_fails_a(self):
        s = Skeleton((4, 8), ((1, 2, 5), (5, 6, 7), (9, 10, 11)), 2, 3)
        rep = verify_skeleton(self.host, s)
        assert not rep.ok
        assert rep.condition == "a"

    def test_missing_spine_edge_fails_c(self):
        edges = [e for e in combinations(range(1, 12), 2) if e != (4, 8)]
        host = OrderedGraph(11, edges)
        rep = verify_skeleton(host, Skeleton(self.spine, self.blocks, 2, 3))
        assert not rep.ok
        assert rep.condition == "c"
        assert rep.witness == (4, 8)


class TestCliqueTupleIndex:
    def test_complete_graph_counts(self):
        # every increasing 5-tuple of K_9 is a clique tuple
        idx = build_clique_tuple_index(complete_graph(9), 5)
        assert idx.total == math.comb(9, 5)
        assert not idx.truncated

    def test_matches_brute_force_on_random_hosts(self):
        for seed in range(12):
            host = random_ordered_graph(11, 0.6, 7000 + seed)
            for k in (3, 5):
                idx = build_clique_tuple_index(host, k)
                expected = brute_force_clique_tuples(host, k)
                assert idx.total == len(expected)
                keys = {tup[1::2] for tup in expected}
                assert set(idx.buckets) == keys

    def test_cap_marks_truncated(self):
        idx = build_clique_tuple_index(complete_graph(12), 5, tuple_cap=10)
        assert idx.truncated
        assert idx.total == 10

    def test_bad_parameters(self):
        with pytest.raises(ParameterError):
            build_clique_tuple_index(complete_graph(4), 0)
        with pytest.raises(ParameterError):
            build_clique_tuple_index(complete_graph(4), 2, tuple_cap=0)

    def test_pigeonhole_floor(self):
        # the fullest bucket holds at least total / N^(2a) tuples
        for seed in range(8):
            host = random_ordered_graph(13, 0.7, 8000 + seed)
            idx = build_clique_tuple_index(host, 5)
            if idx.total == 0:
                continue
            key, count = idx.max_bucket()
            assert count >= idx.total / host.n ** 2


class TestFindSkeletonFromCliques:
    def test_complete_host_meets_lemma_bound(self):
        for n_param, a in ((5, 1), (9, 2)):
            big_n = 40
            skel = find_skeleton_from_cliques(complete_graph(big_n), n_param, a)
            assert skel is not None
            assert skel.b >= big_n / n_param ** 5
            assert verify_skeleton(complete_graph(big_n), skel).ok

    def test_empty_host_returns_none(self):
        assert find_skeleton_from_cliques(OrderedGraph(20), 5, 1) is None

    def test_n_too_small_rejected(self):
        with pytest.raises(ParameterError):
            find_skeleton_from_cliques(complete_graph(10), 4, 1)

    def test_planted_clique_found_and_verified(self):
        # sparse noise plus a planted clique on a contiguous window
        rng = random.Random(42)
        noise = [
            (i, j)
            for i, j in combinations(range(1, 21), 2)
            if rng.random() < 0.08 and not (8 <= i <= 14 and 8 <= j <= 14)
        ]
        planted = list(combinations(range(8, 15), 2))
        host = OrderedGraph(20, sorted(set(noise + planted)))
        skel = find_skeleton_from_cliques(host, 5, 1)
        assert skel is not None
        assert verify_skeleton(host, skel).ok
        idx = build_clique_tuple_index(host, 5)
        assert idx.total == len(brute_force_clique_tuples(host, 5))

    def test_returned_b_matches_min_block(self):
        skel = find_skeleton_from_cliques(complete_graph(25), 5, 1)
        assert skel.b == min(len(blk) for blk in skel.blocks)


class TestEsCliqueOrIndependent:
    def test_empty_graph_full_independent_set(self):
        kind, members = es_clique_or_independent(OrderedGraph(10), Fraction(1, 10))
        assert kind == "independent"
        assert members == tuple(range(1, 11))

    def test_one_edge_bound_floor(self):
        g = OrderedGraph(10, [(1, 2)])
        kind, members = es_clique_or_independent(g, Fraction(1, 10))
        assert len(members) >= 1
        assert len(members) >= es_bound(10, 0.1) - 1e-9

    def test_density_above_eps_rejected(self):
        with pytest.raises(ParameterError):
            es_clique_or_independent(complete_graph(8), Fraction(1, 10))

    def test_seeded_sparse_graphs_meet_bound(self):
        rng = random.Random(5)
        done = 0
        trial = 0
        while done < 40:
            trial += 1
            n = rng.randint(50, 200)
            g = random_ordered_graph(n, 0.04, 9000 + trial)
            from ordramsey.core import density_within

            if density_within(g, range(1, n + 1)) > Fraction(1, 10):
                continue
            kind, members = es_clique_or_independent(g, Fraction(1, 10))
            want = kind == "clique"
            for x, y in combinations(members, 2):
                assert g.has_edge(x, y) == want
            assert len(members) >= es_bound(n, 0.1) - 1e-9
            done += 1


class TestSampleColorCliques:
    def test_deterministic(self):
        col = ColoredCompleteGraph.from_random(30, 3, red_probability=0.2)
        need = {Color.RED: 3, Color.BLUE: 3}
        a = sample_color_cliques(col, need, window=10, samples=32, seed=7)
        b = sample_color_cliques(col, need, window=10, samples=32, seed=7)
        assert a == b

    def test_harvested_cliques_are_monochromatic(self):
        col = ColoredCompleteGraph.from_random(30, 11, red_probability=0.3)
        need = {Color.RED: 3, Color.BLUE: 4}
        found = sample_color_cliques(col, need, window=12, samples=48, seed=0)
        for color, cliques in found.items():
            for clique in cliques:
                assert len(clique) >= need[color]
                for x, y in combinations(clique, 2):
                    assert col.color_of(x, y) is color


class TestFindSkeletonInDense:
    def test_all_blue_coloring(self):
        col = ColoredCompleteGraph.from_function(40, lambda i, j: False)
        res = find_skeleton_in_dense(col, Color.RED, 1, Fraction(10), seed=0)
        assert res.found
        assert res.color is Color.BLUE
        blue = OrderedGraph(40, [e for e in combinations(range(1, 41), 2)])
        assert verify_skeleton(blue, res.skeleton).ok

    def test_blue_multipartite(self):
        # Blue complete 3-partite with parts of 20; Red is the sparse union
        # of the three cliques
        def is_red(i, j):
            return (i - 1) // 20 == (j - 1) // 20

        col = ColoredCompleteGraph.from_function(60, is_red)
        res = find_skeleton_in_dense(col, Color.RED, 1, Fraction(10), seed=1)
        assert res.found
        from ordramsey.core import color_class

        host = color_class(col, res.color)
        assert verify_skeleton(host, res.skeleton).ok

    def test_spine_gate(self):
        # a below 10/c is a parameter violation
        col = ColoredCompleteGraph.from_function(30, lambda i, j: False)
        with pytest.raises(ParameterError):
            find_skeleton_in_dense(col, Color.RED, 1, Fraction(1, 2))

    def test_reports_target(self):
        col = ColoredCompleteGraph.from_function(50, lambda i, j: False)
        res = find_skeleton_in_dense(col, Color.RED, 1, Fraction(10), seed=2)
        assert res.target_b > 0
        assert isinstance(res.met_target, bool)
