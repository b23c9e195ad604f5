import math

import numpy as np
import pytest

from motifpred.graph import Graph
from motifpred.link_scores import (
    adamic_adar,
    common_neighbors,
    jaccard,
    normalize,
    score_query_edges,
)
from motifpred.motifs import build_query, instantiate, template
from motifpred.synth import make_random_graph

from conftest import constant_scorer


class TestJaccard:
    def test_identical_neighborhoods(self):
        g = Graph(4, [(0, 1), (0, 2), (1, 3), (2, 3)])
        assert jaccard(g, 0, 3) == 1.0

    def test_path_half(self, path4):
        # N_a={b}, N_c={b,d}: intersection {b}, union {b,d}
        assert jaccard(path4, 0, 2) == 0.5

    def test_isolated_pair_is_zero(self):
        g = Graph(4, [(0, 1)])
        assert jaccard(g, 2, 3) == 0.0

    def test_same_vertex_error(self, path4):
        with pytest.raises(ValueError):
            jaccard(path4, 1, 1)


class TestCommonNeighbors:
    def test_path(self, path4):
        assert common_neighbors(path4, 0, 2) == 1

    def test_complete_graph(self, k4):
        for u in range(4):
            for v in range(u + 1, 4):
                assert common_neighbors(k4, u, v) == 2

    def test_against_set_intersection_oracle(self):
        g = make_random_graph(40, 0.15, seed=2)
        rng = np.random.default_rng(0)
        for _ in range(1000):
            u, v = rng.choice(40, size=2, replace=False)
            oracle = len(set(map(int, g.neighbors(int(u)))) & set(map(int, g.neighbors(int(v)))))
            assert common_neighbors(g, int(u), int(v)) == oracle


class TestAdamicAdar:
    def test_single_common_neighbor_of_degree_two(self, path4):
        got = adamic_adar(path4, 0, 2)
        assert got == pytest.approx(1.0 / math.log(2), abs=1e-12)
        assert got == pytest.approx(1.442695, abs=1e-6)

    def test_no_common_neighbors(self, path4):
        assert adamic_adar(path4, 0, 3) == 0.0

    def test_against_direct_summation_oracle(self):
        g = make_random_graph(40, 0.2, seed=4)
        rng = np.random.default_rng(1)
        for _ in range(300):
            u, v = (int(x) for x in rng.choice(40, size=2, replace=False))
            common = set(map(int, g.neighbors(u))) & set(map(int, g.neighbors(v)))
            oracle = sum(1.0 / math.log(len(g.neighbors(z))) for z in common)
            assert adamic_adar(g, u, v) == pytest.approx(oracle, abs=1e-12)


class TestNormalize:
    def test_jaccard_passes_through(self):
        sv = normalize([0.5, 1.0])
        assert sv.c == 1.0
        assert list(sv.normalized) == [0.5, 1.0]

    def test_ceil_of_max(self):
        sv = normalize([3.0, 7.0, 2.0])
        assert sv.c == 7.0
        assert list(sv.normalized) == [3 / 7, 1.0, 2 / 7]

    def test_fractional_max_ceils(self):
        assert normalize([2.4]).c == 3.0

    def test_all_zero(self):
        sv = normalize([0.0, 0.0])
        assert sv.c == 1.0
        assert list(sv.normalized) == [0.0, 0.0]

    def test_negative_raw_error(self):
        with pytest.raises(ValueError):
            normalize([-0.1])

    def test_non_finite_error(self):
        with pytest.raises(ValueError):
            normalize([np.inf])

    def test_order_preserved(self):
        rng = np.random.default_rng(5)
        raw = rng.random(50) * 9
        sv = normalize(raw)
        assert np.array_equal(np.argsort(sv.raw), np.argsort(sv.normalized))


class TestScoreQueryEdges:
    def test_fully_existing_motif_scores_all_ones(self, k4):
        q = instantiate(k4, template("clique", 3), (0, 1, 2))
        sv = score_query_edges(k4, q, "jaccard")
        assert list(sv.normalized) == [1.0, 1.0, 1.0]
        assert sv.exists.all()

    def test_partial_clique_mixes_unit_and_scored(self):
        g = Graph(4, [(0, 1), (0, 3), (1, 3), (2, 3)])
        q = instantiate(g, template("clique", 3), (0, 1, 2))
        sv = score_query_edges(g, q, "jaccard")
        # edge order: existing first, then non-existing in template order
        assert sv.edges == ((0, 1), (0, 2), (1, 2))
        assert sv.normalized[0] == 1.0
        assert sv.normalized[1] == pytest.approx(jaccard(g, 0, 2))
        assert sv.normalized[2] == pytest.approx(jaccard(g, 1, 2))

    def test_existing_dealbreaker_is_flagged(self):
        g = Graph(3, [(0, 1), (0, 2), (1, 2)])
        q = instantiate(g, template("db_star", 3), (0, 1, 2))
        sv = score_query_edges(g, q, "jaccard")
        assert sv.has_existing_dealbreaker

    def test_joint_normalization_covers_dealbreakers(self):
        g = Graph(4, [(0, 1), (2, 3)])
        q = build_query(g, (0, 1, 2), [(0, 1), (0, 2)], [(1, 2)])
        sv = score_query_edges(g, q, constant_scorer({(0, 2): 3.0, (1, 2): 5.0}))
        assert sv.c == 5.0
        assert sv.normalized[sv.is_db][0] == pytest.approx(1.0)
        assert sv.normalized[1] == pytest.approx(0.6)

    def test_symmetry_and_range_fuzz(self):
        g = make_random_graph(30, 0.2, seed=8)
        rng = np.random.default_rng(3)
        for name in ("jaccard", "cn", "aa"):
            tpl = template("clique", 4)
            for _ in range(50):
                inner = tuple(int(v) for v in rng.choice(30, size=4, replace=False))
                sv = score_query_edges(g, instantiate(g, tpl, inner), name)
                assert np.all(sv.normalized >= 0) and np.all(sv.normalized <= 1)
        for _ in range(200):
            u, v = (int(x) for x in rng.choice(30, size=2, replace=False))
            assert jaccard(g, u, v) == jaccard(g, v, u)
            assert common_neighbors(g, u, v) == common_neighbors(g, v, u)
            assert adamic_adar(g, u, v) == adamic_adar(g, v, u)
