import numpy as np
import pytest

from motifpred.graph import Graph
from motifpred.link_scores import score_query_edges
from motifpred.motif_scores import (
    WeightVector,
    aggregate,
    make_weights,
    score_avg,
    score_avg_db,
    score_min,
    score_mul,
)
from motifpred.motifs import build_query, instantiate, template

from conftest import constant_scorer


def _open_triangle():
    """Inner (0,1,2) on an edgeless core, neighbors outside only."""
    g = Graph(3, [])
    q = build_query(g, (0, 1, 2), [(0, 1), (0, 2)], [(1, 2)])
    return g, q


def _vector(q, g, values):
    return score_query_edges(g, q, constant_scorer(values))


class TestScoreMul:
    def test_product_of_two_halves(self):
        g = Graph(3, [])
        q = build_query(g, (0, 1, 2), [(0, 1), (0, 2)])
        sv = _vector(q, g, {(0, 1): 0.5, (0, 2): 0.5})
        assert score_mul(q, sv).value == pytest.approx(0.25)

    def test_existing_dealbreaker_zeroes(self):
        g = Graph(3, [(1, 2)])
        q = build_query(g, (0, 1, 2), [(0, 1), (0, 2)], [(1, 2)])
        sv = _vector(q, g, {(0, 1): 0.9, (0, 2): 0.9})
        assert score_mul(q, sv).value == 0.0

    def test_complete_motif_with_potential_dealbreaker(self):
        g = Graph(3, [(0, 1), (0, 2)])
        q = build_query(g, (0, 1, 2), [(0, 1), (0, 2)], [(1, 2)])
        sv = _vector(q, g, {(1, 2): 0.3})
        assert score_mul(q, sv).value == pytest.approx(0.7)

    def test_misaligned_vector_error(self):
        g, q = _open_triangle()
        other = build_query(g, (0, 1, 2), [(0, 1)])
        sv = _vector(other, g, {(0, 1): 0.5})
        with pytest.raises(ValueError, match="aligned"):
            score_mul(q, sv)


class TestScoreAvg:
    def test_uniform_mean(self):
        g = Graph(3, [])
        q = build_query(g, (0, 1, 2), [(0, 1), (0, 2)])
        sv = _vector(q, g, {(0, 1): 0.5, (0, 2): 0.5})
        w = make_weights("uniform_nonexisting", q)
        assert score_avg(q, sv, w).value == pytest.approx(0.5)

    def test_custom_weights_dot_product(self):
        g = Graph(3, [])
        q = build_query(g, (0, 1, 2), [(0, 1), (0, 2)])
        sv = _vector(q, g, {(0, 1): 0.2, (0, 2): 0.8})
        w = make_weights("custom", q, custom=[0.75, 0.25])
        assert score_avg(q, sv, w).value == pytest.approx(0.2 * 0.75 + 0.8 * 0.25)

    def test_all_ones_hits_convexity_endpoint(self):
        g = Graph(3, [(0, 1), (0, 2), (1, 2)])
        q = build_query(g, (0, 1, 2), [(0, 1), (0, 2), (1, 2)])
        sv = score_query_edges(g, q, "jaccard")
        w = make_weights("uniform_all", q)
        assert score_avg(q, sv, w).value == pytest.approx(1.0)

    def test_length_mismatch_error(self):
        g = Graph(3, [])
        q = build_query(g, (0, 1, 2), [(0, 1), (0, 2)])
        sv = _vector(q, g, {(0, 1): 0.2, (0, 2): 0.8})
        with pytest.raises(ValueError, match="mismatch"):
            score_avg(q, sv, WeightVector(np.array([1.0])))


class TestScoreAvgDb:
    def test_existing_dealbreaker_zeroes(self):
        g = Graph(3, [(1, 2)])
        q = build_query(g, (0, 1, 2), [(0, 1), (0, 2)], [(1, 2)])
        sv = _vector(q, g, {(0, 1): 1.0, (0, 2): 1.0})
        assert score_avg_db(q, sv, make_weights("uniform_nonexisting", q)).value == 0.0

    def test_rectifier_clamps_negative_combination(self):
        g, q = _open_triangle()
        sv = _vector(q, g, {(0, 1): 0.2, (0, 2): 0.2, (1, 2): 0.9})
        w = make_weights("uniform_nonexisting", q)  # uniform over 3 entries
        assert score_avg_db(q, sv, w).value == 0.0

    def test_positive_combination_survives(self):
        g, q = _open_triangle()
        sv = _vector(q, g, {(0, 1): 0.9, (0, 2): 0.9, (1, 2): 0.3})
        w = make_weights("uniform_nonexisting", q)
        assert score_avg_db(q, sv, w).value == pytest.approx(0.5)

    def test_complete_dealbreaker_free_query_scores_one(self):
        g = Graph(3, [(0, 1), (0, 2)])
        q = build_query(g, (0, 1, 2), [(0, 1), (0, 2)])
        sv = score_query_edges(g, q, "jaccard")
        assert score_avg_db(q, sv, make_weights("uniform_nonexisting", q)).value == 1.0


class TestScoreMin:
    def test_picks_smallest(self):
        g = Graph(4, [])
        q = build_query(g, (0, 1, 2, 3), [(0, 1), (0, 2), (0, 3)])
        sv = _vector(q, g, {(0, 1): 0.5, (0, 2): 0.2, (0, 3): 0.9})
        assert score_min(q, sv).value == pytest.approx(0.2)

    def test_fully_existing_returns_one(self, k4):
        q = instantiate(k4, template("clique", 3), (0, 1, 2))
        sv = score_query_edges(k4, q, "jaccard")
        assert score_min(q, sv).value == 1.0

    def test_nonexisting_dealbreaker_rectifies_to_zero(self):
        g, q = _open_triangle()
        sv = _vector(q, g, {(0, 1): 0.8, (0, 2): 0.8, (1, 2): 0.4})
        assert score_min(q, sv).value == 0.0

    def test_existing_dealbreaker_zeroes(self):
        g = Graph(3, [(0, 1), (0, 2), (1, 2)])
        q = instantiate(g, template("db_star", 3), (0, 1, 2))
        sv = score_query_edges(g, q, "jaccard")
        assert score_min(q, sv).value == 0.0


class TestMakeWeights:
    def test_uniform_all_over_motif_edges(self):
        g = Graph(3, [])
        q = build_query(g, (0, 1, 2), [(0, 1), (0, 2), (1, 2)])
        w = make_weights("uniform_all", q)
        assert np.allclose(w.weights, [1 / 3, 1 / 3, 1 / 3])

    def test_uniform_nonexisting_skips_existing(self):
        g = Graph(3, [(0, 1)])
        q = build_query(g, (0, 1, 2), [(0, 1), (0, 2), (1, 2)])
        w = make_weights("uniform_nonexisting", q)
        assert w.weights[0] == 0.0  # the existing edge
        assert np.allclose(w.weights[1:], [0.5, 0.5])

    def test_custom_simplex_violation(self):
        g = Graph(3, [])
        q = build_query(g, (0, 1, 2), [(0, 1), (0, 2)])
        with pytest.raises(ValueError, match="sum to 1"):
            make_weights("custom", q, custom=[0.6, 0.6])

    def test_negative_weight_rejected(self):
        g = Graph(3, [])
        q = build_query(g, (0, 1, 2), [(0, 1), (0, 2)])
        with pytest.raises(ValueError, match="non-negative"):
            make_weights("custom", q, custom=[1.5, -0.5])

    def test_unknown_mode(self):
        g = Graph(3, [])
        q = build_query(g, (0, 1, 2), [(0, 1)])
        with pytest.raises(ValueError, match="unknown weight mode"):
            make_weights("harmonic", q)


class TestOrderingProperties:
    def test_product_bounded_by_convex_combination(self):
        rng = np.random.default_rng(12)
        for _ in range(2000):
            n = int(rng.integers(1, 9))
            x = rng.random(n)
            w = rng.dirichlet(np.ones(n))
            assert np.prod(x) <= np.dot(w, x) + 1e-12

    def test_mul_min_avg_ordering_on_dealbreaker_free_queries(self):
        from motifpred.synth import make_random_graph

        g = make_random_graph(40, 0.2, seed=21)
        rng = np.random.default_rng(2)
        for _ in range(200):
            kind = ("clique", "star")[int(rng.integers(2))]
            k = int(rng.integers(3, 6))
            tpl = template(kind, k)
            inner = tuple(int(v) for v in rng.choice(g.n, size=k, replace=False))
            q = instantiate(g, tpl, inner)
            sv = score_query_edges(g, q, "jaccard")
            w = make_weights("uniform_nonexisting", q)
            mul, mn, avg = score_mul(q, sv).value, score_min(q, sv).value, score_avg_db(q, sv, w).value
            assert mul <= mn + 1e-12 <= avg + 2e-12

    def test_monotone_in_any_single_score(self):
        g, q = _open_triangle()
        w = make_weights("uniform_nonexisting", q)
        base = {(0, 1): 0.3, (0, 2): 0.5, (1, 2): 0.2}
        sv0 = _vector(q, g, base)
        bumped = {**base, (0, 2): 0.8}
        sv1 = _vector(q, g, bumped)
        for fn in (lambda s: score_mul(q, s).value,
                   lambda s: score_min(q, s).value,
                   lambda s: score_avg_db(q, s, w).value):
            assert fn(sv1) >= fn(sv0) - 1e-12

    def test_zero_propagation_everywhere(self):
        g = Graph(3, [(0, 1), (0, 2), (1, 2)])  # arm-arm edge = existing deal-breaker
        q = instantiate(g, template("db_star", 3), (0, 1, 2))
        sv = score_query_edges(g, q, "jaccard")
        w = make_weights("uniform_nonexisting", q)
        assert score_mul(q, sv).value == 0.0
        assert score_avg_db(q, sv, w).value == 0.0
        assert score_min(q, sv).value == 0.0

    def test_complete_instance_scores_one_under_every_aggregator(self):
        # cross-module invariant: a deal-breaker-free query that is a full
        # instance gets score 1 from mul, avg, and min alike
        from motifpred.sampling import enumerate_positives
        from motifpred.synth import make_random_graph

        g = make_random_graph(40, 0.25, seed=30)
        for kind in ("clique", "star"):
            tpl = template(kind, 3)
            for s in enumerate_positives(g, tpl, limit=20, seed=0):
                q = instantiate(g, tpl, s.inner)
                for scorer in ("jaccard", "cn", "aa"):
                    sv = score_query_edges(g, q, scorer)
                    w = make_weights("uniform_nonexisting", q)
                    assert score_mul(q, sv).value == 1.0
                    assert score_min(q, sv).value == 1.0
                    assert score_avg_db(q, sv, w).value == 1.0

    def test_aggregate_dispatch_matches_components(self):
        g, q = _open_triangle()
        sv = _vector(q, g, {(0, 1): 0.6, (0, 2): 0.4, (1, 2): 0.1})
        w = make_weights("uniform_nonexisting", q)
        assert aggregate("mul", q, sv, w) == score_mul(q, sv).value
        assert aggregate("min", q, sv, w) == score_min(q, sv).value
        assert aggregate("avg", q, sv, w) == score_avg_db(q, sv, w).value
        with pytest.raises(ValueError):
            aggregate("median", q, sv, w)
