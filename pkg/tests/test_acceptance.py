"""Acceptance suite: every criterion runs at its stated tolerance and prints
one pass/fail line (run with ``pytest tests/test_acceptance.py -v -s``).

The USAir criterion needs ``data/USAir.edges`` (332 vertices / 2126 edges);
see data/README.md. When the file is absent the test fails with a
diagnostic rather than silently weakening the suite.
"""

from __future__ import annotations

import json
import os
import time
from itertools import combinations

import numpy as np
import pytest

from motifpred.cli import main as cli_main
from motifpred.evaluate import BenchConfig, auc, run_benchmark
from motifpred.featurize import extract_h_hop
from motifpred.graph import load_edge_list
from motifpred.link_scores import score_query_edges
from motifpred.motif_scores import make_weights, score_avg_db, score_min, score_mul
from motifpred.motifs import build_query, count_possible_motifs, instantiate, template
from motifpred.synth import edge_list_text, make_random_graph

from conftest import USAIR_PATH


def _report(name: str, ok: bool, detail: str = "", elapsed: float | None = None):
    t = f" [{elapsed:.1f}s]" if elapsed is not None else ""
    suffix = f" ({detail})" if detail else ""
    print(f"\nACCEPTANCE {name}: {'PASS' if ok else 'FAIL'}{suffix}{t}")
    assert ok, f"{name}: {detail}"


class Timer:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.t0


def test_prop1_ordering():
    """Product <= convex combination on 10,000 draws; mul <= min <= avg on
    1,000 deal-breaker-free motif queries. Exact up to 1e-12, < 10 s."""
    with Timer() as t:
        rng = np.random.default_rng(101)
        worst = 0.0
        for _ in range(10_000):
            n = int(rng.integers(1, 10))
            x = rng.random(n)
            w = rng.dirichlet(np.ones(n))
            gap = float(np.prod(x) - np.dot(w, x))
            worst = max(worst, gap)
        ok_draws = worst <= 1e-12

        graphs = [make_random_graph(50, p, seed=s) for p, s in ((0.08, 1), (0.2, 2), (0.35, 3))]
        checked = 0
        ok_queries = True
        while checked < 1000:
            g = graphs[checked % len(graphs)]
            kind = ("clique", "star")[int(rng.integers(2))]
            k = int(rng.integers(3, 6))
            inner = tuple(int(v) for v in rng.choice(g.n, size=k, replace=False))
            q = instantiate(g, template(kind, k), inner)
            sv = score_query_edges(g, q, "jaccard")
            w = make_weights("uniform_nonexisting", q)
            mul = score_mul(q, sv).value
            mn = score_min(q, sv).value
            avg = score_avg_db(q, sv, w).value
            if not (mul <= mn + 1e-12 and mn <= avg + 1e-12):
                ok_queries = False
                break
            checked += 1
    _report(
        "prop1-ordering",
        ok_draws and ok_queries and t.elapsed < 10,
        f"max product-minus-combination gap {worst:.2e}, {checked} queries ordered",
        t.elapsed,
    )


def test_observation1_oracle():
    """Motif counts for k in {2,3,4} equal brute-force subset enumeration."""
    with Timer() as t:
        expected = {2: 1, 3: 7, 4: 63}
        ok = True
        for k, known in expected.items():
            pairs = list(combinations(range(k), 2))
            brute = sum(1 for mask in range(1, 2 ** len(pairs)))
            if not (count_possible_motifs(k) == brute == known):
                ok = False
    _report("observation1-oracle", ok and t.elapsed < 1, "k=2,3,4 -> 1,7,63", t.elapsed)


def test_subgraph_extraction_equivalence():
    """100 random graphs (n <= 200): extract_h_hop vertex sets match the
    boolean-adjacency-power oracle for h in {1,2,3}. Exact, < 30 s."""
    with Timer() as t:
        rng = np.random.default_rng(202)
        ok = True
        for trial in range(100):
            n = int(rng.integers(20, 201))
            p = float(rng.uniform(0.01, 0.1))
            g = make_random_graph(n, p, seed=1000 + trial)
            a = np.zeros((n, n), dtype=bool)
            for u, v in g.edges():
                a[u, v] = a[v, u] = True
            k = int(rng.integers(1, 5))
            inner = [int(v) for v in rng.choice(n, size=k, replace=False)]
            reach = np.zeros(n, dtype=bool)
            reach[inner] = True
            cum = reach.copy()
            for h in (1, 2, 3):
                reach = a.T @ reach  # one more hop
                cum |= reach
                want = {int(v) for v in np.flatnonzero(cum)}
                got = set(map(int, extract_h_hop(g, inner, h).global_ids))
                if got != want:
                    ok = False
    _report("subgraph-extraction-equivalence", ok and t.elapsed < 30, "100 graphs, h=1..3", t.elapsed)


def test_auc_oracle():
    """Rank-based AUC matches O(P*N) pairwise brute force on 1,000 vectors
    within 1e-12, < 10 s."""
    with Timer() as t:
        rng = np.random.default_rng(303)
        worst = 0.0
        for _ in range(1000):
            n = int(rng.integers(5, 80))
            grid = int(rng.integers(2, 20))
            scores = np.round(rng.random(n) * grid) / grid  # ties likely
            labels = rng.integers(0, 2, size=n).astype(bool)
            if labels.all() or not labels.any():
                labels[0] = ~labels[0]
            pos, neg = scores[labels], scores[~labels]
            brute = ((pos[:, None] > neg[None, :]).sum() + 0.5 * (pos[:, None] == neg[None, :]).sum()) / (
                len(pos) * len(neg)
            )
            worst = max(worst, abs(auc(scores, labels) - float(brute)))
    _report("auc-oracle", worst <= 1e-12 and t.elapsed < 10, f"max |rank - pairwise| = {worst:.2e}", t.elapsed)


def test_dealbreaker_zeroing():
    """Every db-star query with an existing deal-breaker scores exactly 0
    under mul, avg_db, and min, for every scorer. Exhaustive."""
    with Timer() as t:
        g = make_random_graph(40, 0.2, seed=404)
        tpl = template("db_star", 3)
        checked = 0
        ok = True
        for hub in range(g.n):
            nbrs = list(map(int, g.neighbors(hub)))
            for a, b in combinations(nbrs, 2):
                if not g.has_edge(a, b):
                    continue  # need an existing arm-arm deal-breaker
                q = instantiate(g, tpl, (hub, a, b))
                assert q.dealbreaker_existing
                for scorer in ("jaccard", "cn", "aa"):
                    sv = score_query_edges(g, q, scorer)
                    w = make_weights("uniform_nonexisting", q)
                    if not (
                        score_mul(q, sv).value == 0.0
                        and score_avg_db(q, sv, w).value == 0.0
                        and score_min(q, sv).value == 0.0
                    ):
                        ok = False
                checked += 1
        # also k=4 db-stars with a single existing arm edge
        tpl4 = template("db_star", 4)
        rng = np.random.default_rng(1)
        extra = 0
        while extra < 200:
            hub = int(rng.integers(g.n))
            nbrs = g.neighbors(hub)
            if nbrs.size < 3:
                continue
            arms = tuple(int(v) for v in rng.choice(nbrs, size=3, replace=False))
            q = instantiate(g, tpl4, (hub,) + arms)
            if not q.dealbreaker_existing:
                continue
            sv = score_query_edges(g, q, "jaccard")
            w = make_weights("uniform_nonexisting", q)
            if not (score_mul(q, sv).value == score_avg_db(q, sv, w).value == score_min(q, sv).value == 0.0):
                ok = False
            extra += 1
    _report("dealbreaker-zeroing", ok and checked > 50, f"{checked} exhaustive + {extra} sampled queries", t.elapsed)


def test_heuristic_trend_usair():
    """USAir, 3- and 5-cliques, Jaccard, 2000/class, 5 trials: mean AUC
    ordering avg >= min >= mul within one standard deviation per gap, and
    AUC_avg >= 0.6 on 3-cliques. < 5 min."""
    if not USAIR_PATH.exists():
        _report(
            "heuristic-trend-usair",
            False,
            f"{USAIR_PATH} is missing. The USAir dataset (332 vertices, 2126 "
            "edges) could not be bundled: this build environment has no "
            "network access beyond approved package mirrors, and no mirror "
            "package ships it. Provision the edge list at data/USAir.edges "
            "(see data/README.md) and re-run.",
        )
    with Timer() as t:
        g = load_edge_list(USAIR_PATH.read_text())
        assert (g.n, g.m) == (332, 2126), f"unexpected USAir dimensions {(g.n, g.m)}"
        cfg = BenchConfig(
            graph=g,
            graph_name="USAir",
            motifs=(template("clique", 3), template("clique", 5)),
            scorers=("jaccard",),
            aggregators=("mul", "avg", "min"),
            n_per_class=2000,
            trials=5,
            seed=0,
            h=1,
            threads=min(4, os.cpu_count() or 1),
        )
        report = run_benchmark(cfg)
        stats = {(s["k"], s["aggregator"]): s for s in report.summary()}
        ok = True
        details = []
        for k in (3, 5):
            mul, mn, avg = (stats[(k, a)] for a in ("mul", "min", "avg"))
            gap_am = avg["auc_mean"] - mn["auc_mean"]
            gap_mm = mn["auc_mean"] - mul["auc_mean"]
            tol_am = max(avg["auc_std"], mn["auc_std"])
            tol_mm = max(mn["auc_std"], mul["auc_std"])
            if gap_am < -tol_am or gap_mm < -tol_mm:
                ok = False
            details.append(
                f"k={k}: mul {mul['auc_mean']:.3f} min {mn['auc_mean']:.3f} avg {avg['auc_mean']:.3f}"
            )
        if stats[(3, "avg")]["auc_mean"] < 0.6:
            ok = False
            details.append("avg AUC on 3-cliques below 0.6")
    _report("heuristic-trend-usair", ok and t.elapsed < 300, "; ".join(details), t.elapsed)


def test_determinism(tmp_path, monkeypatch):
    """export and bench produce byte-identical outputs across two runs with
    the same config and seed (bench also across thread counts)."""
    monkeypatch.setenv("MOTIF_CACHE_DIR", str(tmp_path / "cache"))
    with Timer() as t:
        g = make_random_graph(80, 0.15, seed=7)
        graph_file = tmp_path / "g.edges"
        graph_file.write_text(edge_list_text(g))

        export_args = ["export", "--graph", str(graph_file), "--motif", "clique", "--k", "3",
                       "--samples", "100", "--seed", "11", "--embed-dim", "8",
                       "--walks", "2", "--walk-length", "10"]
        assert cli_main([*export_args, "--out", str(tmp_path / "e1")]) == 0
        assert cli_main([*export_args, "--out", str(tmp_path / "e2")]) == 0
        export_ok = all(
            (tmp_path / f"e1.{s}.jsonl").read_bytes() == (tmp_path / f"e2.{s}.jsonl").read_bytes()
            for s in ("train", "val")
        )

        bench_args = ["bench", "--graph", str(graph_file), "--motifs", "clique", "--k", "3",
                      "--samples", "50", "--trials", "2", "--scorers", "jaccard,cn", "--seed", "5"]
        assert cli_main([*bench_args, "--threads", "2", "--out", str(tmp_path / "b1.csv")]) == 0
        assert cli_main([*bench_args, "--threads", "1", "--out", str(tmp_path / "b2.csv")]) == 0
        bench_ok = (tmp_path / "b1.csv").read_bytes() == (tmp_path / "b2.csv").read_bytes()
    _report("determinism", export_ok and bench_ok, "export x2 identical; bench identical across thread counts", t.elapsed)


def test_pipeline_shape_checks(tmp_path, monkeypatch):
    """Exhaustive over a 4,000-record db-star export: feature dim d+f+2k,
    X_H one-hot, positives missing >= 1 motif edge, negatives free of
    deal-breaker edges."""
    monkeypatch.setenv("MOTIF_CACHE_DIR", str(tmp_path / "cache"))
    with Timer() as t:
        g = make_random_graph(300, 0.03, seed=15)
        graph_file = tmp_path / "synth.edges"
        graph_file.write_text(edge_list_text(g))
        k, f, d = 4, 16, 0
        out = tmp_path / "shape"
        rc = cli_main(["export", "--graph", str(graph_file), "--motif", "db-star", "--k", str(k),
                       "--samples", "2000", "--seed", "3", "--embed-dim", str(f),
                       "--walks", "3", "--walk-length", "20", "--out", str(out)])
        assert rc == 0
        tpl = template("db_star", k)
        n_records = 0
        ok = True
        problems = []
        for split in ("train", "val"):
            for line in open(f"{out}.{split}.jsonl"):
                rec = json.loads(line)
                n_records += 1
                feats = np.array(rec["features"])
                if feats.shape != (rec["num_nodes"], d + f + 2 * k):
                    ok = False
                    problems.append(f"record {rec['id']}: feature shape {feats.shape}")
                x_h = feats[:, d + f : d + f + k]
                if not (
                    np.array_equal(x_h[:k], np.eye(k))
                    and np.array_equal(x_h[k:], np.zeros((rec["num_nodes"] - k, k)))
                ):
                    ok = False
                    problems.append(f"record {rec['id']}: bad one-hot block")
                edges = {tuple(e) for e in rec["edges"]}
                motif_present = sum(1 for pair in tpl.motif_pairs if pair in edges)
                if rec["label"] == 1 and motif_present >= len(tpl.motif_pairs):
                    ok = False
                    problems.append(f"record {rec['id']}: positive missing no motif edge")
                if rec["label"] == 0 and any(pair in edges for pair in tpl.dealbreaker_pairs):
                    ok = False
                    problems.append(f"record {rec['id']}: negative keeps a deal-breaker edge")
        if n_records != 4000:
            ok = False
            problems.append(f"expected 4000 records, got {n_records}")
    _report("pipeline-shape-checks", ok, "; ".join(problems[:3]) or f"{n_records} records validated", t.elapsed)
