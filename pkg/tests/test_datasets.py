"""Checks against the bundled real graphs (skipped when data/ is absent)."""

import csv

import pytest

from motifpred.cli import main
from motifpred.graph import load_edge_list

from conftest import DATA_DIR

YEAST = DATA_DIR / "Yeast.edges"
POWER = DATA_DIR / "Power.edges"

pytestmark = pytest.mark.skipif(not DATA_DIR.exists(), reason="data/ not provisioned")


@pytest.mark.skipif(not YEAST.exists(), reason="data/Yeast.edges not provisioned")
def test_yeast_dimensions():
    g = load_edge_list(YEAST.read_text())
    assert (g.n, g.m) == (2375, 11693)
    assert (int(g.degrees.min()), int(g.degrees.max())) == (1, 118)


@pytest.mark.skipif(not POWER.exists(), reason="data/Power.edges not provisioned")
def test_power_dimensions():
    g = load_edge_list(POWER.read_text())
    assert (g.n, g.m) == (4941, 6594)
    assert (int(g.degrees.min()), int(g.degrees.max())) == (1, 19)


@pytest.mark.skipif(not POWER.exists(), reason="data/Power.edges not provisioned")
def test_power_5_cliques_are_unavailable_cells(tmp_path):
    # the power grid is too sparse to supply 5-clique samples
    out = tmp_path / "power.csv"
    rc = main(["bench", "--graph", str(POWER), "--motifs", "clique", "--k", "5",
               "--samples", "100", "--trials", "1", "--scorers", "jaccard",
               "--threads", "1", "--out", str(out)])
    assert rc == 0  # unavailable cells are not a failure
    rows = list(csv.DictReader(out.open()))
    assert rows and all(r["status"] == "unavailable" for r in rows)
    assert all(r["auc"] == "" for r in rows)


@pytest.mark.skipif(not YEAST.exists(), reason="data/Yeast.edges not provisioned")
def test_yeast_dense_cluster_bench_runs(tmp_path):
    # the dense-cluster protocol on the protein graph: exit 0 whether the
    # sampler fills the quota (ok rows) or reports unavailable cells
    out = tmp_path / "yeast_dense.csv"
    rc = main(["bench", "--graph", str(YEAST), "--motifs", "dense", "--k", "4",
               "--density", "0.9", "--samples", "30", "--trials", "1",
               "--scorers", "jaccard", "--threads", "1", "--out", str(out)])
    assert rc == 0
    rows = list(csv.DictReader(out.open()))
    assert len(rows) == 3
    statuses = {r["status"] for r in rows}
    assert statuses <= {"ok", "unavailable"}
