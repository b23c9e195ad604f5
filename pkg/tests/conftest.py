"""Shared fixtures: tiny named graphs and independent distance oracles."""

from __future__ import annotations

from pathlib import Path

import numpy as np
import pytest

from motifpred.graph import Graph

DATA_DIR = Path(__file__).resolve().parent.parent / "data"
USAIR_PATH = DATA_DIR / "USAir.edges"


@pytest.fixture
def path4() -> Graph:
    """a-b-c-d path; vertices 0..3."""
    return Graph(4, [(0, 1), (1, 2), (2, 3)])


@pytest.fixture
def k4() -> Graph:
    return Graph(4, [(i, j) for i in range(4) for j in range(i + 1, 4)])


@pytest.fixture
def star5() -> Graph:
    """Hub 0 with arms 1..4."""
    return Graph(5, [(0, i) for i in range(1, 5)])


def distances_by_matrix_power(g: Graph) -> np.ndarray:
    """All-pairs hop distances via boolean adjacency powers; -1 = unreachable.

    Independent of the library's BFS; used as the oracle."""
    a = np.zeros((g.n, g.n), dtype=bool)
    for u, v in g.edges():
        a[u, v] = a[v, u] = True
    dist = np.full((g.n, g.n), -1, dtype=np.int64)
    np.fill_diagonal(dist, 0)
    reach = np.eye(g.n, dtype=bool)
    for d in range(1, g.n):
        nxt = reach | (reach @ a)
        newly = nxt & ~reach
        if not newly.any():
            break
        dist[newly] = d
        reach = nxt
    return dist


def constant_scorer(mapping: dict):
    """Scorer stub returning preset values for specific unordered pairs."""

    def score(g, u, v):
        return mapping[(min(u, v), max(u, v))]

    return score
