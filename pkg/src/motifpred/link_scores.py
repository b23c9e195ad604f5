"""First-order link scores and the normalization into [0, 1].

Scores whose raw range exceeds [0, 1] (common neighbors, Adamic-Adar) are
divided by c = max(1, ceil(max raw)) per score vector, the smallest ceiled
infinity norm that keeps every value in range. Jaccard passes through
unchanged (c = 1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .graph import Graph
from .motifs import MotifQuery

__all__ = [
    "jaccard",
    "common_neighbors",
    "adamic_adar",
    "SCORERS",
    "LinkScoreVector",
    "normalize",
    "score_query_edges",
]


def _neighbor_sets(g: Graph, u: int, v: int):
    if u == v:
        raise ValueError("link scores are defined for distinct vertices")
    return set(map(int, g.neighbors(u))), set(map(int, g.neighbors(v)))


def jaccard(g: Graph, u: int, v: int) -> float:
    """|N_u & N_v| / |N_u | N_v|; 0 when both neighborhoods are empty."""
    nu, nv = _neighbor_sets(g, u, v)
    union = len(nu | nv)
    if union == 0:
        return 0.0
    return len(nu & nv) / union


def common_neighbors(g: Graph, u: int, v: int) -> float:
    nu, nv = _neighbor_sets(g, u, v)
    return float(len(nu & nv))


def adamic_adar(g: Graph, u: int, v: int) -> float:
    """Sum of 1/ln(degree) over common neighbors.

    A common neighbor has degree >= 2 by construction, so every term is
    finite.
    """
    nu, nv = _neighbor_sets(g, u, v)
    return float(sum(1.0 / math.log(g.degree(z)) for z in nu & nv))


SCORERS: dict[str, Callable[[Graph, int, int], float]] = {
    "jaccard": jaccard,
    "cn": common_neighbors,
    "aa": adamic_adar,
}


@dataclass(frozen=True)
class LinkScoreVector:
    """Per-edge scores aligned with a query's E*_M enumeration.

    ``exists`` marks edges present in the graph (they carry unit normalized
    score), ``is_db`` marks deal-breaker entries. ``normalized = raw / c``
    holds for every entry; existing edges store raw = c to keep that
    identity.
    """

    edges: tuple[tuple[int, int], ...]
    raw: np.ndarray
    normalized: np.ndarray
    c: float
    exists: np.ndarray
    is_db: np.ndarray

    def __post_init__(self):
        if not (len(self.edges) == self.raw.shape[0] == self.normalized.shape[0]):
            raise ValueError("misaligned score vector")
        for arr in (self.raw, self.normalized, self.exists, self.is_db):
            arr.setflags(write=False)

    @property
    def has_existing_dealbreaker(self) -> bool:
        return bool(np.any(self.exists & self.is_db))


def normalize(raw, edges=None, exists=None, is_db=None) -> LinkScoreVector:
    """Normalize a raw score vector by c = max(1, ceil(max raw)).

    Raw values must be finite and non-negative. The all-zero vector
    normalizes with c = 1.
    """
    raw = np.asarray(raw, dtype=np.float64).copy()
    if raw.size and (not np.all(np.isfinite(raw)) or np.any(raw < 0)):
        raise ValueError("raw scores must be finite and non-negative")
    c = max(1.0, math.ceil(raw.max()) if raw.size else 1.0)
    n = raw.shape[0]
    if edges is None:
        edges = tuple((i, i + 1) for i in range(0, 2 * n, 2))
    exists = np.zeros(n, dtype=bool) if exists is None else np.asarray(exists, dtype=bool).copy()
    is_db = np.zeros(n, dtype=bool) if is_db is None else np.asarray(is_db, dtype=bool).copy()
    return LinkScoreVector(tuple(edges), raw, raw / c, float(c), exists, is_db)


def score_query_edges(g: Graph, q: MotifQuery, scorer: str | Callable) -> LinkScoreVector:
    """Score every edge that matters for a query.

    Non-existing edges (motif and deal-breaker alike) get the scorer value,
    normalized jointly; existing edges get unit score. The deal-breaker and
    existence flags ride along for the aggregators.
    """
    fn = SCORERS[scorer] if isinstance(scorer, str) else scorer
    edges = q.edges_that_matter
    n_motif = len(q.motif_existing) + len(q.motif_nonexisting)
    exists = np.zeros(len(edges), dtype=bool)
    exists[: len(q.motif_existing)] = True
    exists[n_motif : n_motif + len(q.dealbreaker_existing)] = True
    is_db = np.zeros(len(edges), dtype=bool)
    is_db[n_motif:] = True

    raw = np.zeros(len(edges), dtype=np.float64)
    for i, (u, v) in enumerate(edges):
        if not exists[i]:
            raw[i] = fn(g, u, v)
    if raw.size and (not np.all(np.isfinite(raw)) or np.any(raw < 0)):
        raise ValueError("scorer produced a negative or non-finite value")
    nonex = raw[~exists]
    c = max(1.0, math.ceil(nonex.max()) if nonex.size else 1.0)
    raw[exists] = c
    return LinkScoreVector(edges, raw, raw / c, float(c), exists, is_db)
