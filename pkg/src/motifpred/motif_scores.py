"""Aggregate per-edge link scores into a motif score.

Three aggregators are provided. ``mul`` multiplies motif-edge scores and
(1 - score) factors for deal-breakers, treating links as independent.
``avg`` is a convex combination of the score vector; its deal-breaker-aware
variant negates scores of potential deal-breakers, zeroes everything when a
deal-breaker already exists, and rectifies the combination at 0. ``min``
puts all weight on the smallest transformed score. Every aggregator maps
into [0, 1], and the product is never larger than any convex combination of
the same scores, which gives mul <= min <= avg pointwise on deal-breaker-free
queries.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .link_scores import LinkScoreVector
from .motifs import MotifQuery

__all__ = [
    "WeightVector",
    "MotifScore",
    "make_weights",
    "score_mul",
    "score_avg",
    "score_avg_db",
    "score_min",
    "AGGREGATORS",
    "aggregate",
]

_SIMPLEX_TOL = 1e-12


@dataclass(frozen=True)
class WeightVector:
    """Non-negative weights summing to 1, aligned with a query's E*_M edges."""

    weights: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=np.float64)
        if np.any(w < 0):
            raise ValueError("weights must be non-negative")
        if w.size and abs(float(w.sum()) - 1.0) > _SIMPLEX_TOL:
            raise ValueError(f"weights must sum to 1, got {float(w.sum())!r}")
        object.__setattr__(self, "weights", w)
        w.setflags(write=False)


@dataclass(frozen=True)
class MotifScore:
    value: float
    aggregator_tag: str
    dealbreaker_mode: bool = False

    def __post_init__(self):
        if not 0.0 <= self.value <= 1.0:
            raise ValueError(f"motif score {self.value} outside [0, 1]")


def _check_alignment(q: MotifQuery, scores: LinkScoreVector) -> None:
    if scores.edges != q.edges_that_matter:
        raise ValueError("score vector is not aligned with the query's edge enumeration")


def make_weights(mode: str, q: MotifQuery, custom=None) -> WeightVector:
    """Weight vector over E*_M for the convex-combination aggregators.

    uniform_all: 1/|E_M| on every motif edge (existing edges carry their
        unit score), nothing on deal-breakers.
    uniform_nonexisting: 1/|E*_{M,N}| on every non-existing edge that
        matters, motif and deal-breaker alike; existing edges get zero
        weight (their score is nulled in this mode). This is the default
        used by the benchmark.
    custom: caller-supplied vector over E*_M, validated.
    """
    n_motif = len(q.motif_existing) + len(q.motif_nonexisting)
    n_total = n_motif + len(q.dealbreaker_existing) + len(q.dealbreaker_nonexisting)
    w = np.zeros(n_total, dtype=np.float64)
    if mode == "uniform_all":
        if n_motif:
            w[:n_motif] = 1.0 / n_motif
    elif mode == "uniform_nonexisting":
        nonex = np.zeros(n_total, dtype=bool)
        nonex[len(q.motif_existing) : n_motif] = True
        nonex[n_motif + len(q.dealbreaker_existing) :] = True
        if nonex.any():
            w[nonex] = 1.0 / int(nonex.sum())
    elif mode == "custom":
        w = np.asarray(custom, dtype=np.float64)
        if w.shape[0] != n_total:
            raise ValueError(f"custom weights have length {w.shape[0]}, query has {n_total} edges that matter")
    else:
        raise ValueError(f"unknown weight mode {mode!r}")
    if n_total == 0 or (mode != "custom" and w.sum() == 0.0):
        # Degenerate query (everything that matters already exists); the
        # score functions special-case it, a zero vector keeps alignment.
        return _zero_weights(n_total)
    return WeightVector(w)


def _zero_weights(n: int) -> WeightVector:
    wv = object.__new__(WeightVector)
    z = np.zeros(n, dtype=np.float64)
    z.setflags(write=False)
    object.__setattr__(wv, "weights", z)
    return wv


def _transformed(scores: LinkScoreVector) -> np.ndarray | None:
    """Eq.-style transformed vector: deal-breaker scores negated.

    Returns None when an existing deal-breaker forces the whole vector to
    zero (the motif cannot arise).
    """
    if scores.has_existing_dealbreaker:
        return None
    s = scores.normalized.copy()
    s[scores.is_db] = -s[scores.is_db]
    return s


def score_mul(q: MotifQuery, scores: LinkScoreVector) -> MotifScore:
    """Independent product: prod s(e) over motif edges times prod (1 - s(e))
    over deal-breakers. An existing deal-breaker contributes factor 0."""
    _check_alignment(q, scores)
    s = scores.normalized
    motif = ~scores.is_db
    value = float(np.prod(s[motif])) * float(np.prod(1.0 - s[scores.is_db]))
    return MotifScore(value, "mul", bool(scores.is_db.any()))


def score_avg(q: MotifQuery, scores: LinkScoreVector, w: WeightVector) -> MotifScore:
    """Plain convex combination <w, s(e)> (no deal-breaker handling)."""
    _check_alignment(q, scores)
    if w.weights.shape[0] != scores.normalized.shape[0]:
        raise ValueError("weight/score length mismatch")
    return MotifScore(float(np.dot(w.weights, scores.normalized)), "avg")


def score_avg_db(q: MotifQuery, scores: LinkScoreVector, w: WeightVector) -> MotifScore:
    """Rectified convex combination with negated deal-breaker scores.

    An existing deal-breaker zeroes the score outright. A query whose
    edges-that-matter all exist (and none is a deal-breaker) is a complete
    motif and scores 1.
    """
    _check_alignment(q, scores)
    if w.weights.shape[0] != scores.normalized.shape[0]:
        raise ValueError("weight/score length mismatch")
    s = _transformed(scores)
    if s is None:
        return MotifScore(0.0, "avg", True)
    if scores.exists.all():
        return MotifScore(1.0, "avg", True)
    return MotifScore(max(0.0, float(np.dot(w.weights, s))), "avg", True)


def score_min(q: MotifQuery, scores: LinkScoreVector) -> MotifScore:
    """All importance on the smallest transformed score, rectified at 0.

    Without deal-breakers this is the minimum over non-existing motif-edge
    scores; a fully existing motif scores 1.
    """
    _check_alignment(q, scores)
    s = _transformed(scores)
    if s is None:
        return MotifScore(0.0, "min", True)
    if s.size == 0:
        return MotifScore(1.0, "min")
    return MotifScore(max(0.0, float(s.min())), "min", bool(scores.is_db.any()))


def aggregate(name: str, q: MotifQuery, scores: LinkScoreVector, w: WeightVector | None = None) -> float:
    """Dispatch by aggregator name; `avg` uses the deal-breaker-aware form."""
    if name == "mul":
        return score_mul(q, scores).value
    if name == "min":
        return score_min(q, scores).value
    if name == "avg":
        if w is None:
            w = make_weights("uniform_nonexisting", q)
        return score_avg_db(q, scores, w).value
    raise ValueError(f"unknown aggregator {name!r}; expected one of mul, avg, min")


AGGREGATORS = ("mul", "avg", "min")
