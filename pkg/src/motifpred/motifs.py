"""Motif queries: vertex roles, the full edge taxonomy, and templates.

A query partitions all vertex pairs inside its inner set into five disjoint
classes: motif edges (existing / non-existing), deal-breaker edges
(existing / non-existing), and inert pairs that do not matter. Roles are
positional: the order of the inner list carries meaning (a star's hub is
index 0).

Star convention: ``k`` counts total vertices, hub plus k-1 arms, so a
7-db-star has 6 motif pairs and C(6,2)=15 deal-breaker pairs. (The
alternative "k = arm count" reading exists in the wild; this library uses
the vertex-count convention throughout.)
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import ceil, comb

from .graph import Graph

__all__ = [
    "MotifTemplate",
    "MotifQuery",
    "template",
    "build_query",
    "instantiate",
    "count_possible_motifs",
    "is_instance",
    "canonical_form",
    "TEMPLATE_KINDS",
]

TEMPLATE_KINDS = ("clique", "star", "db_star", "dense")


@dataclass(frozen=True)
class MotifTemplate:
    """Abstract motif over role indices 0..k-1.

    ``motif_pairs`` and ``dealbreaker_pairs`` are role-index pairs. For the
    dense kind the density threshold replaces fixed structure: any
    ``ceil(density * C(k,2))`` present pairs satisfy the motif, and all
    pairs are treated as motif pairs by scoring and masking.
    """

    kind: str
    k: int
    motif_pairs: tuple[tuple[int, int], ...]
    dealbreaker_pairs: tuple[tuple[int, int], ...] = ()
    density: float | None = None

    @property
    def tag(self) -> str:
        if self.kind == "dense":
            return f"k_dense({self.density:g})"
        return {"clique": "k_clique", "star": "k_star", "db_star": "k_db_star"}.get(self.kind, self.kind)

    def required_edges(self) -> int:
        """Present-pair count a dense instance needs; len(motif_pairs) otherwise."""
        if self.kind == "dense":
            return ceil(self.density * comb(self.k, 2))
        return len(self.motif_pairs)


@dataclass(frozen=True)
class MotifQuery:
    """A motif query bound to concrete graph vertices.

    The five pair tuples partition all C(k,2) pairs of ``inner``; each pair
    is stored as (u, v) graph vertices in a canonical role-pair order, so
    score vectors align deterministically.
    """

    inner: tuple[int, ...]
    motif_existing: tuple[tuple[int, int], ...]
    motif_nonexisting: tuple[tuple[int, int], ...]
    dealbreaker_existing: tuple[tuple[int, int], ...]
    dealbreaker_nonexisting: tuple[tuple[int, int], ...]
    inert: tuple[tuple[int, int], ...]
    template_tag: str = "custom"
    density: float | None = None

    @property
    def k(self) -> int:
        return len(self.inner)

    @property
    def motif_edges(self) -> tuple[tuple[int, int], ...]:
        """E_M in canonical order: existing then non-existing."""
        return self.motif_existing + self.motif_nonexisting

    @property
    def edges_that_matter(self) -> tuple[tuple[int, int], ...]:
        """E*_M: motif edges followed by deal-breaker edges."""
        return (
            self.motif_existing
            + self.motif_nonexisting
            + self.dealbreaker_existing
            + self.dealbreaker_nonexisting
        )


def template(kind: str, k: int, density: float | None = None) -> MotifTemplate:
    """Build one of the evaluated motif templates over role indices.

    clique: all C(k,2) pairs are motif pairs (k >= 2).
    star: hub is role 0; the k-1 hub-arm pairs are motif pairs and arm-arm
        pairs are inert (k >= 3).
    db_star: as star, but arm-arm pairs are deal-breakers.
    dense: density threshold in (0, 1]; all pairs are motif pairs and
        instances are judged by present-pair count.
    """
    if kind not in TEMPLATE_KINDS:
        raise ValueError(f"unknown motif kind {kind!r}; expected one of {TEMPLATE_KINDS}")
    if kind == "clique":
        if k < 2:
            raise ValueError("clique needs k >= 2")
        return MotifTemplate(kind, k, tuple(combinations(range(k), 2)))
    if kind in ("star", "db_star"):
        if k < 3:
            raise ValueError("star needs k >= 3 (hub plus at least two arms)")
        hub_arm = tuple((0, i) for i in range(1, k))
        arm_arm = tuple(combinations(range(1, k), 2))
        if kind == "star":
            return MotifTemplate(kind, k, hub_arm)
        return MotifTemplate(kind, k, hub_arm, arm_arm)
    # dense
    if k < 2:
        raise ValueError("dense needs k >= 2")
    if density is None or not 0.0 < density <= 1.0:
        raise ValueError("dense needs a density threshold in (0, 1]")
    return MotifTemplate(kind, k, tuple(combinations(range(k), 2)), density=density)


def build_query(
    g: Graph,
    inner: tuple[int, ...] | list[int],
    motif_pairs,
    dealbreaker_pairs=(),
    template_tag: str = "custom",
    density: float | None = None,
) -> MotifQuery:
    """Classify the given vertex pairs against ``g`` and build a query.

    ``motif_pairs`` and ``dealbreaker_pairs`` are pairs of inner vertices
    (graph ids). They must be disjoint and lie within inner x inner; pairs
    in neither set become inert.
    """
    inner = tuple(int(v) for v in inner)
    if len(set(inner)) != len(inner):
        raise ValueError("inner vertices must be distinct")
    for v in inner:
        g._check_vertex(v)
    inner_set = set(inner)

    def _canon(pairs):
        out = []
        for u, v in pairs:
            u, v = int(u), int(v)
            if u == v or u not in inner_set or v not in inner_set:
                raise ValueError(f"pair ({u}, {v}) outside the inner vertex set")
            out.append((min(u, v), max(u, v)))
        if len(set(out)) != len(out):
            raise ValueError("duplicate pairs in pair set")
        return out

    motif = _canon(motif_pairs)
    db = _canon(dealbreaker_pairs)
    if set(motif) & set(db):
        raise ValueError("motif and deal-breaker pair sets overlap")

    all_pairs = {(min(u, v), max(u, v)) for u, v in combinations(inner, 2)}
    inert = tuple(sorted(all_pairs - set(motif) - set(db)))

    def _split(pairs):
        ex, nx = [], []
        for u, v in pairs:
            (ex if g.has_edge(u, v) else nx).append((u, v))
        return tuple(ex), tuple(nx)

    m_ex, m_nx = _split(motif)
    d_ex, d_nx = _split(db)
    return MotifQuery(inner, m_ex, m_nx, d_ex, d_nx, inert, template_tag, density)


def instantiate(g: Graph, tpl: MotifTemplate, inner) -> MotifQuery:
    """Bind a role-indexed template to concrete vertices."""
    inner = tuple(int(v) for v in inner)
    if len(inner) != tpl.k:
        raise ValueError(f"template expects {tpl.k} vertices, got {len(inner)}")
    mp = [(inner[i], inner[j]) for i, j in tpl.motif_pairs]
    dp = [(inner[i], inner[j]) for i, j in tpl.dealbreaker_pairs]
    return build_query(g, inner, mp, dp, template_tag=tpl.tag, density=tpl.density)


def count_possible_motifs(k: int) -> int:
    """Number of distinct motifs that can connect k edgeless vertices.

    Every non-empty subset of the C(k,2) possible pairs is one motif, so
    the count is 2**C(k,2) - 1.
    """
    if k < 2:
        raise ValueError("need k >= 2")
    p = comb(k, 2)
    if p > 62:
        raise ValueError(f"C(k,2)={p} exceeds 62; big-integer motif counts are out of scope")
    return 2**p - 1


def is_instance(g: Graph, q: MotifQuery) -> bool:
    """True iff the motif is fully present and no deal-breaker edge exists.

    Dense queries instead require at least ceil(density * C(k,2)) present
    pairs among the inner vertices.
    """
    if q.density is not None:
        need = ceil(q.density * comb(q.k, 2))
        return len(q.motif_existing) >= need and not q.dealbreaker_existing
    return not q.motif_nonexisting and not q.dealbreaker_existing


def canonical_form(tpl: MotifTemplate, inner) -> tuple[int, ...]:
    """Role-respecting canonical key for deduplicating samples.

    Cliques and dense sets are orderless; stars fix the hub and sort arms.
    """
    inner = tuple(int(v) for v in inner)
    if tpl.kind in ("star", "db_star"):
        return (inner[0],) + tuple(sorted(inner[1:]))
    return tuple(sorted(inner))
