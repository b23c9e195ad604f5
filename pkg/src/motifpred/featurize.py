"""h-hop enclosing subgraphs, edge masking, and per-sample feature matrices.

The enclosing subgraph of a sample contains every vertex within h hops of
any inner vertex; inner vertices occupy local ids 0..k-1 in role order.
Positive samples have motif edges removed so their internal edge count is
drawn from the histogram observed in negatives (the removed edges are what
a downstream classifier must predict); negative samples have their existing
deal-breaker edges stripped. The feature matrix concatenates input
features, embedding rows, the inner one-hot block, and the outer distance
block: s rows by (d + f + 2k) columns with all blocks enabled.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .graph import Graph, bfs_distances
from .motifs import MotifQuery, MotifTemplate, instantiate
from .sampling import Sample, SampleSet, internal_motif_edge_count

__all__ = [
    "Subgraph",
    "LabeledSubgraph",
    "extract_h_hop",
    "mask_positive",
    "strip_dealbreakers",
    "label_inner",
    "label_outer",
    "assemble",
    "negative_edge_histogram",
    "featurize_set",
    "DEFAULT_SUBGRAPH_CAP",
]

DEFAULT_SUBGRAPH_CAP = 2000


@dataclass(frozen=True)
class Subgraph:
    """Induced local graph plus the local-to-global vertex id map."""

    graph: Graph
    global_ids: np.ndarray
    k: int

    def __post_init__(self):
        self.global_ids.setflags(write=False)

    @property
    def s(self) -> int:
        return self.graph.n


@dataclass(frozen=True)
class LabeledSubgraph:
    """Featurized sample: masked/stripped subgraph plus feature blocks.

    ``x_embed``, ``x_inner`` and ``x_outer`` are None when the embedding or
    labeling blocks are disabled. ``removed_edges`` holds the masked or
    stripped edges as global vertex pairs. ``masked`` is False for the rare
    positive that had no motif edge to remove.
    """

    subgraph: Subgraph
    sample: Sample
    x_input: np.ndarray
    x_embed: np.ndarray | None
    x_inner: np.ndarray | None
    x_outer: np.ndarray | None
    removed_edges: tuple[tuple[int, int], ...]
    masked: bool

    @property
    def label(self) -> bool:
        return self.sample.label

    @property
    def features(self) -> np.ndarray:
        blocks = [b for b in (self.x_input, self.x_embed, self.x_inner, self.x_outer) if b is not None]
        return np.hstack(blocks) if blocks else np.zeros((self.subgraph.s, 0))


def extract_h_hop(
    g: Graph,
    inner,
    h: int,
    cap: int = DEFAULT_SUBGRAPH_CAP,
    rng: np.random.Generator | None = None,
) -> Subgraph:
    """Induced subgraph on all vertices within h hops of the inner set.

    Inner vertices come first in role order; outer vertices follow sorted
    by (distance, global id). If the subgraph would exceed ``cap``
    vertices, the outermost retained ring is down-sampled uniformly (inner
    vertices and closer rings are always kept).
    """
    if h < 1:
        raise ValueError("h must be >= 1")
    inner = [int(v) for v in inner]
    dist = bfs_distances(g, inner, h)
    outer = sorted((d, v) for v, d in dist.items() if v not in set(inner))
    order = list(inner) + [v for _, v in outer]
    if len(order) > cap:
        if rng is None:
            rng = np.random.default_rng(0)
        keep = list(inner)
        by_ring: dict[int, list[int]] = {}
        for d, v in outer:
            by_ring.setdefault(d, []).append(v)
        for d in sorted(by_ring):
            ring = by_ring[d]
            if len(keep) + len(ring) <= cap:
                keep.extend(ring)
            else:
                room = cap - len(keep)
                if room > 0:
                    idx = rng.choice(len(ring), size=room, replace=False)
                    keep.extend(ring[i] for i in sorted(idx))
                break
        order = keep
    return Subgraph(g.induced_subgraph(order), np.array(order, dtype=np.int64), len(inner))


def negative_edge_histogram(g: Graph, tpl: MotifTemplate, negatives) -> np.ndarray:
    """Internal motif-pair edge counts over the negative samples."""
    return np.array([internal_motif_edge_count(g, tpl, s.inner) for s in negatives], dtype=np.int64)


def mask_positive(
    sub: Subgraph,
    q: MotifQuery,
    histogram: np.ndarray,
    rng: np.random.Generator,
):
    """Remove motif edges so the remaining count matches the negatives.

    Draws a target count from the histogram (falling back to removing one
    uniformly chosen motif edge when the histogram is empty) and always
    removes at least one edge. Only edges among the motif pairs are ever
    touched. Returns (subgraph, removed local pairs).
    """
    present = list(q.motif_existing)
    if not present:
        return sub, ()
    if histogram is None or len(histogram) == 0:
        n_remove = 1
    else:
        target = int(rng.choice(histogram))
        n_remove = max(1, len(present) - target)
        n_remove = min(n_remove, len(present))
    idx = rng.choice(len(present), size=n_remove, replace=False)
    removed = tuple(present[i] for i in sorted(idx))
    return Subgraph(sub.graph.without_edges(removed), sub.global_ids, sub.k), removed


def strip_dealbreakers(sub: Subgraph, q: MotifQuery):
    """Remove the existing deal-breaker edges from a negative's subgraph."""
    removed = q.dealbreaker_existing
    if not removed:
        return sub, ()
    return Subgraph(sub.graph.without_edges(removed), sub.global_ids, sub.k), removed


def label_inner(s: int, k: int) -> np.ndarray:
    """Inner one-hot block: identity on the top k rows, zeros below."""
    x = np.zeros((s, k), dtype=np.float64)
    x[:k, :k] = np.eye(k)
    return x


def label_outer(sub: Subgraph, h: int) -> np.ndarray:
    """Outer distance block: each outer vertex's distance to every inner one.

    Distances are computed on the local graph with every edge between inner
    vertices removed. Unreachable pairs get the sentinel 2h + 1. The top k
    rows are zero.
    """
    k = sub.k
    s = sub.s
    inner_pairs = [(i, j) for i, j in combinations(range(k), 2) if sub.graph.has_edge(i, j)]
    stripped = sub.graph.without_edges(inner_pairs) if inner_pairs else sub.graph
    sentinel = 2 * h + 1
    x = np.zeros((s, k), dtype=np.float64)
    for j in range(k):
        dist = bfs_distances(stripped, [j])
        for v in range(k, s):
            x[v, j] = dist.get(v, sentinel)
    return x


def assemble(
    g: Graph,
    tpl: MotifTemplate,
    sample: Sample,
    h: int,
    embedding: np.ndarray | None = None,
    histogram: np.ndarray | None = None,
    use_labels: bool = True,
    use_embedding: bool = True,
    cap: int = DEFAULT_SUBGRAPH_CAP,
) -> LabeledSubgraph:
    """Extract, mask/strip, label, and concatenate one sample's features.

    ``embedding`` is the full n x f matrix; rows are selected by global id.
    ``histogram`` is the negative internal-edge-count distribution used for
    positive masking.
    """
    rng = np.random.default_rng(sample.seed)
    sub = extract_h_hop(g, sample.inner, h, cap, rng)
    q_local = instantiate(sub.graph, tpl, range(tpl.k))
    if sample.label:
        sub, removed_local = mask_positive(sub, q_local, histogram, rng)
    else:
        sub, removed_local = strip_dealbreakers(sub, q_local)

    gid = sub.global_ids
    x_input = g.vertex_features[gid] if g.vertex_features.shape[1] else np.zeros((sub.s, 0))
    x_embed = None
    if use_embedding and embedding is not None:
        x_embed = np.asarray(embedding, dtype=np.float64)[gid]
    x_inner = label_inner(sub.s, tpl.k) if use_labels else None
    x_outer = label_outer(sub, h) if use_labels else None
    removed_global = tuple((int(gid[u]), int(gid[v])) for u, v in removed_local)
    return LabeledSubgraph(
        sub,
        sample,
        x_input,
        x_embed,
        x_inner,
        x_outer,
        removed_global,
        masked=bool(sample.label and removed_local),
    )


def featurize_set(
    g: Graph,
    tpl: MotifTemplate,
    sset: SampleSet,
    h: int,
    embedding: np.ndarray | None = None,
    use_labels: bool = True,
    use_embedding: bool = True,
    cap: int = DEFAULT_SUBGRAPH_CAP,
):
    """Featurize a whole sample set; returns (train, validation) lists.

    The masking histogram is computed over all negatives of the set.
    """
    hist = negative_edge_histogram(g, tpl, sset.negatives())
    kw = dict(
        embedding=embedding,
        histogram=hist,
        use_labels=use_labels,
        use_embedding=use_embedding,
        cap=cap,
    )
    train = [assemble(g, tpl, s, h, **kw) for s in sset.train]
    val = [assemble(g, tpl, s, h, **kw) for s in sset.validation]
    return train, val
