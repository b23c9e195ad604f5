"""Immutable undirected graph with CSR adjacency and BFS primitives.

Vertices are dense integers ``0..n-1``. Edge-list files may use arbitrary
integer or string ids; the loader keeps an id map so exports can refer back
to the original labels. Neighbor lists are sorted ascending, which makes
``has_edge`` a binary search and every downstream iteration deterministic.
"""

from __future__ import annotations

import hashlib
from collections import deque
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "Graph",
    "GraphFormatError",
    "load_edge_list",
    "attach_features",
    "bfs_distances",
]


class GraphFormatError(ValueError):
    """Malformed edge-list or feature-file input."""


class Graph:
    """Simple undirected graph, immutable after construction.

    Construction deduplicates edges and drops self-loops (the count is kept
    in ``self_loops_dropped``). Instances are safe to share across threads
    and processes; all arrays are marked read-only.
    """

    __slots__ = ("n", "m", "indptr", "indices", "vertex_features", "id_map", "self_loops_dropped")

    def __init__(
        self,
        n: int,
        edges: Iterable[tuple[int, int]],
        vertex_features: np.ndarray | None = None,
        id_map: tuple | None = None,
        self_loops_dropped: int = 0,
    ):
        edge_arr = np.asarray(list(edges) if not isinstance(edges, np.ndarray) else edges, dtype=np.int64)
        if edge_arr.size == 0:
            edge_arr = edge_arr.reshape(0, 2)
        if edge_arr.ndim != 2 or edge_arr.shape[1] != 2:
            raise ValueError("edges must be (u, v) pairs")
        if edge_arr.size and (edge_arr.min() < 0 or edge_arr.max() >= n):
            raise ValueError("edge endpoint out of range")

        loops = edge_arr[:, 0] == edge_arr[:, 1]
        self_loops_dropped += int(loops.sum())
        edge_arr = edge_arr[~loops]
        lo = np.minimum(edge_arr[:, 0], edge_arr[:, 1])
        hi = np.maximum(edge_arr[:, 0], edge_arr[:, 1])
        und = np.unique(np.stack([lo, hi], axis=1), axis=0) if edge_arr.size else edge_arr

        self.n = int(n)
        self.m = int(und.shape[0])
        both = np.concatenate([und, und[:, ::-1]]) if und.size else und.reshape(0, 2)
        order = np.lexsort((both[:, 1], both[:, 0]))
        both = both[order]
        self.indptr = np.zeros(n + 1, dtype=np.int64)
        np.add.at(self.indptr, both[:, 0] + 1, 1)
        np.cumsum(self.indptr, out=self.indptr)
        self.indices = both[:, 1].copy()

        if vertex_features is None:
            vertex_features = np.zeros((n, 0), dtype=np.float64)
        vertex_features = np.asarray(vertex_features, dtype=np.float64)
        if vertex_features.shape[0] != n:
            raise ValueError("vertex_features must have one row per vertex")
        self.vertex_features = vertex_features
        self.id_map = tuple(id_map) if id_map is not None else tuple(range(n))
        if len(self.id_map) != n:
            raise ValueError("id_map must have one entry per vertex")
        self.self_loops_dropped = self_loops_dropped

        for arr in (self.indptr, self.indices, self.vertex_features):
            arr.setflags(write=False)

    # -- queries ------------------------------------------------------------

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise ValueError(f"vertex {v} out of range [0, {self.n})")

    def neighbors(self, v: int) -> np.ndarray:
        """Sorted, duplicate-free neighbor array of ``v`` (read-only view)."""
        self._check_vertex(v)
        return self.indices[self.indptr[v] : self.indptr[v + 1]]

    def degree(self, v: int) -> int:
        self._check_vertex(v)
        return int(self.indptr[v + 1] - self.indptr[v])

    @property
    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def has_edge(self, u: int, v: int) -> bool:
        self._check_vertex(u)
        self._check_vertex(v)
        row = self.indices[self.indptr[u] : self.indptr[u + 1]]
        i = np.searchsorted(row, v)
        return bool(i < row.size and row[i] == v)

    def edges(self) -> np.ndarray:
        """All undirected edges once, as an (m, 2) array with u < v, sorted."""
        src = np.repeat(np.arange(self.n), self.degrees)
        keep = src < self.indices
        return np.stack([src[keep], self.indices[keep]], axis=1)

    # -- derived graphs -----------------------------------------------------

    def without_edges(self, pairs: Iterable[tuple[int, int]]) -> "Graph":
        """Copy of the graph with the listed undirected edges removed.

        Pairs not present are ignored.
        """
        drop = {(min(u, v), max(u, v)) for u, v in pairs}
        e = self.edges()
        keep = [i for i, (u, v) in enumerate(e) if (int(u), int(v)) not in drop]
        return Graph(self.n, e[keep], self.vertex_features, self.id_map)

    def induced_subgraph(self, order: Sequence[int]) -> "Graph":
        """Induced subgraph on ``order``; local vertex i is ``order[i]``."""
        order = list(order)
        if len(set(order)) != len(order):
            raise ValueError("induced_subgraph order contains duplicates")
        local = {g: i for i, g in enumerate(order)}
        edges = []
        for g_u in order:
            for g_v in self.neighbors(g_u):
                g_v = int(g_v)
                if g_v in local and g_u < g_v:
                    edges.append((local[g_u], local[g_v]))
        feats = self.vertex_features[order] if self.vertex_features.shape[1] else None
        ids = tuple(self.id_map[g] for g in order)
        return Graph(len(order), edges, feats, ids)

    def content_hash(self) -> str:
        """Stable hash of (n, edges, features); keys the embedding cache."""
        h = hashlib.sha256()
        h.update(str(self.n).encode())
        h.update(self.indptr.tobytes())
        h.update(self.indices.tobytes())
        h.update(self.vertex_features.tobytes())
        return h.hexdigest()

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def load_edge_list(text: str | Iterable[str], features_text: str | None = None) -> Graph:
    """Parse an edge list: one edge per line, two whitespace-separated ids.

    Lines starting with '#' or '%' are comments; blank lines are skipped.
    Duplicate edges collapse, self-loops are dropped (counted on the graph).
    Source ids may be arbitrary tokens; they are densified in order of first
    appearance and retained in ``Graph.id_map``.
    """
    if isinstance(text, str):
        lines = text.splitlines()
    else:
        lines = list(text)
    ids: dict[str, int] = {}
    edges: list[tuple[int, int]] = []
    seen_any = False
    for lineno, line in enumerate(lines, start=1):
        stripped = line.strip()
        if not stripped or stripped[0] in "#%":
            continue
        tokens = stripped.split()
        if len(tokens) != 2:
            raise GraphFormatError(f"line {lineno}: expected two vertex ids, got {len(tokens)} tokens")
        seen_any = True
        pair = []
        for tok in tokens:
            if tok not in ids:
                ids[tok] = len(ids)
            pair.append(ids[tok])
        edges.append((pair[0], pair[1]))
    if not seen_any:
        raise GraphFormatError("empty edge list")
    g = Graph(len(ids), edges, id_map=tuple(ids))
    if features_text is not None:
        g = attach_features(g, features_text)
    return g


def attach_features(g: Graph, text: str) -> Graph:
    """Attach a vertex feature matrix parsed from text.

    Format: one line per vertex, source id followed by d floats. Every
    vertex must appear exactly once and all rows must share one width.
    """
    by_id = {str(s): i for i, s in enumerate(g.id_map)}
    rows: dict[int, list[float]] = {}
    width = None
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped[0] in "#%":
            continue
        tokens = stripped.split()
        if tokens[0] not in by_id:
            raise GraphFormatError(f"line {lineno}: unknown vertex id {tokens[0]!r}")
        try:
            vals = [float(t) for t in tokens[1:]]
        except ValueError as exc:
            raise GraphFormatError(f"line {lineno}: non-numeric feature value") from exc
        if width is None:
            width = len(vals)
        elif len(vals) != width:
            raise GraphFormatError(f"line {lineno}: expected {width} features, got {len(vals)}")
        v = by_id[tokens[0]]
        if v in rows:
            raise GraphFormatError(f"line {lineno}: duplicate row for vertex {tokens[0]!r}")
        rows[v] = vals
    if len(rows) != g.n:
        missing = g.n - len(rows)
        raise GraphFormatError(f"feature file misses {missing} vertex rows")
    mat = np.array([rows[v] for v in range(g.n)], dtype=np.float64)
    return Graph(g.n, g.edges(), mat, g.id_map, g.self_loops_dropped)


def bfs_distances(g: Graph, sources: Iterable[int], h_max: int | None = None) -> dict[int, int]:
    """Min hop distance from any source, for every vertex within ``h_max``.

    Sources map to 0. Vertices farther than ``h_max`` (or unreachable) are
    absent from the result. ``h_max=None`` means no bound.
    """
    src = list(sources)
    if not src:
        raise ValueError("bfs_distances requires a non-empty source set")
    for s in src:
        g._check_vertex(s)
    dist = {s: 0 for s in src}
    queue = deque(dist)
    bound = np.inf if h_max is None else h_max
    while queue:
        u = queue.popleft()
        d = dist[u]
        if d >= bound:
            continue
        for v in g.neighbors(u):
            v = int(v)
            if v not in dist:
                dist[v] = d + 1
                queue.append(v)
    return dist
