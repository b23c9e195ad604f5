"""Node embeddings from random-walk co-occurrence statistics.

Uniform random walks (DeepWalk-style parameters: 10 walks per node, length
80, window 10, 128 dimensions) feed a windowed co-occurrence matrix, which
is reweighted by positive pointwise mutual information and factorized with
a truncated symmetric eigendecomposition. The result is deterministic given
(graph, parameters, seed) and cached on disk. Externally trained embeddings
can be imported from a simple text format instead.
"""

from __future__ import annotations

import hashlib
import os
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg

from .graph import Graph, GraphFormatError

__all__ = [
    "EmbeddingMatrix",
    "generate_walks",
    "embed_from_walks",
    "build_embedding",
    "export_embedding",
    "import_embedding",
    "DEFAULTS",
]

# DeepWalk's published defaults.
DEFAULTS = {"walks_per_node": 10, "walk_length": 80, "window": 10, "dim": 128}


@dataclass(frozen=True)
class EmbeddingMatrix:
    """Dense n x f embedding with provenance tag."""

    values: np.ndarray
    provenance: str  # walk_factorization | imported

    def __post_init__(self):
        if not np.all(np.isfinite(self.values)):
            raise ValueError("embedding contains non-finite values")
        self.values.setflags(write=False)

    @property
    def rows(self) -> int:
        return self.values.shape[0]

    @property
    def dim(self) -> int:
        return self.values.shape[1]


def generate_walks(g: Graph, walks_per_node: int = 10, walk_length: int = 80, seed: int = 0):
    """Uniform random walks, ``walks_per_node`` starting at every vertex.

    Walks truncate at dead ends (an isolated vertex yields a length-1
    walk). Each (vertex, repetition) pair has its own seeded stream, so the
    corpus does not depend on generation order.
    """
    if walks_per_node < 1 or walk_length < 2:
        raise ValueError("need walks_per_node >= 1 and walk_length >= 2")
    corpus = []
    for v in range(g.n):
        for w in range(walks_per_node):
            rng = np.random.default_rng(np.random.SeedSequence((seed, v, w)))
            walk = [v]
            cur = v
            for _ in range(walk_length - 1):
                nbrs = g.neighbors(cur)
                if nbrs.size == 0:
                    break
                cur = int(nbrs[rng.integers(nbrs.size)])
                walk.append(cur)
            corpus.append(np.array(walk, dtype=np.int64))
    return corpus


def embed_from_walks(corpus, f: int, window: int = 10, seed: int = 0, n: int | None = None) -> EmbeddingMatrix:
    """Factorize the positive-PMI co-occurrence matrix of a walk corpus.

    Co-occurrence counts pairs of distinct positions at most ``window``
    apart within one walk. The top-f eigenpairs give the embedding rows as
    eigenvector * sqrt(eigenvalue), with negative eigenvalues clipped.
    """
    if not corpus:
        raise ValueError("empty walk corpus")
    if n is None:
        n = 1 + max(int(w.max()) for w in corpus if len(w))
    if f > n:
        raise ValueError(f"embedding dimension {f} exceeds vertex count {n}")

    pad = np.full(window, -1, dtype=np.int64)
    tok = np.concatenate([np.concatenate([np.asarray(w, dtype=np.int64), pad]) for w in corpus])
    counts = sp.csr_matrix((n, n), dtype=np.float64)
    for d in range(1, window + 1):
        u, v = tok[:-d], tok[d:]
        ok = (u >= 0) & (v >= 0)
        if not ok.any():
            continue
        counts = counts + sp.coo_matrix(
            (np.ones(int(ok.sum())), (u[ok], v[ok])), shape=(n, n)
        ).tocsr()
    counts = counts + counts.T
    counts.setdiag(0)
    counts.eliminate_zeros()

    total = counts.sum()
    if total == 0:
        return EmbeddingMatrix(np.zeros((n, f)), "walk_factorization")
    row = np.asarray(counts.sum(axis=1)).ravel()
    coo = counts.tocoo()
    pmi = np.log(coo.data * total / (row[coo.row] * row[coo.col]))
    keep = pmi > 0
    ppmi = sp.coo_matrix((pmi[keep], (coo.row[keep], coo.col[keep])), shape=(n, n)).tocsr()

    if n <= 2000 or f >= n - 1:
        dense = ppmi.toarray()
        vals, vecs = np.linalg.eigh(dense)
        top = np.argsort(vals)[::-1][:f]
        lam, u = vals[top], vecs[:, top]
    else:
        v0 = np.random.default_rng(seed).standard_normal(n)
        lam, u = scipy.sparse.linalg.eigsh(ppmi, k=f, which="LA", v0=v0)
        order = np.argsort(lam)[::-1]
        lam, u = lam[order], u[:, order]
    emb = u * np.sqrt(np.clip(lam, 0.0, None))
    return EmbeddingMatrix(np.ascontiguousarray(emb), "walk_factorization")


def _cache_dir() -> Path:
    env = os.environ.get("MOTIF_CACHE_DIR")
    if env:
        return Path(env)
    return Path.home() / ".cache" / "motifpred"


def build_embedding(
    g: Graph,
    dim: int = DEFAULTS["dim"],
    walks_per_node: int = DEFAULTS["walks_per_node"],
    walk_length: int = DEFAULTS["walk_length"],
    window: int = DEFAULTS["window"],
    seed: int = 0,
    cache: bool = True,
) -> EmbeddingMatrix:
    """Walk-based embedding for a graph, cached on disk.

    The cache key covers the graph content hash, all parameters, and the
    seed; set MOTIF_CACHE_DIR to relocate the cache.
    """
    key = hashlib.sha256(
        f"{g.content_hash()}|{dim}|{walks_per_node}|{walk_length}|{window}|{seed}".encode()
    ).hexdigest()
    path = _cache_dir() / f"emb_{key}.npy"
    if cache and path.exists():
        return EmbeddingMatrix(np.load(path), "walk_factorization")
    corpus = generate_walks(g, walks_per_node, walk_length, seed)
    emb = embed_from_walks(corpus, dim, window, seed, n=g.n)
    if cache:
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(".tmp.npy")
        np.save(tmp, emb.values)
        os.replace(tmp, path)
    return emb


def export_embedding(emb: EmbeddingMatrix, g: Graph) -> str:
    """Serialize: first line 'n f', then one line per vertex,
    source id followed by f floats."""
    lines = [f"{emb.rows} {emb.dim}"]
    for v in range(emb.rows):
        floats = " ".join(f"{x:.17g}" for x in emb.values[v])
        lines.append(f"{g.id_map[v]} {floats}".rstrip())
    return "\n".join(lines) + "\n"


def import_embedding(text: str, g: Graph) -> EmbeddingMatrix:
    """Parse an embedding file and reindex rows to internal vertex ids."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise GraphFormatError("empty embedding file")
    head = lines[0].split()
    if len(head) != 2:
        raise GraphFormatError("embedding header must be 'n f'")
    n, f = int(head[0]), int(head[1])
    if n != g.n:
        raise GraphFormatError(f"embedding has {n} rows, graph has {g.n} vertices")
    if len(lines) - 1 != n:
        raise GraphFormatError(f"expected {n} vertex rows, found {len(lines) - 1}")
    by_id = {str(s): i for i, s in enumerate(g.id_map)}
    values = np.zeros((n, f), dtype=np.float64)
    seen = set()
    for lineno, line in enumerate(lines[1:], start=2):
        tokens = line.split()
        if tokens[0] not in by_id:
            raise GraphFormatError(f"line {lineno}: unknown vertex id {tokens[0]!r}")
        if len(tokens) - 1 != f:
            raise GraphFormatError(f"line {lineno}: expected {f} floats, got {len(tokens) - 1}")
        v = by_id[tokens[0]]
        if v in seen:
            raise GraphFormatError(f"line {lineno}: duplicate vertex row {tokens[0]!r}")
        seen.add(v)
        values[v] = [float(t) for t in tokens[1:]]
    return EmbeddingMatrix(values, "imported")
