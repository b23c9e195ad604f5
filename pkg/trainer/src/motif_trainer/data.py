"""Loading the exported JSONL motif datasets.

The contract (documented in the exporter's README): one JSON object per
line with fields id, label, k, motif, inner, num_nodes, edges, features,
meta. Edges are undirected and stored once with u < v; we symmetrize and
add self-loops when building the propagation matrix.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import torch

__all__ = ["Record", "load_split", "load_dataset", "collate", "Batch"]


@dataclass
class Record:
    id: int
    label: int
    k: int
    num_nodes: int
    edges: np.ndarray  # (e, 2), u < v
    features: np.ndarray  # (num_nodes, feature_dim) float32


def _parse_record(obj: dict, where: str) -> Record:
    try:
        label = int(obj["label"])
        k = int(obj["k"])
        n = int(obj["num_nodes"])
        edges = np.asarray(obj["edges"], dtype=np.int32).reshape(-1, 2)
        feats = np.asarray(obj["features"], dtype=np.float32)
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"{where}: malformed record: {exc}") from None
    if label not in (0, 1):
        raise ValueError(f"{where}: label must be 0 or 1")
    if feats.shape[0] != n:
        raise ValueError(f"{where}: {feats.shape[0]} feature rows for {n} nodes")
    if edges.size and (edges.min() < 0 or edges.max() >= n):
        raise ValueError(f"{where}: edge endpoint out of range")
    return Record(int(obj["id"]), label, k, n, edges, feats)


def load_split(path: str | Path) -> list[Record]:
    records = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if line.strip():
                records.append(_parse_record(json.loads(line), f"{path}:{lineno}"))
    return records


def load_dataset(prefix: str | Path) -> tuple[list[Record], list[Record]]:
    """Read ``<prefix>.train.jsonl`` and ``<prefix>.val.jsonl``."""
    train = load_split(f"{prefix}.train.jsonl")
    val = load_split(f"{prefix}.val.jsonl")
    if not train or not val:
        raise ValueError(f"dataset {prefix} has an empty split")
    dims = {r.features.shape[1] for r in train + val}
    if len(dims) != 1:
        raise ValueError(f"inconsistent feature dimensions across records: {sorted(dims)}")
    return train, val


@dataclass
class Batch:
    """Block-diagonal propagation matrix over the batch's node union."""

    a_hat: torch.Tensor  # sparse (N, N): D^-1 (A + I)
    x: torch.Tensor  # (N, feature_dim)
    sizes: list[int]
    labels: torch.Tensor  # (B,)


def collate(records: list[Record]) -> Batch:
    sizes = np.array([r.num_nodes for r in records], dtype=np.int64)
    offsets = np.concatenate([[0], np.cumsum(sizes)])
    total = int(offsets[-1])
    edges = np.concatenate(
        [r.edges.astype(np.int64) + off for r, off in zip(records, offsets)]
    ) if any(len(r.edges) for r in records) else np.zeros((0, 2), dtype=np.int64)
    u, v = edges[:, 0], edges[:, 1]
    loops = np.arange(total, dtype=np.int64)
    rows = np.concatenate([u, v, loops])
    cols = np.concatenate([v, u, loops])
    deg = np.bincount(rows, minlength=total).astype(np.float32)  # includes self-loop
    vals = (1.0 / deg)[rows]
    order = np.lexsort((cols, rows))  # row-major order = coalesced layout
    indices = torch.from_numpy(np.stack([rows[order], cols[order]]))
    values = torch.from_numpy(vals[order])
    # indices are sorted, unique, and in range by construction
    a_hat = torch.sparse_coo_tensor(
        indices, values, (total, total), check_invariants=False, is_coalesced=True
    )
    x = torch.from_numpy(np.concatenate([r.features for r in records], axis=0))
    labels = torch.tensor([r.label for r in records], dtype=torch.long)
    return Batch(a_hat, x, [int(s) for s in sizes], labels)
