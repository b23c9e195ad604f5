"""Trainer test utilities.

The trainer consumes the exporter's JSONL contract and CLI only; fixtures
here either hand-write records per the documented schema or shell out to
the `motifpred` CLI to produce real datasets.
"""

from __future__ import annotations

import json
import shutil
import subprocess
import sys
from itertools import combinations
from pathlib import Path

import numpy as np


def make_record(rec_id: int, label: int, n: int, edges, feature_dim: int, k: int = 3) -> dict:
    rng = np.random.default_rng(rec_id)
    return {
        "id": rec_id,
        "label": label,
        "k": k,
        "motif": "k_clique",
        "inner": list(range(k)),
        "num_nodes": n,
        "edges": [[int(u), int(v)] for u, v in edges],
        "features": [[float(f"{x:.9g}") for x in rng.random(feature_dim)] for _ in range(n)],
        "meta": {"h": 1, "seed": rec_id, "strategy_tag": "random", "graph_name": "fixture"},
    }


def write_dataset(prefix: Path, train: list[dict], val: list[dict]) -> None:
    for split, records in (("train", train), ("val", val)):
        with open(f"{prefix}.{split}.jsonl", "w") as fh:
            for rec in records:
                fh.write(json.dumps(rec) + "\n")


def planted_clique_edge_text(n: int, p: float, n_cliques: int, size: int, seed: int) -> str:
    """Sparse background plus disjoint planted cliques, as edge-list text."""
    rng = np.random.default_rng(seed)
    iu = np.triu_indices(n, k=1)
    mask = rng.random(iu[0].size) < p
    edges = {(int(u), int(v)) for u, v in zip(iu[0][mask], iu[1][mask])}
    chosen = rng.choice(n, size=n_cliques * size, replace=False)
    for c in range(n_cliques):
        members = sorted(int(x) for x in chosen[c * size : (c + 1) * size])
        edges.update(combinations(members, 2))
    return "\n".join(f"{u} {v}" for u, v in sorted(edges)) + "\n"


def motifpred_cli(*args: str) -> subprocess.CompletedProcess:
    """Invoke the exporter CLI (console script, falling back to -m)."""
    exe = shutil.which("motifpred")
    cmd = [exe] if exe else [sys.executable, "-m", "motifpred.cli"]
    return subprocess.run([*cmd, *args], capture_output=True, text=True)


def export_planted_dataset(
    tmp: Path,
    samples: int,
    split: float = 0.9,
    k: int = 3,
    seed: int = 0,
    graph_text: str | None = None,
) -> Path:
    """Planted-clique dataset via the exporter: random negatives, no
    embedding (structural labels only)."""
    graph_file = tmp / "planted.edges"
    if graph_text is None:
        graph_text = planted_clique_edge_text(500, 0.01, n_cliques=40, size=10, seed=1)
    graph_file.write_text(graph_text)
    out = tmp / f"planted_k{k}_s{seed}"
    proc = motifpred_cli(
        "export", "--graph", str(graph_file), "--motif", "clique", "--k", str(k),
        "--samples", str(samples), "--split", str(split), "--mix", "0,1,0",
        "--no-embedding", "--h", "1", "--seed", str(seed), "--out", str(out),
    )
    assert proc.returncode == 0, proc.stderr
    return out
