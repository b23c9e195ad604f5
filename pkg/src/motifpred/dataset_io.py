"""JSON Lines dataset serialization: the contract with the trainer.

Each exported sample becomes one JSON object with fixed field names:

    id          integer, sequential over train then validation
    label       0 or 1
    k           inner vertex count
    motif       template tag string
    inner       local ids of the inner vertices in role order (0..k-1)
    num_nodes   subgraph size s
    edges       undirected edges once, [u, v] with u < v, local ids
    features    s rows of (d + f + 2k) floats, 9 significant digits
    meta        {h, seed, strategy_tag, graph_name}

Two files are written per export: ``<path>.train.jsonl`` and
``<path>.val.jsonl``. Consumers symmetrize the edges.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass, asdict
from pathlib import Path

from .featurize import LabeledSubgraph

__all__ = ["DatasetRecord", "export_dataset", "import_dataset", "DatasetFormatError"]

_FIELDS = ("id", "label", "k", "motif", "inner", "num_nodes", "edges", "features", "meta")


class DatasetFormatError(ValueError):
    """A record violates the dataset schema."""


@dataclass
class DatasetRecord:
    id: int
    label: int
    k: int
    motif: str
    inner: list[int]
    num_nodes: int
    edges: list[list[int]]
    features: list[list[float]]
    meta: dict

    def validate(self) -> None:
        if self.label not in (0, 1):
            raise DatasetFormatError(f"record {self.id}: label must be 0 or 1")
        if self.inner != list(range(self.k)):
            raise DatasetFormatError(f"record {self.id}: inner ids must be 0..k-1 in order")
        if len(self.features) != self.num_nodes:
            raise DatasetFormatError(
                f"record {self.id}: {len(self.features)} feature rows for {self.num_nodes} nodes"
            )
        widths = {len(row) for row in self.features}
        if len(widths) > 1:
            raise DatasetFormatError(f"record {self.id}: ragged feature rows")
        seen = set()
        for e in self.edges:
            if len(e) != 2 or not 0 <= e[0] < e[1] < self.num_nodes:
                raise DatasetFormatError(f"record {self.id}: bad edge {e}")
            if tuple(e) in seen:
                raise DatasetFormatError(f"record {self.id}: duplicate edge {e}")
            seen.add(tuple(e))


def _round9(x: float) -> float:
    return float(f"{x:.9g}")


def record_from_labeled(
    ls: LabeledSubgraph, rec_id: int, motif_tag: str, graph_name: str, h: int
) -> DatasetRecord:
    feats = [[_round9(v) for v in row] for row in ls.features]
    rec = DatasetRecord(
        id=rec_id,
        label=int(ls.label),
        k=ls.subgraph.k,
        motif=motif_tag,
        inner=list(range(ls.subgraph.k)),
        num_nodes=ls.subgraph.s,
        edges=[[int(u), int(v)] for u, v in ls.subgraph.graph.edges()],
        features=feats,
        meta={
            "h": h,
            "seed": int(ls.sample.seed),
            "strategy_tag": ls.sample.strategy,
            "graph_name": graph_name,
        },
    )
    return rec


def export_dataset(
    train: list[LabeledSubgraph],
    val: list[LabeledSubgraph],
    path: str | Path,
    motif_tag: str,
    graph_name: str,
    h: int,
) -> tuple[int, int]:
    """Write ``<path>.train.jsonl`` and ``<path>.val.jsonl``.

    Every record is validated before anything is written; a violation
    aborts the export naming the offending record id.
    """
    path = Path(path)
    splits = {"train": train, "val": val}
    records: dict[str, list[DatasetRecord]] = {}
    rec_id = 0
    for name, items in splits.items():
        out = []
        for ls in items:
            rec = record_from_labeled(ls, rec_id, motif_tag, graph_name, h)
            rec.validate()
            out.append(rec)
            rec_id += 1
        records[name] = out
    path.parent.mkdir(parents=True, exist_ok=True)
    for name, recs in records.items():
        with open(f"{path}.{name}.jsonl", "w", encoding="utf-8") as fh:
            for rec in recs:
                fh.write(json.dumps(asdict(rec), separators=(",", ":")) + "\n")
    return len(records["train"]), len(records["val"])


def _parse_line(line: str, lineno: int, fname: str) -> DatasetRecord:
    try:
        obj = json.loads(line)
    except json.JSONDecodeError as exc:
        raise DatasetFormatError(f"{fname}:{lineno}: invalid JSON: {exc}") from None
    extra = set(obj) - set(_FIELDS)
    if extra:
        warnings.warn(f"{fname}:{lineno}: ignoring unknown fields {sorted(extra)}")
        obj = {k: v for k, v in obj.items() if k in _FIELDS}
    missing = set(_FIELDS) - set(obj)
    if missing:
        raise DatasetFormatError(f"{fname}:{lineno}: missing fields {sorted(missing)}")
    try:
        rec = DatasetRecord(**obj)
        rec.validate()
    except (TypeError, DatasetFormatError) as exc:
        raise DatasetFormatError(f"{fname}:{lineno}: {exc}") from None
    return rec


def import_dataset(path: str | Path) -> tuple[list[DatasetRecord], list[DatasetRecord]]:
    """Read back both split files, validating each line."""
    path = Path(path)
    out = []
    for name in ("train", "val"):
        fname = f"{path}.{name}.jsonl"
        records = []
        with open(fname, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, start=1):
                if line.strip():
                    records.append(_parse_line(line, lineno, fname))
        out.append(records)
    return out[0], out[1]
