"""Training loop, per-epoch metrics, and prediction/export helpers."""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
import torch

from .data import Batch, Record, collate, load_dataset
from .model import SortPoolClassifier

__all__ = ["TrainerConfig", "EpochMetrics", "auc", "accuracy", "build_model", "train", "predict",
           "write_metrics_csv", "write_scores_csv"]


@dataclass(frozen=True)
class TrainerConfig:
    dataset: str
    epochs: int = 100
    lr: float = 0.002
    batch_size: int = 50
    sortpool_k: int | None = None  # default: 60th percentile of train sizes
    sortpool_percentile: float = 0.6
    seed: int = 0

    def __post_init__(self):
        if self.epochs < 1:
            raise ValueError("epochs must be >= 1")
        if self.lr <= 0:
            raise ValueError("learning rate must be > 0")


@dataclass
class EpochMetrics:
    epoch: int
    train_loss: float
    val_auc: float
    val_accuracy: float

    def __post_init__(self):
        if not (0.0 <= self.val_auc <= 1.0 and 0.0 <= self.val_accuracy <= 1.0):
            raise ValueError("metrics outside [0, 1]")


def auc(scores, labels) -> float:
    """Rank-based AUC with average ranks for ties (ties count one half)."""
    scores = np.asarray(scores, dtype=np.float64)
    labels = np.asarray(labels).astype(bool)
    n_pos = int(labels.sum())
    n_neg = labels.size - n_pos
    if n_pos == 0 or n_neg == 0:
        raise ValueError("AUC needs both classes")
    order = np.argsort(scores, kind="mergesort")
    ranks = np.empty(labels.size, dtype=np.float64)
    sorted_scores = scores[order]
    i = 0
    while i < labels.size:
        j = i
        while j + 1 < labels.size and sorted_scores[j + 1] == sorted_scores[i]:
            j += 1
        ranks[order[i : j + 1]] = 0.5 * (i + j) + 1.0
        i = j + 1
    return (float(ranks[labels].sum()) - n_pos * (n_pos + 1) / 2.0) / (n_pos * n_neg)


def accuracy(scores, labels, threshold: float = 0.5) -> float:
    scores = np.asarray(scores, dtype=np.float64)
    labels = np.asarray(labels).astype(bool)
    return float(np.mean((scores >= threshold) == labels))


def pick_sortpool_k(train: list[Record], percentile: float = 0.6) -> int:
    sizes = sorted(r.num_nodes for r in train)
    k = sizes[min(len(sizes) - 1, int(np.ceil(percentile * len(sizes))) - 1)]
    return max(10, int(k))


def build_model(feature_dim: int, cfg: TrainerConfig, train: list[Record]) -> SortPoolClassifier:
    k = cfg.sortpool_k if cfg.sortpool_k is not None else pick_sortpool_k(train, cfg.sortpool_percentile)
    return SortPoolClassifier(feature_dim, k)


def _batches(records: list[Record], batch_size: int, rng: np.random.Generator | None):
    order = np.arange(len(records)) if rng is None else rng.permutation(len(records))
    for start in range(0, len(records), batch_size):
        yield collate([records[i] for i in order[start : start + batch_size]])


def _evaluate(model: SortPoolClassifier, batches: list) -> np.ndarray:
    scores = [model.probabilities(batch).numpy() for batch in batches]
    return np.concatenate(scores)


def train(cfg: TrainerConfig, progress: bool = False):
    """Train on the dataset at cfg.dataset.

    Returns (model with the best-validation-AUC weights, metrics list,
    final-epoch validation scores). Determinism holds to the extent the
    torch CPU backend allows; all explicit randomness is seeded.
    """
    torch.manual_seed(cfg.seed)
    train_recs, val_recs = load_dataset(cfg.dataset)
    if len({r.label for r in train_recs}) < 2 or len({r.label for r in val_recs}) < 2:
        raise ValueError("both classes must be present in train and validation")
    feature_dim = train_recs[0].features.shape[1]
    model = build_model(feature_dim, cfg, train_recs)
    optimizer = torch.optim.Adam(model.parameters(), lr=cfg.lr)
    loss_fn = torch.nn.CrossEntropyLoss()
    val_labels = np.array([r.label for r in val_recs], dtype=bool)
    val_batches = list(_batches(val_recs, cfg.batch_size, rng=None))
    rng = np.random.default_rng(cfg.seed)

    metrics: list[EpochMetrics] = []
    best_state = None
    best_auc = -1.0
    val_scores = None
    for epoch in range(1, cfg.epochs + 1):
        model.train()
        total_loss, n_seen = 0.0, 0
        for batch in _batches(train_recs, cfg.batch_size, rng):
            optimizer.zero_grad()
            logits = model(batch)
            loss = loss_fn(logits, batch.labels)
            loss.backward()
            optimizer.step()
            total_loss += loss.item() * len(batch.sizes)
            n_seen += len(batch.sizes)
        val_scores = _evaluate(model, val_batches)
        em = EpochMetrics(epoch, total_loss / n_seen, auc(val_scores, val_labels),
                          accuracy(val_scores, val_labels))
        metrics.append(em)
        if em.val_auc > best_auc:
            best_auc = em.val_auc
            best_state = {k: v.detach().clone() for k, v in model.state_dict().items()}
        if progress:
            print(f"epoch {epoch:3d}  loss {em.train_loss:.4f}  val_auc {em.val_auc:.4f}  "
                  f"val_acc {em.val_accuracy:.4f}")
    model.load_state_dict(best_state)
    return model, metrics, val_scores


def predict(model: SortPoolClassifier, records: list[Record], batch_size: int = 50) -> np.ndarray:
    """Positive-class probability per record, in input order."""
    return _evaluate(model, list(_batches(records, batch_size, rng=None)))


def write_metrics_csv(metrics: list[EpochMetrics], sortpool_k: int, path: str | Path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["epoch", "train_loss", "val_auc", "val_accuracy", "sortpool_k"])
        for m in metrics:
            writer.writerow([m.epoch, f"{m.train_loss:.6f}", f"{m.val_auc:.6f}",
                             f"{m.val_accuracy:.6f}", sortpool_k])


def write_scores_csv(records: list[Record], scores: np.ndarray, path: str | Path) -> None:
    """Scores CSV with the columns the benchmark's `auc` command consumes."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["id", "score", "label"])
        for rec, s in zip(records, scores):
            writer.writerow([rec.id, f"{float(s):.9f}", rec.label])
