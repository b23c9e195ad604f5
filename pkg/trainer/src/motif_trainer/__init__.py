"""Graph classifier for exported motif datasets.

Consumes the JSONL contract produced by the motifpred exporter (one record
per enclosing subgraph with adjacency and feature matrix) and trains a
sort-pooling graph-convolutional classifier whose validation scores merge
directly with the heuristic benchmark's CSV tooling.
"""

from .data import Batch, Record, collate, load_dataset, load_split
from .model import SortPoolClassifier
from .train import (
    EpochMetrics,
    TrainerConfig,
    accuracy,
    auc,
    build_model,
    predict,
    train,
    write_metrics_csv,
    write_scores_csv,
)

__version__ = "0.1.0"
