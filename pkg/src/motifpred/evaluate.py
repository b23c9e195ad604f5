"""AUC/accuracy metrics and the heuristic benchmark runner.

AUC uses the rank (Mann-Whitney) formulation with ties counted one half:
the probability that a random positive outscores a random negative.
``run_benchmark`` sweeps (motif, trial) cells, builds a fresh sample set per
trial, featurizes the validation samples, and scores each one with every
(scorer, aggregator) combination. By default the heuristics score the
masked/stripped local subgraph, i.e. exactly what a trained classifier
would see; ``score_on='full'`` scores the full graph minus each sample's
removed edges instead.
"""

from __future__ import annotations

import csv
import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from scipy.stats import rankdata

from .featurize import DEFAULT_SUBGRAPH_CAP, assemble, negative_edge_histogram
from .graph import Graph
from .link_scores import score_query_edges
from .motif_scores import aggregate, make_weights
from .motifs import MotifTemplate, instantiate
from .sampling import SamplingError, build_sample_set

__all__ = [
    "auc",
    "accuracy",
    "BenchConfig",
    "BenchRow",
    "BenchmarkReport",
    "run_benchmark",
    "CSV_COLUMNS",
]

CSV_COLUMNS = (
    "graph",
    "motif",
    "k",
    "scorer",
    "aggregator",
    "trial",
    "auc",
    "accuracy",
    "n_train",
    "n_val",
    "h",
    "seed",
    "status",
)


def auc(scores, labels) -> float:
    """Area under the ROC curve; ties between classes count one half.

    Requires both classes to be present.
    """
    scores = np.asarray(scores, dtype=np.float64)
    labels = np.asarray(labels).astype(bool)
    if scores.shape != labels.shape:
        raise ValueError("scores and labels must have equal length")
    n_pos = int(labels.sum())
    n_neg = labels.size - n_pos
    if n_pos == 0 or n_neg == 0:
        raise ValueError("AUC needs at least one positive and one negative")
    ranks = rankdata(scores)
    return (float(ranks[labels].sum()) - n_pos * (n_pos + 1) / 2.0) / (n_pos * n_neg)


def accuracy(scores, labels, threshold: float = 0.5) -> float:
    """Fraction of correct predictions at the given threshold."""
    scores = np.asarray(scores, dtype=np.float64)
    labels = np.asarray(labels).astype(bool)
    if scores.shape != labels.shape:
        raise ValueError("scores and labels must have equal length")
    return float(np.mean((scores >= threshold) == labels))


@dataclass(frozen=True)
class BenchConfig:
    graph: Graph
    graph_name: str
    motifs: tuple[MotifTemplate, ...]
    scorers: tuple[str, ...] = ("jaccard", "cn", "aa")
    aggregators: tuple[str, ...] = ("mul", "avg", "min")
    n_per_class: int = 1000
    trials: int = 5
    seed: int = 0
    h: int = 1
    mix: tuple[float, float, float] = (0.8, 0.1, 0.1)
    split: float = 0.9
    weight_mode: str = "uniform_nonexisting"
    score_on: str = "masked"  # masked | full
    subgraph_cap: int = DEFAULT_SUBGRAPH_CAP
    threads: int = 1


@dataclass(frozen=True)
class BenchRow:
    graph: str
    motif: str
    k: int
    scorer: str
    aggregator: str
    trial: int
    auc: float | None
    accuracy: float | None
    n_train: int
    n_val: int
    h: int
    seed: int
    status: str = "ok"


@dataclass
class BenchmarkReport:
    rows: list[BenchRow] = field(default_factory=list)
    # per (motif tag, k): masked-positive vs negative edge-count comparison
    # from the first trial; informational only
    balance: dict = field(default_factory=dict)

    def sort(self) -> None:
        self.rows.sort(key=lambda r: (r.graph, r.motif, r.k, r.scorer, r.aggregator, r.trial))

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for r in self.rows:
            writer.writerow(
                [
                    r.graph,
                    r.motif,
                    r.k,
                    r.scorer,
                    r.aggregator,
                    r.trial,
                    "" if r.auc is None else f"{r.auc:.6f}",
                    "" if r.accuracy is None else f"{r.accuracy:.6f}",
                    r.n_train,
                    r.n_val,
                    r.h,
                    r.seed,
                    r.status,
                ]
            )
        return buf.getvalue()

    def write_csv(self, path: str | Path) -> None:
        Path(path).write_text(self.to_csv(), encoding="utf-8")

    def summary(self) -> list[dict]:
        """Mean/std of AUC and accuracy across trials per benchmark cell."""
        cells: dict[tuple, list[BenchRow]] = {}
        for r in self.rows:
            if r.status == "ok":
                cells.setdefault((r.graph, r.motif, r.k, r.scorer, r.aggregator), []).append(r)
        out = []
        for key in sorted(cells):
            rows = cells[key]
            aucs = np.array([r.auc for r in rows])
            accs = np.array([r.accuracy for r in rows])
            ddof = 1 if len(rows) > 1 else 0
            out.append(
                {
                    "graph": key[0],
                    "motif": key[1],
                    "k": key[2],
                    "scorer": key[3],
                    "aggregator": key[4],
                    "trials": len(rows),
                    "auc_mean": float(aucs.mean()),
                    "auc_std": float(aucs.std(ddof=ddof)),
                    "accuracy_mean": float(accs.mean()),
                    "accuracy_std": float(accs.std(ddof=ddof)),
                }
            )
        return out


def mask_balance(g: Graph, tpl: MotifTemplate, featurized) -> dict:
    """Compare internal motif-edge counts of masked positives vs negatives.

    Masking aims to make the two distributions indistinguishable; this is a
    sanity report (chi-square statistic over the pooled count histogram),
    never an assertion.
    """
    from scipy.stats import chi2_contingency

    pos, neg = [], []
    for ls in featurized:
        local = ls.subgraph.graph
        present = sum(
            1 for i, j in tpl.motif_pairs if local.has_edge(i, j)
        )
        (pos if ls.label else neg).append(present)
    top = len(tpl.motif_pairs)
    pos_hist = np.bincount(pos, minlength=top + 1)
    neg_hist = np.bincount(neg, minlength=top + 1)
    keep = (pos_hist + neg_hist) > 0
    table = np.stack([pos_hist[keep] + 0.5, neg_hist[keep] + 0.5])  # smoothed
    chi2, pvalue = chi2_contingency(table)[:2]
    return {
        "positive_hist": pos_hist.tolist(),
        "negative_hist": neg_hist.tolist(),
        "chi2": float(chi2),
        "pvalue": float(pvalue),
    }


def _score_validation(cfg: BenchConfig, tpl: MotifTemplate, trial: int):
    """One (motif, trial) cell: every scorer x aggregator on shared samples."""
    g = cfg.graph
    trial_seed = cfg.seed + trial

    def unavailable():
        return [
            BenchRow(cfg.graph_name, tpl.tag, tpl.k, sc, ag, trial, None, None, 0, 0, cfg.h, trial_seed, "unavailable")
            for sc in cfg.scorers
            for ag in cfg.aggregators
        ], None

    try:
        sset = build_sample_set(g, tpl, cfg.n_per_class, cfg.mix, cfg.split, trial_seed)
    except SamplingError:
        return unavailable()
    hist = negative_edge_histogram(g, tpl, sset.negatives())
    featurized = [
        assemble(g, tpl, s, cfg.h, histogram=hist, use_labels=False, use_embedding=False, cap=cfg.subgraph_cap)
        for s in sset.validation
    ]
    labels = np.array([ls.label for ls in featurized], dtype=bool)
    if labels.all() or not labels.any():
        return unavailable()
    report_balance = mask_balance(g, tpl, featurized) if trial == 0 else None

    rows = []
    for scorer in cfg.scorers:
        per_agg: dict[str, list[float]] = {ag: [] for ag in cfg.aggregators}
        for ls in featurized:
            if cfg.score_on == "masked":
                target = ls.subgraph.graph
                q = instantiate(target, tpl, range(tpl.k))
            else:
                target = g.without_edges(ls.removed_edges)
                q = instantiate(target, tpl, ls.sample.inner)
            sv = score_query_edges(target, q, scorer)
            w = make_weights(cfg.weight_mode, q)
            for ag in cfg.aggregators:
                per_agg[ag].append(aggregate(ag, q, sv, w))
        for ag in cfg.aggregators:
            vals = np.array(per_agg[ag])
            rows.append(
                BenchRow(
                    cfg.graph_name,
                    tpl.tag,
                    tpl.k,
                    scorer,
                    ag,
                    trial,
                    auc(vals, labels),
                    accuracy(vals, labels),
                    len(sset.train),
                    len(sset.validation),
                    cfg.h,
                    trial_seed,
                )
            )
    return rows, report_balance


def run_benchmark(cfg: BenchConfig) -> BenchmarkReport:
    """Run every (motif, trial) cell; rows come back deterministically sorted."""
    if cfg.score_on not in ("masked", "full"):
        raise ValueError("score_on must be 'masked' or 'full'")
    tasks = [(tpl, trial) for tpl in cfg.motifs for trial in range(cfg.trials)]
    report = BenchmarkReport()

    def absorb(tpl: MotifTemplate, result) -> None:
        rows, balance = result
        report.rows.extend(rows)
        if balance is not None:
            report.balance[(tpl.tag, tpl.k)] = balance

    if cfg.threads > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=cfg.threads) as pool:
            futures = [pool.submit(_score_validation, cfg, tpl, trial) for tpl, trial in tasks]
            for (tpl, _), fut in zip(tasks, futures):
                absorb(tpl, fut.result())
    else:
        for tpl, trial in tasks:
            absorb(tpl, _score_validation(cfg, tpl, trial))
    report.sort()
    return report
