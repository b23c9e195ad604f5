"""motif-trainer command line: train a classifier on an exported dataset."""

from __future__ import annotations

import argparse
import sys

import torch

from .data import load_dataset
from .model import SortPoolClassifier
from .train import TrainerConfig, predict, train, write_metrics_csv, write_scores_csv

__all__ = ["main"]


def _cmd_train(args) -> int:
    cfg = TrainerConfig(
        dataset=args.data,
        epochs=args.epochs,
        lr=args.lr,
        batch_size=args.batch_size,
        sortpool_k=args.sortpool_k,
        seed=args.seed,
    )
    model, metrics, val_scores = train(cfg, progress=not args.quiet)
    _, val_recs = load_dataset(args.data)
    if args.metrics_out:
        write_metrics_csv(metrics, model.sortpool_k, args.metrics_out)
    if args.scores_out:
        write_scores_csv(val_recs, val_scores, args.scores_out)
    if args.model_out:
        torch.save(
            {"state_dict": model.state_dict(), "feature_dim": model.feature_dim,
             "sortpool_k": model.sortpool_k},
            args.model_out,
        )
    best = max(m.val_auc for m in metrics)
    print(f"final val AUC {metrics[-1].val_auc:.4f} (best {best:.4f}, sortpool_k {model.sortpool_k})")
    return 0


def _cmd_predict(args) -> int:
    ckpt = torch.load(args.model, weights_only=True)
    model = SortPoolClassifier(ckpt["feature_dim"], ckpt["sortpool_k"])
    model.load_state_dict(ckpt["state_dict"])
    _, val_recs = load_dataset(args.data)
    scores = predict(model, val_recs, args.batch_size)
    write_scores_csv(val_recs, scores, args.scores_out)
    print(f"wrote {len(val_recs)} scores to {args.scores_out}")
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="motif-trainer", description=__doc__)
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("train", help="train and write metrics/scores CSVs")
    p.add_argument("--data", required=True, help="dataset prefix (expects .train.jsonl/.val.jsonl)")
    p.add_argument("--epochs", type=int, default=100)
    p.add_argument("--lr", type=float, default=0.002)
    p.add_argument("--batch-size", type=int, default=50)
    p.add_argument("--sortpool-k", type=int, default=None,
                   help="sort-pooling keep count (default: 60th percentile of train sizes)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--metrics-out", help="per-epoch metrics CSV")
    p.add_argument("--scores-out", help="validation scores CSV (id,score,label)")
    p.add_argument("--model-out", help="checkpoint path (best validation AUC)")
    p.add_argument("--quiet", action="store_true")
    p.set_defaults(func=_cmd_train)

    p = subs.add_parser("predict", help="score a dataset's validation split with a checkpoint")
    p.add_argument("--data", required=True)
    p.add_argument("--model", required=True)
    p.add_argument("--batch-size", type=int, default=50)
    p.add_argument("--scores-out", required=True)
    p.set_defaults(func=_cmd_predict)

    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
