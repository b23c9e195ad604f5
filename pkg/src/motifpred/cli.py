"""Command-line interface: score, export, bench, embed, auc.

Configuration precedence is flags > config file > defaults. The config
file is flat ``key=value`` text (keys are the long option names with
underscores); every command accepts ``--config``. All randomness flows
from ``--seed``.
"""

from __future__ import annotations

import argparse
import csv
import os
import sys
from pathlib import Path

import numpy as np

from .dataset_io import export_dataset
from .embedding import DEFAULTS as EMB_DEFAULTS
from .embedding import build_embedding, export_embedding, import_embedding
from .evaluate import BenchConfig, accuracy, auc, run_benchmark
from .featurize import DEFAULT_SUBGRAPH_CAP, featurize_set
from .graph import Graph, load_edge_list
from .link_scores import SCORERS, score_query_edges
from .motif_scores import AGGREGATORS, aggregate, make_weights
from .motifs import MotifQuery, MotifTemplate, build_query, instantiate, template
from .sampling import build_sample_set

__all__ = ["main"]

_MOTIF_NAMES = {"clique": "clique", "star": "star", "db-star": "db_star", "dense": "dense"}


class CliError(RuntimeError):
    pass


def _load_graph(path: str) -> Graph:
    p = Path(path)
    if not p.exists():
        raise CliError(f"graph file not found: {path}")
    g = load_edge_list(p.read_text(encoding="utf-8"))
    if g.self_loops_dropped:
        print(f"note: dropped {g.self_loops_dropped} self-loop(s)", file=sys.stderr)
    return g


def _template(args) -> MotifTemplate:
    kind = _MOTIF_NAMES.get(args.motif)
    if kind is None:
        raise CliError(f"unknown motif {args.motif!r}; expected one of {sorted(_MOTIF_NAMES)}")
    return template(kind, args.k, density=args.density if kind == "dense" else None)


def _csv_list(value: str, valid: tuple[str, ...], what: str) -> tuple[str, ...]:
    items = tuple(x.strip() for x in value.split(",") if x.strip())
    for item in items:
        if item not in valid:
            raise CliError(f"unknown {what} {item!r}; valid: {', '.join(valid)}")
    return items


def _source_ids_to_vertices(g: Graph, spec: str) -> list[int]:
    by_id = {str(s): i for i, s in enumerate(g.id_map)}
    out = []
    for tok in spec.split(","):
        tok = tok.strip()
        if tok not in by_id:
            raise CliError(f"vertex id {tok!r} not present in the graph")
        out.append(by_id[tok])
    return out


def _parse_query_file(g: Graph, path: str) -> MotifQuery:
    """Custom query text: 'inner <ids...>' then 'motif i j' / 'db i j' lines
    with role indices into the inner list."""
    inner: list[int] | None = None
    motif_pairs, db_pairs = [], []
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        tokens = stripped.split()
        if tokens[0] == "inner":
            inner = _source_ids_to_vertices(g, ",".join(tokens[1:]))
        elif tokens[0] in ("motif", "db"):
            if inner is None:
                raise CliError(f"{path}:{lineno}: 'inner' must come before pair lines")
            try:
                i, j = int(tokens[1]), int(tokens[2])
                pair = (inner[i], inner[j])
            except (ValueError, IndexError):
                raise CliError(f"{path}:{lineno}: expected two role indices") from None
            (motif_pairs if tokens[0] == "motif" else db_pairs).append(pair)
        else:
            raise CliError(f"{path}:{lineno}: unknown directive {tokens[0]!r}")
    if inner is None:
        raise CliError(f"{path}: missing 'inner' line")
    return build_query(g, inner, motif_pairs, db_pairs)


def _weight_mode(spec: str):
    if spec == "all":
        return "uniform_all", None
    if spec == "nonexisting":
        return "uniform_nonexisting", None
    if spec.startswith("file:"):
        vals = [float(t) for t in Path(spec[5:]).read_text().split()]
        return "custom", np.array(vals)
    raise CliError(f"unknown weight mode {spec!r}; expected all, nonexisting, or file:<path>")


# -- commands -----------------------------------------------------------------


def _cmd_score(args) -> int:
    g = _load_graph(args.graph)
    if args.query_file:
        q = _parse_query_file(g, args.query_file)
    else:
        if not args.inner:
            raise CliError("score needs --inner or --query-file")
        tpl = _template(args)
        q = instantiate(g, tpl, _source_ids_to_vertices(g, args.inner))
    scorers = _csv_list(args.scorers, tuple(SCORERS), "scorer")
    aggregators = _csv_list(args.aggregators, AGGREGATORS, "aggregator")
    mode, custom = _weight_mode(args.weights)
    for scorer in scorers:
        sv = score_query_edges(g, q, scorer)
        w = make_weights(mode, q, custom)
        for ag in aggregators:
            print(f"{scorer} {ag} {aggregate(ag, q, sv, w):.6f}")
    return 0


def _prepare_embedding(args, g: Graph, sset=None):
    if args.no_embedding:
        return None
    if args.embedding_file:
        return import_embedding(Path(args.embedding_file).read_text(encoding="utf-8"), g).values
    g_embed = g
    if getattr(args, "inject_candidates", False) and sset is not None:
        # Add every candidate edge that matters from the training samples.
        tpl = _template(args)
        extra = []
        for s in sset.train:
            q = instantiate(g, tpl, s.inner)
            extra.extend(q.motif_nonexisting + q.dealbreaker_nonexisting)
        g_embed = Graph(g.n, np.concatenate([g.edges(), np.array(extra, dtype=np.int64).reshape(-1, 2)]),
                        g.vertex_features, g.id_map)
    return build_embedding(
        g_embed,
        dim=args.embed_dim,
        walks_per_node=args.walks,
        walk_length=args.walk_length,
        window=args.window,
        seed=args.seed,
    ).values


def _cmd_export(args) -> int:
    g = _load_graph(args.graph)
    tpl = _template(args)
    mix = tuple(float(x) for x in args.mix.split(","))
    sset = build_sample_set(
        g, tpl, args.samples, mix, args.split, args.seed,
        allow_repeat_positives=args.repeat_positives,
    )
    emb = _prepare_embedding(args, g, sset)
    train, val = featurize_set(
        g,
        tpl,
        sset,
        args.h,
        embedding=emb,
        use_labels=not args.no_labels,
        use_embedding=not args.no_embedding,
        cap=args.cap,
    )
    graph_name = Path(args.graph).stem
    n_train, n_val = export_dataset(train, val, args.out, tpl.tag, graph_name, args.h)
    print(f"wrote {n_train} train and {n_val} val records to {args.out}.{{train,val}}.jsonl")
    capped = sum(1 for ls in train + val if ls.subgraph.s >= args.cap)
    print(f"subgraph cap {args.cap}: {capped} record(s) at the cap", file=sys.stderr)
    return 0


def _cmd_bench(args) -> int:
    g = _load_graph(args.graph)
    motif_names = [m.strip() for m in args.motifs.split(",") if m.strip()]
    ks = [int(x) for x in str(args.k).split(",")]
    motifs = []
    for name in motif_names:
        kind = _MOTIF_NAMES.get(name)
        if kind is None:
            raise CliError(f"unknown motif {name!r}; expected one of {sorted(_MOTIF_NAMES)}")
        for k in ks:
            motifs.append(template(kind, k, density=args.density if kind == "dense" else None))
    mode, _ = _weight_mode(args.weights)
    if mode == "custom":
        raise CliError("bench supports --weights all|nonexisting")
    cfg = BenchConfig(
        graph=g,
        graph_name=Path(args.graph).stem,
        motifs=tuple(motifs),
        scorers=_csv_list(args.scorers, tuple(SCORERS), "scorer"),
        aggregators=_csv_list(args.aggregators, AGGREGATORS, "aggregator"),
        n_per_class=args.samples,
        trials=args.trials,
        seed=args.seed,
        h=args.h,
        mix=tuple(float(x) for x in args.mix.split(",")),
        split=args.split,
        weight_mode=mode,
        score_on=args.score_on,
        subgraph_cap=args.cap,
        threads=args.threads,
    )
    report = run_benchmark(cfg)
    report.write_csv(args.out)
    for row in report.summary():
        print(
            f"{row['graph']} {row['motif']} k={row['k']} {row['scorer']}/{row['aggregator']}: "
            f"AUC {row['auc_mean']:.4f} +- {row['auc_std']:.4f} ({row['trials']} trials)"
        )
    for (motif, k), bal in sorted(report.balance.items()):
        print(
            f"note: {motif} k={k} masked-vs-negative edge counts: "
            f"pos {bal['positive_hist']} neg {bal['negative_hist']} "
            f"(chi2 {bal['chi2']:.2f}, p {bal['pvalue']:.3f})",
            file=sys.stderr,
        )
    unavailable = sorted({(r.motif, r.k) for r in report.rows if r.status == "unavailable"})
    for motif, k in unavailable:
        print(f"note: {motif} k={k} unavailable (insufficient samples)", file=sys.stderr)
    print(f"wrote {len(report.rows)} rows to {args.out}")
    return 0


def _cmd_embed(args) -> int:
    g = _load_graph(args.graph)
    emb = build_embedding(
        g,
        dim=args.embed_dim,
        walks_per_node=args.walks,
        walk_length=args.walk_length,
        window=args.window,
        seed=args.seed,
    )
    Path(args.out).write_text(export_embedding(emb, g), encoding="utf-8")
    print(f"wrote {emb.rows} x {emb.dim} embedding to {args.out}")
    return 0


def _cmd_auc(args) -> int:
    with open(args.scores, encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or not {"score", "label"} <= set(reader.fieldnames):
            raise CliError("scores CSV needs 'score' and 'label' columns")
        scores, labels = [], []
        for row in reader:
            scores.append(float(row["score"]))
            labels.append(int(row["label"]))
    print(f"auc {auc(scores, labels):.9f}")
    print(f"accuracy {accuracy(scores, labels, args.threshold):.9f}")
    return 0


# -- parser -------------------------------------------------------------------


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="flat key=value config file; flags still win")
    p.add_argument("--seed", type=int, default=0)


def _add_motif_opts(p: argparse.ArgumentParser) -> None:
    p.add_argument("--motif", default="clique", help="clique|star|db-star|dense")
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--density", type=float, default=0.9, help="dense motif threshold")


def _add_sampling_opts(p: argparse.ArgumentParser) -> None:
    p.add_argument("--samples", type=int, default=1000, help="samples per class")
    p.add_argument("--mix", default="0.8,0.1,0.1", help="perturb,random,grow fractions")
    p.add_argument("--split", type=float, default=0.9)
    p.add_argument("--h", type=int, default=1, help="enclosing subgraph hops (1..3)")
    p.add_argument("--cap", type=int, default=DEFAULT_SUBGRAPH_CAP, help="subgraph size cap")


def _add_embedding_opts(p: argparse.ArgumentParser) -> None:
    p.add_argument("--embed-dim", type=int, default=EMB_DEFAULTS["dim"])
    p.add_argument("--walks", type=int, default=EMB_DEFAULTS["walks_per_node"])
    p.add_argument("--walk-length", type=int, default=EMB_DEFAULTS["walk_length"])
    p.add_argument("--window", type=int, default=EMB_DEFAULTS["window"])


def build_parser() -> tuple[argparse.ArgumentParser, dict[str, argparse.ArgumentParser]]:
    parser = argparse.ArgumentParser(prog="motifpred", description=__doc__)
    subs = parser.add_subparsers(dest="command", required=True)
    registry: dict[str, argparse.ArgumentParser] = {}

    p = subs.add_parser("score", help="score explicit motif queries")
    p.add_argument("--graph", required=True)
    _add_motif_opts(p)
    p.add_argument("--inner", help="comma-separated source vertex ids (role order)")
    p.add_argument("--query-file", help="custom query: inner/motif/db lines")
    p.add_argument("--scorers", default="jaccard")
    p.add_argument("--aggregators", default="mul,avg,min")
    p.add_argument("--weights", default="nonexisting", help="all|nonexisting|file:<path>")
    _add_common(p)
    p.set_defaults(func=_cmd_score)
    registry["score"] = p

    p = subs.add_parser("export", help="sample, featurize, and write jsonl datasets")
    p.add_argument("--graph", required=True)
    _add_motif_opts(p)
    _add_sampling_opts(p)
    _add_embedding_opts(p)
    p.add_argument("--no-labels", action="store_true", help="drop the labeling blocks")
    p.add_argument("--no-embedding", action="store_true", help="drop the embedding block")
    p.add_argument("--repeat-positives", action="store_true",
                   help="pad with repeated instances when the graph has fewer than --samples")
    p.add_argument("--embedding-file", help="import an externally trained embedding")
    p.add_argument("--inject-candidates", action="store_true",
                   help="add candidate motif/deal-breaker edges before embedding")
    p.add_argument("--out", required=True, help="dataset path prefix")
    _add_common(p)
    p.set_defaults(func=_cmd_export)
    registry["export"] = p

    p = subs.add_parser("bench", help="heuristic AUC benchmark over motif cells")
    p.add_argument("--graph", required=True)
    p.add_argument("--motifs", default="clique", help="comma list: clique,star,db-star,dense")
    p.add_argument("--k", default="3", help="comma list of motif sizes")
    p.add_argument("--density", type=float, default=0.9)
    _add_sampling_opts(p)
    p.add_argument("--trials", type=int, default=5)
    p.add_argument("--scorers", default="jaccard,cn,aa")
    p.add_argument("--aggregators", default="mul,avg,min")
    p.add_argument("--weights", default="nonexisting")
    p.add_argument("--score-on", default="masked", choices=("masked", "full"))
    p.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    p.add_argument("--out", required=True, help="CSV report path")
    _add_common(p)
    p.set_defaults(func=_cmd_bench)
    registry["bench"] = p

    p = subs.add_parser("embed", help="compute and export a node embedding")
    p.add_argument("--graph", required=True)
    _add_embedding_opts(p)
    p.add_argument("--out", required=True)
    _add_common(p)
    p.set_defaults(func=_cmd_embed)
    registry["embed"] = p

    p = subs.add_parser("auc", help="AUC/accuracy of a scores CSV (score,label columns)")
    p.add_argument("--scores", required=True)
    p.add_argument("--threshold", type=float, default=0.5)
    _add_common(p)
    p.set_defaults(func=_cmd_auc)
    registry["auc"] = p

    return parser, registry


def _apply_config(sub: argparse.ArgumentParser, path: str) -> None:
    if not Path(path).exists():
        raise CliError(f"config file not found: {path}")
    actions = {a.dest: a for a in sub._actions}
    overrides = {}
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise CliError(f"{path}:{lineno}: expected key=value")
        key, value = (t.strip() for t in stripped.split("=", 1))
        dest = key.replace("-", "_")
        if dest not in actions:
            raise CliError(f"{path}:{lineno}: unknown option {key!r}")
        action = actions[dest]
        if isinstance(action, (argparse._StoreTrueAction, argparse._StoreFalseAction)):
            overrides[dest] = value.lower() in ("1", "true", "yes")
        elif action.type is not None:
            overrides[dest] = action.type(value)
        else:
            overrides[dest] = value
    sub.set_defaults(**overrides)


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser, registry = build_parser()
    cmd = next((a for a in argv if not a.startswith("-")), None)
    cfg_path = None
    for i, a in enumerate(argv):
        if a == "--config" and i + 1 < len(argv):
            cfg_path = argv[i + 1]
        elif a.startswith("--config="):
            cfg_path = a.split("=", 1)[1]
    try:
        if cfg_path and cmd in registry:
            _apply_config(registry[cmd], cfg_path)
        args = parser.parse_args(argv)
        return args.func(args)
    except (CliError, ValueError, RuntimeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
