"""Motif prediction: scoring heuristics, sampling pipeline, and benchmarks.

The library answers "how likely is this vertex set to form that motif?"
three ways: an independent product of link scores, a convex combination
that captures positive correlation between arriving links, and a
deal-breaker-aware rectified variant that zeroes impossible motifs. Around
the scores sit a full dataset pipeline (positive/negative sampling, h-hop
enclosing subgraphs, structural labels, random-walk embeddings, JSONL
export) and an AUC benchmark harness.
"""

from .graph import Graph, GraphFormatError, bfs_distances, load_edge_list
from .motifs import (
    MotifQuery,
    MotifTemplate,
    build_query,
    count_possible_motifs,
    instantiate,
    is_instance,
    template,
)
from .link_scores import (
    LinkScoreVector,
    SCORERS,
    adamic_adar,
    common_neighbors,
    jaccard,
    normalize,
    score_query_edges,
)
from .motif_scores import (
    AGGREGATORS,
    MotifScore,
    WeightVector,
    aggregate,
    make_weights,
    score_avg,
    score_avg_db,
    score_min,
    score_mul,
)
from .sampling import (
    Sample,
    SampleSet,
    SamplingError,
    build_sample_set,
    enumerate_positives,
    negative_grow,
    negative_perturb,
    negative_random,
    sample_dense,
)
from .featurize import (
    LabeledSubgraph,
    Subgraph,
    assemble,
    extract_h_hop,
    featurize_set,
    label_inner,
    label_outer,
    mask_positive,
    strip_dealbreakers,
)
from .embedding import (
    EmbeddingMatrix,
    build_embedding,
    embed_from_walks,
    export_embedding,
    generate_walks,
    import_embedding,
)
from .dataset_io import DatasetRecord, export_dataset, import_dataset
from .evaluate import BenchConfig, BenchmarkReport, accuracy, auc, run_benchmark

__version__ = "0.1.0"
