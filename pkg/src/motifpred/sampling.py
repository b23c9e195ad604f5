"""Balanced positive/negative sample generation.

Positives are existing instances of the target motif. Negatives come from
three strategies: perturbing a positive (replace 1-2 vertices with nearby
ones so the motif breaks), uniform random vertex sets, and neighborhood
growth from a random seed vertex; the default mix is 80/10/10. Dense
motifs use a dedicated grower that approaches the density threshold from
either side. Every sample carries its own derived RNG seed so generation
is reproducible and order-independent.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import ceil, comb

import numpy as np

from .graph import Graph, bfs_distances
from .motifs import MotifTemplate, canonical_form, instantiate, is_instance

__all__ = [
    "Sample",
    "SampleSet",
    "SamplingError",
    "enumerate_positives",
    "negative_perturb",
    "negative_random",
    "negative_grow",
    "sample_dense",
    "build_sample_set",
    "internal_motif_edge_count",
    "substream",
]

_PERTURB_RETRIES = 50
_REJECT_RETRIES = 100


class SamplingError(RuntimeError):
    """Sample generation could not satisfy the request."""


@dataclass(frozen=True)
class Sample:
    """One vertex set with its label, producing strategy, and RNG seed."""

    inner: tuple[int, ...]
    label: bool
    strategy: str  # positive | perturb | random | grow | dense
    seed: int


@dataclass(frozen=True)
class SampleSet:
    train: tuple[Sample, ...]
    validation: tuple[Sample, ...]
    mix: tuple[float, float, float]
    split_ratio: float

    @property
    def samples(self) -> tuple[Sample, ...]:
        return self.train + self.validation

    def negatives(self) -> list[Sample]:
        return [s for s in self.samples if not s.label]


def substream(master: int, *key: int) -> int:
    """Derived seed for an independent RNG stream."""
    return int(np.random.SeedSequence((master,) + key).generate_state(1)[0])


def internal_motif_edge_count(g: Graph, tpl: MotifTemplate, inner) -> int:
    """How many of the template's motif pairs are present edges."""
    inner = tuple(inner)
    return sum(1 for i, j in tpl.motif_pairs if g.has_edge(inner[i], inner[j]))


# -- positives ---------------------------------------------------------------


def _iter_cliques(g: Graph, k: int):
    """All k-cliques in ascending vertex order."""
    if k == 1:
        yield from ((v,) for v in range(g.n))
        return

    def extend(clique, cands):
        if len(clique) == k - 1:
            for v in cands:
                yield clique + (int(v),)
            return
        for i, v in enumerate(cands):
            nxt = np.intersect1d(cands[i + 1 :], g.neighbors(int(v)), assume_unique=True)
            if nxt.size >= k - len(clique) - 1:
                yield from extend(clique + (int(v),), nxt)

    for u in range(g.n):
        nbrs = g.neighbors(u)
        yield from extend((u,), nbrs[nbrs > u])


def _reservoir(iterator, limit: int, rng: np.random.Generator):
    """Uniform sample of up to ``limit`` items from a stream."""
    res: list = []
    total = 0
    for item in iterator:
        if total < limit:
            res.append(item)
        else:
            j = int(rng.integers(0, total + 1))
            if j < limit:
                res[j] = item
        total += 1
    return res, total


def _iter_stars(g: Graph, k: int):
    for hub in range(g.n):
        for arms in combinations(map(int, g.neighbors(hub)), k - 1):
            yield (hub,) + arms


def _sample_star(g: Graph, k: int, rng: np.random.Generator):
    """One uniformly random star instance (hub weighted by arm combinations)."""
    weights = np.array([comb(int(d), k - 1) for d in g.degrees], dtype=np.float64)
    total = weights.sum()
    if total == 0:
        return None
    p = weights / total
    hub = int(rng.choice(g.n, p=p))
    arms = rng.choice(g.neighbors(hub), size=k - 1, replace=False)
    return (hub,) + tuple(sorted(int(a) for a in arms))


def _no_arm_edges(g: Graph, inner) -> bool:
    return not any(g.has_edge(u, v) for u, v in combinations(inner[1:], 2))


def enumerate_positives(g: Graph, tpl: MotifTemplate, limit: int, seed: int) -> list[Sample]:
    """Up to ``limit`` distinct existing instances, uniformly subsampled.

    Returns fewer than ``limit`` samples (possibly none) when the graph
    does not contain enough instances; callers decide whether that is an
    error.
    """
    if limit < 1:
        raise ValueError("limit must be >= 1")
    rng = np.random.default_rng(substream(seed, 0))
    k = tpl.k

    if tpl.kind == "clique":
        found, _ = _reservoir(_iter_cliques(g, k), limit, rng)
    elif tpl.kind in ("star", "db_star"):
        star_total = sum(comb(int(d), k - 1) for d in g.degrees)
        enum_cap = max(10 * limit, 20_000)
        if star_total <= enum_cap:
            stars = list(_iter_stars(g, k))
            if tpl.kind == "db_star":
                stars = [s for s in stars if _no_arm_edges(g, s)]
            if len(stars) > limit:
                idx = rng.choice(len(stars), size=limit, replace=False)
                stars = [stars[i] for i in sorted(idx)]
            found = stars
        else:
            found = []
            seen: set = set()
            attempts = 0
            max_attempts = 200 * limit
            while len(found) < limit and attempts < max_attempts:
                attempts += 1
                inner = _sample_star(g, k, rng)
                if inner is None:
                    break
                if tpl.kind == "db_star" and not _no_arm_edges(g, inner):
                    continue
                key = canonical_form(tpl, inner)
                if key not in seen:
                    seen.add(key)
                    found.append(inner)
    elif tpl.kind == "dense":
        found = []
        seen = set()
        for i in range(100 * limit):
            if len(found) >= limit:
                break
            got = sample_dense(g, k, tpl.density, "positive", np.random.default_rng(substream(seed, 1, i)))
            if got is None:
                continue
            inner, positive = got
            if positive:
                key = canonical_form(tpl, inner)
                if key not in seen:
                    seen.add(key)
                    found.append(inner)
    else:  # pragma: no cover - template() rejects unknown kinds
        raise ValueError(f"cannot enumerate positives for kind {tpl.kind!r}")

    strategy = "dense" if tpl.kind == "dense" else "positive"
    return [
        Sample(tuple(int(v) for v in inner), True, strategy, substream(seed, 2, i))
        for i, inner in enumerate(found)
    ]


# -- negatives ---------------------------------------------------------------


def negative_perturb(g: Graph, tpl: MotifTemplate, positive: Sample, rng: np.random.Generator):
    """Strategy 1: replace 1-2 vertices of a positive with nearby ones.

    Returns the new inner tuple, or None when no non-instance perturbation
    was found within the retry budget.
    """
    inner = positive.inner
    pool = np.array(sorted(set(bfs_distances(g, inner, 2)) - set(inner)), dtype=np.int64)
    if pool.size == 0:
        return None
    k = len(inner)
    for _ in range(_PERTURB_RETRIES):
        r = min(int(rng.integers(1, 3)), pool.size)
        slots = rng.choice(k, size=r, replace=False)
        repl = rng.choice(pool, size=r, replace=False)
        cand = list(inner)
        for slot, w in zip(slots, repl):
            cand[slot] = int(w)
        if len(set(cand)) != k:
            continue
        if not is_instance(g, instantiate(g, tpl, cand)):
            return tuple(cand)
    return None


def negative_random(g: Graph, tpl: MotifTemplate, rng: np.random.Generator):
    """Strategy 2: k uniform distinct vertices, rejected while an instance."""
    for _ in range(_REJECT_RETRIES):
        inner = tuple(int(v) for v in rng.choice(g.n, size=tpl.k, replace=False))
        if not is_instance(g, instantiate(g, tpl, inner)):
            return inner
    return None


def negative_grow(g: Graph, tpl: MotifTemplate, rng: np.random.Generator):
    """Strategy 3: grow from a random vertex through the joint neighborhood."""
    for _ in range(_REJECT_RETRIES):
        grown = [int(rng.integers(g.n))]
        while len(grown) < tpl.k:
            frontier = np.setdiff1d(
                np.unique(np.concatenate([g.neighbors(v) for v in grown])),
                np.array(grown, dtype=np.int64),
            )
            if frontier.size == 0:
                grown = None
                break
            grown.append(int(rng.choice(frontier)))
        if grown is None:
            continue
        inner = tuple(grown)
        if not is_instance(g, instantiate(g, tpl, inner)):
            return inner
    return None


def _grow_dense(g: Graph, k: int, mode: str, rng: np.random.Generator):
    """Grow a k-set adding the frontier vertex with max (near) or min (far)
    edges into the set; ties broken randomly."""
    grown = [int(rng.integers(g.n))]
    grown_set = {grown[0]}
    while len(grown) < k:
        frontier = np.setdiff1d(
            np.unique(np.concatenate([g.neighbors(v) for v in grown])),
            np.fromiter(grown_set, dtype=np.int64, count=len(grown_set)),
        )
        if frontier.size == 0:
            return None
        links = np.array([np.isin(g.neighbors(int(c)), grown).sum() for c in frontier])
        best = links.max() if mode == "near" else links.min()
        tied = frontier[links == best]
        pick = int(tied[rng.integers(tied.size)])
        grown.append(pick)
        grown_set.add(pick)
    return tuple(grown)


def sample_dense(g: Graph, k: int, density: float, side: str, rng: np.random.Generator):
    """Grow one dense-motif sample.

    side 'near'/'far' returns the grown set with its density classification;
    'positive'/'negative' retries until the classification matches (None on
    failure). Classification: internal edge count >= ceil(density * C(k,2)).
    """
    if k < 2 or not 0.0 < density <= 1.0:
        raise ValueError("need k >= 2 and density in (0, 1]")
    if side not in ("positive", "negative", "near", "far"):
        raise ValueError(f"unknown side {side!r}")
    need = ceil(density * comb(k, 2))
    retries = _REJECT_RETRIES if side in ("positive", "negative") else 1
    mode = "far" if side == "far" else "near"
    for _ in range(retries):
        inner = _grow_dense(g, k, mode, rng)
        if inner is None:
            continue
        present = sum(1 for u, v in combinations(inner, 2) if g.has_edge(u, v))
        positive = present >= need
        if side == "near" or side == "far":
            return inner, positive
        if (side == "positive") == positive:
            return inner, positive
    return None


# -- assembly ----------------------------------------------------------------


def _strategy_plan(n: int, mix, dense: bool) -> list[str]:
    if dense:
        return ["dense"] * n  # near/far split handled by index in the caller
    n1 = int(round(mix[0] * n))
    n2 = int(round(mix[1] * n))
    n3 = n - n1 - n2
    if min(n1, n2, n3) < 0:
        raise ValueError(f"mix {mix} does not decompose {n} samples")
    return ["perturb"] * n1 + ["random"] * n2 + ["grow"] * n3


def build_sample_set(
    g: Graph,
    tpl: MotifTemplate,
    n_per_class: int,
    mix: tuple[float, float, float] = (0.8, 0.1, 0.1),
    split: float = 0.9,
    seed: int = 0,
    allow_repeat_positives: bool = False,
) -> SampleSet:
    """n positives and n negatives with the given strategy mix, split 9/1.

    The split is stratified per class (each class is permuted, split, and
    the sides shuffled), so class balance holds in both subsets and the
    subsets are disjoint. Deterministic given the seed.

    When the graph holds fewer distinct instances than requested the
    default is an error; with ``allow_repeat_positives`` the distinct
    instances are split first and each side is padded with uniformly drawn
    repeats carrying fresh sample seeds (so downstream masking differs),
    keeping train and validation disjoint.
    """
    if n_per_class < 1:
        raise ValueError("n_per_class must be >= 1")
    if not 0.0 < split < 1.0:
        raise ValueError("split must be in (0, 1)")
    if len(mix) != 3 or abs(sum(mix) - 1.0) > 1e-9 or min(mix) < 0:
        raise ValueError(f"mix must be three non-negative fractions summing to 1, got {mix}")
    if g.n < tpl.k:
        raise SamplingError(f"graph has {g.n} vertices, motif needs {tpl.k}")

    positives = enumerate_positives(g, tpl, n_per_class, substream(seed, 10))
    if len(positives) < n_per_class and not allow_repeat_positives:
        raise SamplingError(
            f"graph contains only {len(positives)} {tpl.tag} instances, "
            f"{n_per_class} positives requested"
        )
    if not positives:
        raise SamplingError(f"graph contains no {tpl.tag} instances")

    dense = tpl.kind == "dense"
    plan = _strategy_plan(n_per_class, mix, dense)
    n_near = int(round(0.8 * n_per_class)) if dense else 0
    near_negatives_feasible = True
    negatives: list[Sample] = []
    seen: set = set()
    for i, strategy in enumerate(plan):
        samp_seed = substream(seed, 11, i)
        rng = np.random.default_rng(samp_seed)
        inner = None
        tag = strategy
        for attempt in range(50):
            if dense:
                side = "negative" if i < n_near and near_negatives_feasible else "far"
                got = sample_dense(g, tpl.k, tpl.density, side, rng)
                if got is None and side == "negative":
                    # Near growth cannot stay below the threshold here; fall
                    # back to far growth for this and later samples.
                    near_negatives_feasible = False
                    got = sample_dense(g, tpl.k, tpl.density, "far", rng)
                if got is not None and got[1]:
                    got = None  # growth crossed the threshold; retry
                cand = got[0] if got else None
            elif strategy == "perturb":
                source = positives[int(rng.integers(len(positives)))]
                cand = negative_perturb(g, tpl, source, rng)
                if cand is None and attempt >= 10:
                    cand = negative_random(g, tpl, rng)
                    tag = "random"
            elif strategy == "random":
                cand = negative_random(g, tpl, rng)
            else:
                cand = negative_grow(g, tpl, rng)
                if cand is None and attempt >= 10:
                    cand = negative_random(g, tpl, rng)
                    tag = "random"
            if cand is None:
                continue
            key = canonical_form(tpl, cand)
            if key in seen:
                continue
            seen.add(key)
            inner = cand
            break
        if inner is None:
            raise SamplingError(
                f"could not generate negative sample {i + 1}/{n_per_class} "
                f"(strategy {strategy}) after repeated attempts"
            )
        negatives.append(Sample(inner, False, tag, samp_seed))

    rng_split = np.random.default_rng(substream(seed, 12))
    n_train = int(round(split * n_per_class))
    n_val = n_per_class - n_train

    def _pad_with_repeats(side: list[Sample], quota: int, tag: int) -> list[Sample]:
        out = list(side)
        i = 0
        while len(out) < quota:
            src = side[int(rng_split.integers(len(side)))]
            out.append(Sample(src.inner, src.label, src.strategy, substream(seed, tag, i)))
            i += 1
        return out

    def _split_class(samples: list[Sample], tag: int):
        perm = rng_split.permutation(len(samples))
        ordered = [samples[j] for j in perm]
        if len(ordered) >= n_per_class:
            return ordered[:n_train], ordered[n_train:]
        d_train = int(round(split * len(ordered)))
        if n_train > 0 and n_val > 0 and len(ordered) >= 2:
            d_train = min(max(d_train, 1), len(ordered) - 1)
        tr, va = ordered[:d_train], ordered[d_train:]
        return _pad_with_repeats(tr, n_train, tag), _pad_with_repeats(va, n_val, tag + 1)

    pos_tr, pos_va = _split_class(positives, 13)
    neg_tr, neg_va = _split_class(negatives, 15)
    train = pos_tr + neg_tr
    val = pos_va + neg_va
    train = [train[j] for j in rng_split.permutation(len(train))]
    val = [val[j] for j in rng_split.permutation(len(val))]
    return SampleSet(tuple(train), tuple(val), tuple(mix), split)
