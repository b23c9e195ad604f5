"""Small synthetic graph generators for demos, sanity checks, and tests."""

from __future__ import annotations

from itertools import combinations

import numpy as np

from .graph import Graph

__all__ = ["make_random_graph", "make_planted_clique_graph", "edge_list_text"]


def make_random_graph(n: int, p: float, seed: int = 0) -> Graph:
    """Erdos-Renyi G(n, p)."""
    rng = np.random.default_rng(seed)
    iu = np.triu_indices(n, k=1)
    mask = rng.random(iu[0].size) < p
    edges = np.stack([iu[0][mask], iu[1][mask]], axis=1)
    return Graph(n, edges)


def make_planted_clique_graph(
    n: int, p: float, n_cliques: int, clique_size: int, seed: int = 0
) -> tuple[Graph, list[tuple[int, ...]]]:
    """Sparse background graph with disjoint planted cliques.

    Returns the graph and the planted vertex sets.
    """
    if n_cliques * clique_size > n:
        raise ValueError("not enough vertices for disjoint planted cliques")
    rng = np.random.default_rng(seed)
    base = make_random_graph(n, p, seed)
    edges = [tuple(e) for e in base.edges()]
    chosen = rng.choice(n, size=n_cliques * clique_size, replace=False)
    planted = []
    for c in range(n_cliques):
        members = tuple(sorted(int(v) for v in chosen[c * clique_size : (c + 1) * clique_size]))
        planted.append(members)
        edges.extend(combinations(members, 2))
    return Graph(n, edges), planted


def edge_list_text(g: Graph) -> str:
    """Edge-list serialization using the graph's source ids."""
    lines = [f"{g.id_map[u]} {g.id_map[v]}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"
