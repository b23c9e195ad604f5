"""Scoring motifs on a toy collaboration graph.

Walks through the three aggregators on concrete examples: how likely is a
group to close into a clique, and how do unwanted edges (deal-breakers)
drag the score down even before they appear?

Run: python3 demos/01_motif_scores.py
"""

from motifpred import (
    Graph,
    build_query,
    instantiate,
    jaccard,
    make_weights,
    score_avg_db,
    score_min,
    score_mul,
    score_query_edges,
    template,
)

# A small collaboration graph: 0-4 form a tight group, 5-7 hang off it.
g = Graph(
    8,
    [
        (0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (0, 4), (3, 4),
        (4, 5), (5, 6), (6, 7), (2, 5),
    ],
)
print(f"graph: {g.n} vertices, {g.m} edges")


def show(q, label):
    print(f"\n{label}")
    print(f"  existing motif edges:     {q.motif_existing}")
    print(f"  non-existing motif edges: {q.motif_nonexisting}")
    if q.dealbreaker_existing or q.dealbreaker_nonexisting:
        print(f"  deal-breakers existing:   {q.dealbreaker_existing}")
        print(f"  deal-breakers potential:  {q.dealbreaker_nonexisting}")
    for scorer in ("jaccard", "cn", "aa"):
        sv = score_query_edges(g, q, scorer)
        w = make_weights("uniform_nonexisting", q)
        print(
            f"  {scorer:8s} mul={score_mul(q, sv).value:.3f}"
            f"  min={score_min(q, sv).value:.3f}"
            f"  avg={score_avg_db(q, sv, w).value:.3f}"
        )


# --- 1. A 4-clique query with two missing edges ----------------------------
# Vertices 0, 1, 3, 4 already share four of their six edges. The missing
# ones are 0-3 (whose endpoints have identical neighborhoods, Jaccard 1.0)
# and 1-4 (Jaccard 0.5). With more than one link in play the aggregators
# separate: the independent product is the most pessimistic, the convex
# combination credits correlation, min sits in between.
show(instantiate(g, template("clique", 4), (0, 1, 3, 4)), "4-clique on (0, 1, 3, 4):")

# --- 2. A star whose deal-breaker is practically certain --------------------
# Hub 4 over arms (5, 3, 0), arms forbidden to know each other. No arm-arm
# edge exists yet, but jaccard(0, 3) = 1.0: that deal-breaker is as likely
# as a link can be, so every aggregator writes the motif off completely.
print(f"\njaccard(0, 3) = {jaccard(g, 0, 3):.2f}  <- potential deal-breaker")
show(instantiate(g, template("db_star", 4), (4, 5, 3, 0)), "4-db-star, hub 4, arms (5, 3, 0):")

# --- 3. An impossible motif edge zeroes the product too ---------------------
# With arms (5, 3, 7) the hub-arm edge 4-7 is missing and its endpoints
# share no neighbors (score 0), so the product collapses; the rectified
# forms are already pulled under by the potential arm-arm links.
show(instantiate(g, template("db_star", 4), (4, 5, 3, 7)), "4-db-star, hub 4, arms (5, 3, 7):")

# --- 4. Only the product grades residual deal-breaker risk ------------------
# Hub 6 over arms (5, 7): both hub-arm edges exist, the only question is
# the potential 5-7 link (score 1/3). The product keeps 2/3 of the score;
# the rectified combination and min are all-or-nothing here because every
# non-existing edge that matters is a deal-breaker.
show(instantiate(g, template("db_star", 3), (6, 5, 7)), "3-db-star, hub 6, arms (5, 7):")

# --- 5. Custom queries -------------------------------------------------------
# Any pair partition works, not just the named templates.
q_custom = build_query(g, (1, 2, 5, 6), motif_pairs=[(1, 5), (2, 6)], dealbreaker_pairs=[(5, 6)])
show(q_custom, "custom query on (1, 2, 5, 6), 5-6 forbidden but already present:")
