"""Affinity-matrix clustering: overlap rule, seed-grow, recursive prune/merge.

Two points are deemed to share a cluster when their binarized affinity rows
overlap in more than half of the smaller row's non-zero positions ("min"
rule; the stricter reading requiring both rows is available as "both").
Seed-grow allocates points greedily from the best-connected seed; the
prune/merge pass applies the same overlap rule to a cluster-level affinity
matrix until a fixed point.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

ROW_RULES = ("min", "both")


@dataclass(frozen=True)
class BinarizedAffinity:
    # off-diagonal true iff count > 0; diagonal always true (a point always
    # co-occurs with itself), which is what lets two-point blocks pass the
    # strict majority-overlap rule
    matrix: np.ndarray  # (m, m) bool, symmetric, reflexive diagonal
    row_count: np.ndarray  # (m,) number of True per row


@dataclass(frozen=True)
class Clustering:
    labels: np.ndarray  # (m,) dense cluster ids
    clusters: list[list[int]]
    display_order: np.ndarray  # permutation of 0..m-1

    @property
    def n_clusters(self) -> int:
        return len(self.clusters)


def binarize(affinity: np.ndarray) -> BinarizedAffinity:
    b = (np.asarray(affinity) > 0).copy()
    np.fill_diagonal(b, True)
    return BinarizedAffinity(matrix=b, row_count=b.sum(axis=1))


def _same_cluster_rows(
    row_i: np.ndarray, row_j: np.ndarray, count_i: int, count_j: int, rule: str
) -> bool:
    overlap = int(np.count_nonzero(row_i & row_j))
    if overlap == 0:
        return False
    ref = min(count_i, count_j) if rule == "min" else max(count_i, count_j)
    return overlap > 0.5 * ref


def same_cluster(bin_aff: BinarizedAffinity, i: int, j: int, rule: str = "min") -> bool:
    if i == j:
        raise ValueError("i and j must differ")
    if rule not in ROW_RULES:
        raise ValueError(f"rule must be one of {ROW_RULES}")
    return _same_cluster_rows(
        bin_aff.matrix[i], bin_aff.matrix[j],
        int(bin_aff.row_count[i]), int(bin_aff.row_count[j]), rule,
    )


def _finalize(groups: list[list[int]], m: int) -> Clustering:
    ordered = sorted(
        (sorted(g) for g in groups if g), key=lambda g: (-len(g), g[0])
    )
    labels = np.empty(m, dtype=np.int64)
    display = []
    for cid, members in enumerate(ordered):
        labels[members] = cid
        display.extend(members)
    return Clustering(labels=labels, clusters=[list(g) for g in ordered],
                      display_order=np.array(display, dtype=np.int64))


def seed_grow(bin_aff: BinarizedAffinity, rule: str = "min") -> Clustering:
    """Greedy allocation: best-connected unallocated point seeds each cluster."""
    m = bin_aff.matrix.shape[0]
    unallocated = np.ones(m, dtype=bool)
    groups = []
    while unallocated.any():
        cand = np.where(unallocated)[0]
        seed = int(cand[np.argmax(bin_aff.row_count[cand])])  # tie: smallest index
        members = [seed]
        for j in cand:
            if j != seed and same_cluster(bin_aff, seed, int(j), rule):
                members.append(int(j))
        groups.append(members)
        unallocated[members] = False
    return _finalize(groups, m)


def _cluster_affinity(affinity: np.ndarray, clusters: list[list[int]]) -> np.ndarray:
    c = len(clusters)
    ca = np.empty((c, c), dtype=np.int64)
    for a in range(c):
        rows = affinity[clusters[a]]
        for b in range(c):
            ca[a, b] = rows[:, clusters[b]].sum()
    return ca


def prune_merge(
    clustering: Clustering, affinity: np.ndarray, rule: str = "min"
) -> Clustering:
    """Merge clusters whose aggregated affinity rows satisfy the overlap rule.

    Repeats (with union-find transitivity inside each pass) until no merge
    applies; idempotent by construction.
    """
    m = affinity.shape[0]
    clusters = [list(g) for g in clustering.clusters]
    while len(clusters) > 1:
        ca = _cluster_affinity(affinity, clusters)
        bca = ca > 0
        np.fill_diagonal(bca, True)  # mirror the point-level reflexive rows
        counts = bca.sum(axis=1)
        parent = list(range(len(clusters)))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        merged = False
        for a in range(len(clusters)):
            for b in range(a + 1, len(clusters)):
                if _same_cluster_rows(bca[a], bca[b], int(counts[a]), int(counts[b]), rule):
                    ra, rb = find(a), find(b)
                    if ra != rb:
                        parent[max(ra, rb)] = min(ra, rb)
                        merged = True
        if not merged:
            break
        joined: dict[int, list[int]] = {}
        for a, members in enumerate(clusters):
            joined.setdefault(find(a), []).extend(members)
        clusters = list(joined.values())
    return _finalize(clusters, m)


def cluster_points(affinity: np.ndarray, rule: str = "min") -> Clustering:
    """seed_grow followed by prune_merge."""
    return prune_merge(seed_grow(binarize(affinity), rule), affinity, rule)
