"""Vertex enumeration plans for the exact LAD-LASSO solve.

A vertex fixes some subset z of the slopes at zero and exactly interpolates
(k+1-|z|) of the points with the remaining coefficients.  The global optimum of
the L1 objective lies at such a vertex, so enumerating all of them and taking
the minimum is exact.  Plans are emitted in tie-break priority order: more zero
slopes first, then zero-set lexicographic, then generating point subset
lexicographic; a strict < comparison during the scan therefore implements the
tie-break for free.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations

import numpy as np

MAX_K = 8


@lru_cache(maxsize=None)
def vertex_plan(k: int, s: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Return (free_idx, free_count, point_idx) arrays describing every vertex.

    free_idx: (nv, k) int32, 1-based slope indices left free, padded with 0.
    free_count: (nv,) int32.
    point_idx: (nv, k+1) int32, local point indices to interpolate, padded.
    """
    if k > MAX_K:
        raise ValueError(f"k={k} exceeds the supported maximum of {MAX_K}")
    free_rows, counts, pts_rows = [], [], []
    for nzero in range(k, -1, -1):
        for zero in combinations(range(1, k + 1), nzero):
            free = [j for j in range(1, k + 1) if j not in zero]
            p = 1 + len(free)
            if p > s:
                continue
            for pts in combinations(range(s), p):
                free_rows.append(free + [0] * (k - len(free)))
                counts.append(len(free))
                pts_rows.append(list(pts) + [0] * (k + 1 - p))
    return (
        np.array(free_rows, dtype=np.int32).reshape(len(counts), k),
        np.array(counts, dtype=np.int32),
        np.array(pts_rows, dtype=np.int32).reshape(len(counts), k + 1),
    )
