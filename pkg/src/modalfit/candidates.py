"""Candidate solutions: scale-filtered point subsets fitted by exact LAD-LASSO.

Full enumeration of s-subsets is used while C(m, s) stays within the budget;
beyond that, subsets are drawn uniformly without replacement with a
counter-based (Philox) generator so the output is a pure function of the seed
regardless of how the work is parallelized.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from math import comb

import numpy as np

from ._kernel import solve_batch
from .data_model import NormalizedTable
from .lad_lasso import Hyperplane

DEFAULT_BUDGET = 200_000


class NoCandidatesError(ValueError):
    """Every subset was scale-inadmissible or degenerate: sigma too small."""


@dataclass(frozen=True)
class CandidateConfig:
    subset_size: int
    lam: float = 0.0
    scale: float = 1.0
    subset_budget: int = DEFAULT_BUDGET
    rng_seed: int = 0

    def __post_init__(self):
        if not (0.0 < self.scale <= 1.0):
            raise ValueError("scale must be in (0, 1]")
        if self.lam < 0:
            raise ValueError("lambda must be non-negative")
        if self.subset_budget < 1:
            raise ValueError("subset budget must be positive")


def default_subset_size(k: int, lam: float) -> int:
    # Exact Theil-Sen vertices when unregularized; slack beyond an exact
    # interpolation when the L1 penalty is active.
    return k + 1 if lam == 0 else k + 3


@dataclass(frozen=True)
class CandidateSolution:
    subset: tuple[int, ...]
    plane: Hyperplane
    angles: np.ndarray  # (k,), atan of each slope
    objective: float


@dataclass(frozen=True)
class CandidateSet:
    """Columnar store of candidate solutions, sorted by subset index vector."""

    subsets: np.ndarray  # (n, s) int64
    coeffs: np.ndarray  # (n, k+1) [intercept, slopes...]
    angles: np.ndarray  # (n, k)
    objectives: np.ndarray  # (n,)
    skipped_degenerate: int
    m: int

    def __len__(self) -> int:
        return self.subsets.shape[0]

    @property
    def k(self) -> int:
        return self.angles.shape[1]

    @cached_property
    def point_index(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Inverted subset membership: candidate ids grouped by point index.

        Returns (candidate_ids, starts, ends); candidates containing point p
        are candidate_ids[starts[p]:ends[p]].  Shared across every (axis, B)
        histogram pass over the same candidate set.
        """
        n, s = self.subsets.shape
        flat_pts = self.subsets.ravel()
        flat_cand = np.repeat(np.arange(n, dtype=np.int64), s)
        order = np.argsort(flat_pts, kind="stable")
        sorted_pts = flat_pts[order]
        starts = np.searchsorted(sorted_pts, np.arange(self.m))
        ends = np.searchsorted(sorted_pts, np.arange(self.m), side="right")
        return flat_cand[order], starts, ends

    def candidate(self, i: int) -> CandidateSolution:
        return CandidateSolution(
            subset=tuple(int(v) for v in self.subsets[i]),
            plane=Hyperplane(float(self.coeffs[i, 0]), self.coeffs[i, 1:]),
            angles=self.angles[i],
            objective=float(self.objectives[i]),
        )


def scale_admissible(table: NormalizedTable, subset, sigma: float) -> bool:
    """True iff the subset's max pairwise distance is within sigma*sqrt(k+1)."""
    idx = np.asarray(subset, dtype=np.int64)
    pts = table.values[idx]
    d = pts[:, None, :] - pts[None, :, :]
    maxdist = float(np.sqrt((d * d).sum(axis=2)).max())
    return maxdist <= sigma * np.sqrt(table.k + 1)


def _admissible_mask(values: np.ndarray, subsets: np.ndarray, sigma: float) -> np.ndarray:
    limit = sigma * np.sqrt(values.shape[1])
    n, s = subsets.shape
    out = np.zeros(n, dtype=bool)
    # chunked: (chunk, s, s) pairwise distances
    step = max(1, 4_000_000 // (s * s * values.shape[1]))
    for lo in range(0, n, step):
        pts = values[subsets[lo : lo + step]]
        d = pts[:, :, None, :] - pts[:, None, :, :]
        maxdist = np.sqrt((d * d).sum(axis=3)).max(axis=(1, 2))
        out[lo : lo + step] = maxdist <= limit
    return out


def _comb_table(m: int, s: int) -> np.ndarray:
    table = np.zeros((m + 1, s + 1), dtype=np.int64)
    for c in range(m + 1):
        for i in range(min(c, s) + 1):
            table[c, i] = comb(c, i)
        if s > c:
            table[c, c + 1 :] = 0
    return table


def _unrank_colex(ranks: np.ndarray, m: int, s: int) -> np.ndarray:
    """Map combinadic ranks to s-subsets of {0..m-1} (ascending per row)."""
    table = _comb_table(m, s)
    r = ranks.astype(np.int64).copy()
    out = np.empty((len(r), s), dtype=np.int64)
    for i in range(s, 0, -1):
        col = table[:, i]
        c = np.searchsorted(col, r, side="right") - 1
        out[:, i - 1] = c
        r -= col[c]
    return out


def _sample_ranks(total: int, budget: int, seed: int) -> np.ndarray:
    """Deterministically draw `budget` distinct ranks in [0, total)."""
    rng = np.random.Generator(np.random.Philox(seed))
    if total <= 16 * budget:
        return np.sort(rng.permutation(total)[:budget])
    drawn = np.empty(0, dtype=np.int64)
    while True:
        batch = rng.integers(0, total, size=budget + budget // 4 + 16, dtype=np.int64)
        drawn = np.concatenate([drawn, batch])
        _, first = np.unique(drawn, return_index=True)
        if len(first) >= budget:
            keep = drawn[np.sort(first)[:budget]]
            return np.sort(keep)


def enumerate_subsets(m: int, s: int, budget: int, seed: int) -> np.ndarray:
    """All s-subsets when C(m,s) <= budget, else a seeded uniform sample."""
    total = comb(m, s)
    if total <= budget:
        out = np.fromiter(
            (i for c in combinations(range(m), s) for i in c),
            dtype=np.int64,
            count=total * s,
        ).reshape(total, s)
        return out
    ranks = _sample_ranks(total, budget, seed)
    return _unrank_colex(ranks, m, s)


def generate_candidates(table: NormalizedTable, cfg: CandidateConfig) -> CandidateSet:
    """Fit every admissible subset; see module docstring for the sampling rule."""
    m, k = table.m, table.k
    s = cfg.subset_size
    if not (k + 1 <= s <= m):
        raise ValueError(f"subset size {s} outside [{k + 1}, {m}]")
    subsets = enumerate_subsets(m, s, cfg.subset_budget, cfg.rng_seed)
    mask = _admissible_mask(table.values, subsets, cfg.scale)
    subsets = subsets[mask]
    if len(subsets) == 0:
        raise NoCandidatesError(
            f"no scale-admissible subsets at sigma={cfg.scale}; increase sigma"
        )
    coeffs, obj, ok = solve_batch(table.x, table.y, subsets, cfg.lam)
    good = ok & np.isfinite(obj)
    skipped = int(len(subsets) - good.sum())
    if not good.any():
        raise NoCandidatesError("every admissible subset was degenerate")
    subsets, coeffs, obj = subsets[good], coeffs[good], obj[good]
    order = np.lexsort(subsets.T[::-1])
    subsets, coeffs, obj = subsets[order], coeffs[order], obj[order]
    return CandidateSet(
        subsets=subsets,
        coeffs=coeffs,
        angles=np.arctan(coeffs[:, 1:]),
        objectives=obj,
        skipped_degenerate=skipped,
        m=m,
    )
