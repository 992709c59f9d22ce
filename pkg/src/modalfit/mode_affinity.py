"""Per-point circular modes on candidate slope angles, and the affinity matrix.

Slopes are parameterized by angle so steep positive and steep negative fits
are neighbors (period pi).  Each data point gets the single most populated
histogram bin among the candidates that contain it; every candidate supporting
such a mode then votes for all point pairs inside its subset, accumulating the
m x m co-occurrence (affinity) matrix that drives clustering.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .candidates import CandidateSet


def angle_bin(theta, bins: int):
    """Circular bin index: floor(((theta + pi/2) mod pi) / (pi/bins)), in 0..bins-1."""
    wrapped = np.mod(np.asarray(theta, dtype=np.float64) + np.pi / 2, np.pi)
    idx = np.floor(wrapped * bins / np.pi).astype(np.int64)
    return np.clip(idx, 0, bins - 1)


@dataclass(frozen=True)
class AngleHistogram:
    axis: int  # 1..k
    bins: int
    counts: np.ndarray  # (bins,)

    @property
    def bin_width(self) -> float:
        return np.pi / self.bins


@dataclass(frozen=True)
class PointMode:
    point_index: int
    axis: int  # 1..k
    mode_bin: int
    supporters: np.ndarray  # candidate ids, each containing point_index


def angle_histogram(angles: np.ndarray, axis: int, bins: int) -> AngleHistogram:
    counts = np.bincount(angle_bin(angles, bins), minlength=bins)
    return AngleHistogram(axis=axis, bins=bins, counts=counts)


def detect_point_modes(
    cands: CandidateSet, axis: int, bins: int, m: int
) -> list[PointMode]:
    """One mode per point appearing in any candidate; argmax bin, low index wins ties."""
    if bins < 2:
        raise ValueError("need at least 2 bins")
    if not (1 <= axis <= cands.k):
        raise ValueError(f"axis {axis} outside 1..{cands.k}")
    if len(cands) == 0:
        raise ValueError("no candidates")
    bin_of = angle_bin(cands.angles[:, axis - 1], bins)
    sorted_cand, starts, ends = cands.point_index

    modes = []
    for p in range(m):
        cand_ids = sorted_cand[starts[p] : ends[p]]
        if len(cand_ids) == 0:
            continue
        counts = np.bincount(bin_of[cand_ids], minlength=bins)
        mode_bin = int(np.argmax(counts))  # first maximum: smallest bin index
        supporters = cand_ids[bin_of[cand_ids] == mode_bin]
        modes.append(PointMode(p, axis, mode_bin, supporters))
    return modes


def accumulate_affinity(
    point_modes: list[PointMode], cands: CandidateSet, m: int
) -> np.ndarray:
    """Symmetric m x m co-occurrence counts; one vote per (point-mode, supporter, pair)."""
    mult = np.zeros(len(cands), dtype=np.int64)
    for pm in point_modes:
        np.add.at(mult, pm.supporters, 1)
    a_flat = np.zeros(m * m, dtype=np.float64)
    subsets = cands.subsets
    s = subsets.shape[1]
    for a in range(s):
        for b in range(a + 1, s):
            flat = subsets[:, a] * m + subsets[:, b]
            a_flat += np.bincount(flat, weights=mult, minlength=m * m)
    upper = a_flat.reshape(m, m).astype(np.int64)
    full = upper + upper.T
    np.fill_diagonal(full, 0)
    return full
