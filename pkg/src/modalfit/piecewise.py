"""Per-cluster modal fits, denormalization, residuals and the quality measure.

Each cluster with enough points is refitted by the modal Theil-Sen procedure:
candidates inside the cluster (scale filter off), one circular mode bin per
slope axis, slope = tan(circular mean of the mode bin), intercept by median
back-substitution.  Quality Q is the sum of absolute normalized residuals of
every point from its own cluster's fit.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .candidates import CandidateConfig, NoCandidatesError, generate_candidates
from .clustering import Clustering
from .data_model import NormalizedTable, denormalize_plane
from .lad_lasso import DegenerateError, Hyperplane, LadLassoProblem, solve_lad_lasso
from .mode_affinity import angle_bin


@dataclass(frozen=True)
class ClusterFit:
    cluster_id: int
    plane: Hyperplane  # original units
    plane_normalized: Hyperplane
    member_count: int
    slopes_defined: bool
    residuals: np.ndarray  # per-member |resid| in normalized units


@dataclass(frozen=True)
class PiecewiseResult:
    fits: list[ClusterFit]
    quality: float


def _circular_mode_slope(angles: np.ndarray, bins: int) -> float:
    """tan of the circular mean of the most populated angle bin."""
    idx = angle_bin(angles, bins)
    counts = np.bincount(idx, minlength=bins)
    mode = int(np.argmax(counts))
    inside = angles[idx == mode]
    # doubled-angle mean handles the mod-pi identification
    mean = 0.5 * np.arctan2(np.sin(2 * inside).sum(), np.cos(2 * inside).sum())
    return float(np.tan(mean))


def _median_plane(table: NormalizedTable, members: np.ndarray) -> Hyperplane:
    return Hyperplane(float(np.median(table.y[members])), np.zeros(table.k))


def _cluster_candidates(sub, local, members, cache: dict | None):
    if cache is None:
        return generate_candidates(sub, local)
    key = (tuple(int(i) for i in members), local.subset_size, local.lam)
    hit = cache.get(key)
    if hit is None:
        try:
            hit = generate_candidates(sub, local)
        except NoCandidatesError as err:
            hit = err
        hit = cache.setdefault(key, hit)
    if isinstance(hit, NoCandidatesError):
        raise hit
    return hit


def fit_cluster(
    table: NormalizedTable,
    members,
    cfg: CandidateConfig,
    bins: int,
    cluster_id: int = 0,
    cand_cache: dict | None = None,
) -> ClusterFit:
    """Fit one cluster; clusters below k+1 points get a classification-only fit.

    cand_cache, when given, memoizes within-cluster candidate sets keyed by
    (members, subset size, lambda); the same cluster recurs across many grid
    cells and its candidates do not depend on the bin count.
    """
    members = np.asarray(sorted(int(i) for i in members), dtype=np.int64)
    if len(members) == 0:
        raise ValueError("cluster has no members")
    k = table.k
    slopes_defined = True

    if len(members) < k + 1:
        plane_n = _median_plane(table, members)
        slopes_defined = False
    elif len(members) == k + 1:
        problem = LadLassoProblem(table.values[members], lam=0.0)
        try:
            plane_n, _ = solve_lad_lasso(problem)
        except DegenerateError:
            plane_n = _median_plane(table, members)
            slopes_defined = False
    else:
        sub = NormalizedTable(table.column_names, table.values[members], table.params)
        local = replace(cfg, scale=1.0, subset_size=min(cfg.subset_size, len(members)))
        try:
            cands = _cluster_candidates(sub, local, members, cand_cache)
            slopes = np.array(
                [_circular_mode_slope(cands.angles[:, j], bins) for j in range(k)]
            )
            intercept = float(np.median(sub.y - sub.x @ slopes))
            plane_n = Hyperplane(intercept, slopes)
        except (NoCandidatesError, DegenerateError):
            plane_n = _median_plane(table, members)
            slopes_defined = False

    resid = np.abs(table.y[members] - plane_n.predict(table.x[members]))
    raw_icpt, raw_slopes = denormalize_plane(
        table.params, plane_n.intercept, plane_n.slopes
    )
    return ClusterFit(
        cluster_id=cluster_id,
        plane=Hyperplane(raw_icpt, raw_slopes, normalized=False),
        plane_normalized=plane_n,
        member_count=len(members),
        slopes_defined=slopes_defined,
        residuals=resid,
    )


def fit_all_clusters(
    table: NormalizedTable,
    clustering: Clustering,
    cfg: CandidateConfig,
    bins: int,
    cand_cache: dict | None = None,
) -> list[ClusterFit]:
    return [
        fit_cluster(table, members, cfg, bins, cluster_id=cid, cand_cache=cand_cache)
        for cid, members in enumerate(clustering.clusters)
    ]


def evaluate_piecewise(
    table: NormalizedTable, clustering: Clustering, fits: list[ClusterFit]
) -> PiecewiseResult:
    if len(fits) != clustering.n_clusters:
        raise ValueError("fits must cover all clusters")
    q = float(sum(f.residuals.sum() for f in fits))
    return PiecewiseResult(fits=fits, quality=q)
