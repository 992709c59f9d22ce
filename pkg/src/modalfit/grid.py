"""Hyperparameter grid orchestration: axis x scale x precision x parsimony.

Each cell runs the full pipeline (candidates -> point modes -> affinity ->
clustering -> cluster refits -> quality).  Candidate sets depend only on
(scale, parsimony, subset size) and are shared across precision/axis cells.
Cells are independent jobs; results are keyed by cell so any execution order
produces an identical AnalysisResult.
"""

from __future__ import annotations

import json
import math
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .candidates import (
    DEFAULT_BUDGET,
    CandidateConfig,
    CandidateSet,
    NoCandidatesError,
    default_subset_size,
    generate_candidates,
)
from .clustering import Clustering, cluster_points
from .data_model import DataTable, NormalizedTable, normalize
from .mode_affinity import accumulate_affinity, detect_point_modes
from .piecewise import PiecewiseResult, evaluate_piecewise, fit_all_clusters

DEFAULT_SCALE_STEPS = (0.25, 0.5, 0.75, 1.0)
DEFAULT_PRECISION_STEPS = (12, 24, 48)
DEFAULT_PARSIMONY_STEPS = (0.0, 0.05, 0.2)


class AllInfeasibleError(ValueError):
    """Every grid cell failed to produce candidates."""


@dataclass(frozen=True, order=True)
class HyperParams:
    axis: int  # 1..k
    scale: float
    precision: int
    parsimony: float


@dataclass(frozen=True)
class GridConfig:
    scale_steps: tuple[float, ...] = DEFAULT_SCALE_STEPS
    precision_steps: tuple[int, ...] = DEFAULT_PRECISION_STEPS
    parsimony_steps: tuple[float, ...] = DEFAULT_PARSIMONY_STEPS
    axes: tuple[int, ...] | None = None  # default: all 1..k
    subset_size: int | None = None  # default: k+1 (lam=0) or k+3 (lam>0)
    subset_budget: int = DEFAULT_BUDGET
    rng_seed: int = 0
    row_rule: str = "min"

    def __post_init__(self):
        for name in ("scale_steps", "precision_steps", "parsimony_steps"):
            steps = tuple(getattr(self, name))
            object.__setattr__(self, name, steps)
            if not steps or list(steps) != sorted(steps):
                raise ValueError(f"{name} must be non-empty and ascending")
        if self.axes is not None:
            object.__setattr__(self, "axes", tuple(self.axes))


@dataclass(frozen=True)
class CellResult:
    params: HyperParams
    quality: float  # +inf marks an infeasible cell
    clustering: Clustering | None
    piecewise: PiecewiseResult | None
    affinity: np.ndarray | None

    @property
    def feasible(self) -> bool:
        return math.isfinite(self.quality)

    @property
    def n_clusters(self) -> int:
        return self.clustering.n_clusters if self.clustering else 0


@dataclass(frozen=True)
class AnalysisResult:
    table: DataTable
    normalized: NormalizedTable
    config: GridConfig
    cells: dict[HyperParams, CellResult]
    best: HyperParams

    def heatmaps(self) -> list[dict]:
        """One scale x precision pane of Q per (axis, parsimony)."""
        panes = []
        axes = sorted({hp.axis for hp in self.cells})
        for axis in axes:
            for lam in self.config.parsimony_steps:
                values = [
                    [
                        self.cells[HyperParams(axis, sc, b, lam)].quality
                        for b in self.config.precision_steps
                    ]
                    for sc in self.config.scale_steps
                ]
                panes.append(
                    {"axis": axis, "parsimony": lam, "rows": "scale",
                     "cols": "precision", "values": values}
                )
        return panes


def select_best(cells: dict[HyperParams, CellResult]) -> HyperParams:
    """argmin Q; ties: fewer clusters, larger scale, smaller precision,
    smaller parsimony, smaller axis."""
    feasible = [c for c in cells.values() if c.feasible]
    pool = feasible if feasible else list(cells.values())
    if not pool:
        raise AllInfeasibleError("no cells")
    if not feasible:
        raise AllInfeasibleError("every grid cell was infeasible")
    best = min(
        pool,
        key=lambda c: (
            c.quality,
            c.n_clusters,
            -c.params.scale,
            c.params.precision,
            c.params.parsimony,
            c.params.axis,
        ),
    )
    return best.params


def _resolve_axes(cfg: GridConfig, k: int) -> tuple[int, ...]:
    axes = cfg.axes if cfg.axes is not None else tuple(range(1, k + 1))
    for a in axes:
        if not (1 <= a <= k):
            raise ValueError(f"axis {a} outside 1..{k}")
    return axes


def run_grid(
    table: DataTable,
    cfg: GridConfig = GridConfig(),
    threads: int = 1,
    progress: Callable[[int, int], None] | None = None,
) -> AnalysisResult:
    """Run the pipeline over the whole grid and select the best cell."""
    norm = normalize(table)
    k = table.k
    axes = _resolve_axes(cfg, k)

    cand_cache: dict[tuple[float, float, int], CandidateSet | NoCandidatesError] = {}
    refit_cache: dict = {}  # within-cluster candidate sets, shared across cells
    cache_lock = threading.Lock()

    def candidates_for(scale: float, lam: float) -> CandidateSet:
        s = cfg.subset_size or default_subset_size(k, lam)
        key = (scale, lam, s)
        with cache_lock:
            hit = cand_cache.get(key)
        if hit is None:
            ccfg = CandidateConfig(
                subset_size=min(s, table.m), lam=lam, scale=scale,
                subset_budget=cfg.subset_budget, rng_seed=cfg.rng_seed,
            )
            try:
                hit = generate_candidates(norm, ccfg)
            except NoCandidatesError as err:
                hit = err
            with cache_lock:
                hit = cand_cache.setdefault(key, hit)
        if isinstance(hit, NoCandidatesError):
            raise hit
        return hit

    grid = [
        HyperParams(axis, scale, prec, lam)
        for axis in axes
        for lam in cfg.parsimony_steps
        for scale in cfg.scale_steps
        for prec in cfg.precision_steps
    ]

    done = 0
    done_lock = threading.Lock()

    def run_cell(hp: HyperParams) -> CellResult:
        nonlocal done
        try:
            cands = candidates_for(hp.scale, hp.parsimony)
            modes = detect_point_modes(cands, hp.axis, hp.precision, table.m)
            affinity = accumulate_affinity(modes, cands, table.m)
            clustering = cluster_points(affinity, cfg.row_rule)
            s = cfg.subset_size or default_subset_size(k, hp.parsimony)
            fit_cfg = CandidateConfig(
                subset_size=min(s, table.m), lam=hp.parsimony, scale=1.0,
                subset_budget=cfg.subset_budget, rng_seed=cfg.rng_seed,
            )
            fits = fit_all_clusters(norm, clustering, fit_cfg, hp.precision,
                                    cand_cache=refit_cache)
            piecewise = evaluate_piecewise(norm, clustering, fits)
            cell = CellResult(hp, piecewise.quality, clustering, piecewise, affinity)
        except NoCandidatesError:
            cell = CellResult(hp, float("inf"), None, None, None)
        if progress is not None:
            with done_lock:
                done += 1
                progress(done, len(grid))
        return cell

    if threads <= 1:
        results = [run_cell(hp) for hp in grid]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(run_cell, grid))

    cells = {cell.params: cell for cell in results}
    best = select_best(cells)
    return AnalysisResult(table=table, normalized=norm, config=cfg,
                          cells=cells, best=best)


# ---------------------------------------------------------------------------
# JSON wire format
# ---------------------------------------------------------------------------

def _params_dict(hp: HyperParams) -> dict:
    return {"axis": hp.axis, "scale": hp.scale, "precision": hp.precision,
            "parsimony": hp.parsimony}


def result_to_dict(result: AnalysisResult) -> dict:
    cells = []
    for hp in sorted(result.cells):
        cell = result.cells[hp]
        entry = dict(_params_dict(hp))
        entry["quality"] = cell.quality if cell.feasible else "inf"
        entry["clusters"] = cell.n_clusters
        entry["labels"] = (
            [int(v) for v in cell.clustering.labels] if cell.clustering else []
        )
        entry["displayOrder"] = (
            [int(v) for v in cell.clustering.display_order] if cell.clustering else []
        )
        entry["fits"] = [
            {
                "coeffs": [float(c) for c in f.plane.slopes],
                "intercept": float(f.plane.intercept),
                "members": f.member_count,
                "slopesDefined": f.slopes_defined,
            }
            for f in (cell.piecewise.fits if cell.piecewise else [])
        ]
        cells.append(entry)
    return {
        "config": {
            "scaleSteps": list(result.config.scale_steps),
            "precisionSteps": list(result.config.precision_steps),
            "parsimonySteps": list(result.config.parsimony_steps),
            "axes": list(_resolve_axes(result.config, result.table.k)),
            "subsetSize": result.config.subset_size,
            "budget": result.config.subset_budget,
            "seed": result.config.rng_seed,
            "columnNames": list(result.table.column_names),
        },
        "cells": cells,
        "best": _params_dict(result.best),
        "heatmaps": [
            {**pane,
             "values": [[v if math.isfinite(v) else "inf" for v in row]
                        for row in pane["values"]]}
            for pane in result.heatmaps()
        ],
    }


def result_to_json(result: AnalysisResult) -> str:
    return json.dumps(result_to_dict(result), indent=2, sort_keys=True)
