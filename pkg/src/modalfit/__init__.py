"""Robust piecewise-linear data exploration via mode-based Theil-Sen fitting."""

from ._kernel import BACKEND as KERNEL_BACKEND
from .candidates import CandidateConfig, CandidateSet, generate_candidates
from .clustering import Clustering, cluster_points
from .data_model import (
    DataTable,
    NormalizedTable,
    SyntheticSpec,
    generate_synthetic,
    normalize,
    parse_table,
    serialize_table,
)
from .grid import AnalysisResult, GridConfig, HyperParams, run_grid
from .lad_lasso import Hyperplane, LadLassoProblem, lad_objective, solve_lad_lasso

__version__ = "0.1.0"

__all__ = [
    "KERNEL_BACKEND",
    "AnalysisResult",
    "CandidateConfig",
    "CandidateSet",
    "Clustering",
    "DataTable",
    "GridConfig",
    "HyperParams",
    "Hyperplane",
    "LadLassoProblem",
    "NormalizedTable",
    "SyntheticSpec",
    "cluster_points",
    "generate_candidates",
    "generate_synthetic",
    "lad_objective",
    "normalize",
    "parse_table",
    "run_grid",
    "serialize_table",
    "solve_lad_lasso",
]
