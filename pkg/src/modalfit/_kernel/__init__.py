"""Kernel backend selection: compiled extension when available, numpy fallback.

Set MODALFIT_KERNEL=python or MODALFIT_KERNEL=native to force a backend.
"""

from __future__ import annotations

import os

import numpy as np

from . import pykernel
from .plan import MAX_K, vertex_plan

_choice = os.environ.get("MODALFIT_KERNEL", "auto")
_native = None
if _choice in ("auto", "native"):
    try:
        import importlib

        _native = importlib.import_module(__name__ + "._native")
    except ImportError:
        _native = None
        if _choice == "native":
            raise

BACKEND = "native" if _native is not None else "python"


def solve_batch(X, y, subsets, lam):
    """Batch-exact LAD-LASSO over point subsets; see pykernel.solve_batch."""
    X = np.ascontiguousarray(X, dtype=np.float64)
    y = np.ascontiguousarray(y, dtype=np.float64)
    subsets = np.ascontiguousarray(subsets, dtype=np.int64)
    if _native is not None:
        free_idx, free_count, point_idx = vertex_plan(X.shape[1], subsets.shape[1])
        return _native.solve_batch(
            X, y, subsets, float(lam),
            np.ascontiguousarray(free_idx), np.ascontiguousarray(free_count),
            np.ascontiguousarray(point_idx),
        )
    return pykernel.solve_batch(X, y, subsets, float(lam))
