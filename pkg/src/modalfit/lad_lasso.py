"""Exact small-scale LAD-LASSO: minimize sum|resid| + lambda*sum|slopes|.

The intercept is unpenalized.  The solver enumerates interpolation vertices
(every zero-slope pattern crossed with every nonsingular point subset of the
matching size) and returns the strict minimum, which is exact for this
piecewise-linear objective.  The heavy batch path lives in modalfit._kernel.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._kernel import solve_batch


class DegenerateError(ValueError):
    """Every enumerated interpolation system was singular."""


@dataclass(frozen=True)
class Hyperplane:
    intercept: float
    slopes: np.ndarray  # (k,)
    normalized: bool = True

    def __post_init__(self):
        object.__setattr__(
            self, "slopes", np.atleast_1d(np.asarray(self.slopes, dtype=np.float64))
        )
        if not (np.isfinite(self.intercept) and np.all(np.isfinite(self.slopes))):
            raise ValueError("hyperplane coefficients must be finite")

    def predict(self, x: np.ndarray) -> np.ndarray:
        return self.intercept + np.atleast_2d(x) @ self.slopes


@dataclass(frozen=True)
class LadLassoProblem:
    points: np.ndarray  # (s, k+1), final column dependent
    lam: float = 0.0

    def __post_init__(self):
        pts = np.atleast_2d(np.asarray(self.points, dtype=np.float64))
        object.__setattr__(self, "points", pts)
        if pts.shape[0] < 1 or pts.shape[1] < 2:
            raise ValueError("need at least one point with one explanatory column")
        if self.lam < 0:
            raise ValueError("lambda must be non-negative")


def lad_objective(problem: LadLassoProblem, plane: Hyperplane) -> float:
    x = problem.points[:, :-1]
    y = problem.points[:, -1]
    resid = y - plane.predict(x)
    return float(np.abs(resid).sum() + problem.lam * np.abs(plane.slopes).sum())


def solve_lad_lasso(problem: LadLassoProblem) -> tuple[Hyperplane, float]:
    """Return a global minimizer and its objective value."""
    s = problem.points.shape[0]
    x = np.ascontiguousarray(problem.points[:, :-1])
    y = np.ascontiguousarray(problem.points[:, -1])
    subsets = np.arange(s, dtype=np.int64)[None, :]
    coef, obj, ok = solve_batch(x, y, subsets, problem.lam)
    if not ok[0] or not np.isfinite(obj[0]):
        raise DegenerateError("all interpolation systems singular")
    return Hyperplane(float(coef[0, 0]), coef[0, 1:]), float(obj[0])


def median_fallback(problem: LadLassoProblem) -> tuple[Hyperplane, float]:
    """Zero-slope LAD fit: intercept at the median of y."""
    k = problem.points.shape[1] - 1
    plane = Hyperplane(float(np.median(problem.points[:, -1])), np.zeros(k))
    return plane, lad_objective(problem, plane)
