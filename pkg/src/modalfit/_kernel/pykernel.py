"""Pure-numpy fallback for the batch LAD-LASSO vertex solver.

Vectorizes across subsets for each vertex plan; the per-vertex linear systems
are solved with an explicit batched Gaussian elimination so the singularity
threshold matches the compiled kernel.
"""

from __future__ import annotations

import numpy as np

from .plan import vertex_plan

PIVOT_EPS = 1e-10


def _batched_solve(A: np.ndarray, b: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Solve A[i] x = b[i] with partial pivoting; returns (x, singular mask)."""
    A = A.copy()
    b = b.copy()
    n, p, _ = A.shape
    singular = np.zeros(n, dtype=bool)
    rows = np.arange(n)
    for col in range(p):
        piv = np.argmax(np.abs(A[:, col:, col]), axis=1) + col
        swap = piv != col
        if swap.any():
            idx = rows[swap]
            A[idx, col], A[idx, piv[swap]] = A[idx, piv[swap]], A[idx, col].copy()
            b[idx, col], b[idx, piv[swap]] = b[idx, piv[swap]], b[idx, col].copy()
        pivot = A[:, col, col]
        singular |= np.abs(pivot) < PIVOT_EPS
        safe = np.where(singular, 1.0, pivot)
        if col + 1 < p:
            factor = A[:, col + 1 :, col] / safe[:, None]
            A[:, col + 1 :, col:] -= factor[:, :, None] * A[:, None, col, col:]
            b[:, col + 1 :] -= factor * b[:, col, None]
    x = np.zeros((n, p))
    for col in range(p - 1, -1, -1):
        acc = b[:, col] - np.einsum("nj,nj->n", A[:, col, col + 1 :], x[:, col + 1 :])
        x[:, col] = acc / np.where(singular, 1.0, A[:, col, col])
    return x, singular


def solve_batch(
    X: np.ndarray, y: np.ndarray, subsets: np.ndarray, lam: float
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Exactly minimize sum|resid| + lam*sum|slopes| for each point subset.

    X: (m, k) explanatory values; y: (m,); subsets: (n, s) row indices.
    Returns coeffs (n, k+1) as [intercept, slopes...], objective (n,), ok (n,).
    """
    subsets = np.asarray(subsets)
    n, s = subsets.shape
    k = X.shape[1]
    pts = X[subsets]  # (n, s, k)
    ys = y[subsets]  # (n, s)
    free_idx, free_count, point_idx = vertex_plan(k, s)

    best_obj = np.full(n, np.inf)
    best_coef = np.zeros((n, k + 1))
    ok = np.zeros(n, dtype=bool)
    for v in range(len(free_count)):
        nf = int(free_count[v])
        p = 1 + nf
        free = free_idx[v, :nf]
        sel = point_idx[v, :p]
        A = np.empty((n, p, p))
        A[:, :, 0] = 1.0
        for c, j in enumerate(free):
            A[:, :, c + 1] = pts[:, sel, j - 1]
        rhs = ys[:, sel]
        sol, singular = _batched_solve(A, rhs)
        coef = np.zeros((n, k + 1))
        coef[:, 0] = sol[:, 0]
        for c, j in enumerate(free):
            coef[:, j] = sol[:, c + 1]
        resid = ys - coef[:, :1] - np.einsum("nsk,nk->ns", pts, coef[:, 1:])
        obj = np.abs(resid).sum(axis=1) + lam * np.abs(coef[:, 1:]).sum(axis=1)
        obj[singular] = np.inf
        upd = obj < best_obj
        best_obj[upd] = obj[upd]
        best_coef[upd] = coef[upd]
        ok |= ~singular
    return best_coef, best_obj, ok
