# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled batch LAD-LASSO vertex solver.

Same contract as pykernel.solve_batch: for each point subset, enumerate every
interpolation vertex (in tie-break priority order) and keep the strict minimum
of sum|resid| + lam*sum|slopes|.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport INFINITY, fabs

DEF MAXP = 9  # k+1 for k <= 8

cdef double PIVOT_EPS = 1e-10


def solve_batch(double[:, ::1] X, double[::1] y, long long[:, ::1] subsets,
                double lam, int[:, ::1] free_idx, int[::1] free_count,
                int[:, ::1] point_idx):
    cdef Py_ssize_t n = subsets.shape[0]
    cdef Py_ssize_t s = subsets.shape[1]
    cdef Py_ssize_t k = X.shape[1]
    cdef Py_ssize_t nv = free_count.shape[0]

    coef_out = np.zeros((n, k + 1), dtype=np.float64)
    obj_out = np.full(n, np.inf, dtype=np.float64)
    ok_out = np.zeros(n, dtype=np.uint8)
    cdef double[:, ::1] coef = coef_out
    cdef double[::1] obj = obj_out
    cdef unsigned char[::1] ok = ok_out

    cdef double[MAXP][MAXP] A
    cdef double[MAXP] rhs
    cdef double[MAXP] sol
    cdef double[MAXP] cand  # full coefficient vector [b0, slopes...]
    cdef double px[MAXP * MAXP]  # subset points, row-major (s, k)
    cdef double py[MAXP]
    cdef Py_ssize_t i, v, p, nf, r, c, cc, piv, j
    cdef double best, pivval, factor, acc, pred, objv, tmp
    cdef bint singular

    for i in range(n):
        for r in range(s):
            j = subsets[i, r]
            for c in range(k):
                px[r * k + c] = X[j, c]
            py[r] = y[j]
        best = INFINITY
        for v in range(nv):
            nf = free_count[v]
            p = 1 + nf
            # build the p x p interpolation system
            for r in range(p):
                j = point_idx[v, r]
                A[r][0] = 1.0
                for c in range(nf):
                    A[r][c + 1] = px[j * k + (free_idx[v, c] - 1)]
                rhs[r] = py[j]
            # gaussian elimination, partial pivoting
            singular = 0
            for c in range(p):
                piv = c
                for r in range(c + 1, p):
                    if fabs(A[r][c]) > fabs(A[piv][c]):
                        piv = r
                if piv != c:
                    for cc in range(p):
                        tmp = A[c][cc]; A[c][cc] = A[piv][cc]; A[piv][cc] = tmp
                    tmp = rhs[c]; rhs[c] = rhs[piv]; rhs[piv] = tmp
                pivval = A[c][c]
                if fabs(pivval) < PIVOT_EPS:
                    singular = 1
                    break
                for r in range(c + 1, p):
                    factor = A[r][c] / pivval
                    for cc in range(c, p):
                        A[r][cc] -= factor * A[c][cc]
                    rhs[r] -= factor * rhs[c]
            if singular:
                continue
            for c in range(p - 1, -1, -1):
                acc = rhs[c]
                for cc in range(c + 1, p):
                    acc -= A[c][cc] * sol[cc]
                sol[c] = acc / A[c][c]
            for c in range(k + 1):
                cand[c] = 0.0
            cand[0] = sol[0]
            for c in range(nf):
                cand[free_idx[v, c]] = sol[c + 1]
            # objective over the whole subset
            objv = 0.0
            for r in range(s):
                pred = cand[0]
                for c in range(k):
                    pred += cand[c + 1] * px[r * k + c]
                objv += fabs(py[r] - pred)
            for c in range(k):
                objv += lam * fabs(cand[c + 1])
            if objv < best:
                best = objv
                for c in range(k + 1):
                    coef[i, c] = cand[c]
                ok[i] = 1
        obj[i] = best
    return coef_out, obj_out, ok_out.view(bool)
