# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled bounded-variable revised simplex kernels.

Entry points, statuses, tolerances, and pivot selection mirror _kernel_py;
refactorization still goes through numpy's LAPACK-backed inverse, while
pricing, ratio tests, and the rank-1 inverse updates run as C loops.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport INFINITY, fabs

cnp.import_array()

from .tolerances import (DEGEN_LIMIT, FEAS_TOL, INFEASIBLE, ITERATION_LIMIT,
                         NOT_FEASIBLE_START, NUMERICAL, OPT_TOL, OPTIMAL,
                         PIV_TOL, RATIO_TIE_TOL, REFACTOR_EVERY, SINGULAR)

BASIC, AT_LO, AT_HI = 0, 1, 2

cdef signed char C_BASIC = 0, C_AT_LO = 1, C_AT_HI = 2
cdef double C_FEAS = FEAS_TOL
cdef double C_OPT = OPT_TOL
cdef double C_PIV = PIV_TOL
cdef double C_TIE = RATIO_TIE_TOL
cdef int C_DEGEN = DEGEN_LIMIT
cdef int C_REFACTOR = REFACTOR_EVERY


from ._kernel_py import _refactorize as _py_refactorize


cdef object _refactor(double[:, ::1] A, long long[::1] basis):
    """Fresh inverse of the basis matrix, or None when singular/overflowing.

    Delegates to the reference implementation: the work is a block inverse
    plus a matrix product, all LAPACK/BLAS-bound, so there is nothing to
    gain from C loops and the subtle indexing stays in one place.
    """
    return _py_refactorize(np.asarray(A), np.asarray(basis))


cdef void _compute_xb(double[:, ::1] A, double[::1] b, long long[::1] basis,
                      signed char[::1] vstat, double[::1] lo, double[::1] hi,
                      double[:, ::1] Binv, double[::1] rhs, double[::1] xB):
    cdef Py_ssize_t m = A.shape[0], n = A.shape[1]
    cdef Py_ssize_t i, k
    cdef long long j
    cdef double s, xj
    for i in range(m):
        s = b[i]
        for j in range(n):
            if vstat[j] == C_AT_LO:
                xj = lo[j]
            elif vstat[j] == C_AT_HI:
                xj = hi[j]
            else:
                continue
            if xj != 0.0:
                s -= A[i, j] * xj
        rhs[i] = s
    for i in range(m):
        j = n + i
        if vstat[j] == C_AT_HI:
            rhs[i] -= hi[j]
        elif vstat[j] == C_AT_LO and lo[j] != 0.0:
            rhs[i] -= lo[j]
    for i in range(m):
        s = 0.0
        for k in range(m):
            s += Binv[i, k] * rhs[k]
        xB[i] = s


cdef void _reduced(double[:, ::1] A, double[::1] cfull, long long[::1] basis,
                   double[:, ::1] Binv, double[::1] y, double[::1] d):
    cdef Py_ssize_t m = A.shape[0], n = A.shape[1]
    cdef Py_ssize_t i, k
    cdef long long j
    cdef double s
    for k in range(m):
        s = 0.0
        for i in range(m):
            s += cfull[basis[i]] * Binv[i, k]
        y[k] = s
    for j in range(n):
        d[j] = cfull[j]
    for i in range(m):
        s = y[i]
        if s != 0.0:
            for j in range(n):
                d[j] -= s * A[i, j]
    for i in range(m):
        d[n + i] = -y[i]


cdef void _btran_col(double[:, ::1] A, double[:, ::1] Binv, Py_ssize_t q,
                     double[::1] alpha):
    """alpha = Binv @ (column q of [A | I])."""
    cdef Py_ssize_t m = A.shape[0], n = A.shape[1]
    cdef Py_ssize_t i, k
    cdef double s
    if q >= n:
        for i in range(m):
            alpha[i] = Binv[i, q - n]
        return
    for i in range(m):
        s = 0.0
        for k in range(m):
            s += Binv[i, k] * A[k, q]
        alpha[i] = s


cdef void _pivot_update(double[:, ::1] Binv, double[::1] alpha, Py_ssize_t r,
                        double[::1] prow):
    cdef Py_ssize_t m = Binv.shape[0]
    cdef Py_ssize_t i, k
    cdef double piv = alpha[r], ai
    for k in range(m):
        prow[k] = Binv[r, k] / piv
    for i in range(m):
        if i == r:
            continue
        ai = alpha[i]
        if ai != 0.0:
            for k in range(m):
                Binv[i, k] -= ai * prow[k]
    for k in range(m):
        Binv[r, k] = prow[k]


cdef object _assemble(signed char[::1] vstat, double[::1] lo, double[::1] hi,
                      long long[::1] basis, double[::1] xB):
    cdef Py_ssize_t nm = vstat.shape[0], m = basis.shape[0]
    cdef Py_ssize_t i
    cdef long long j
    x_arr = np.empty(nm)
    cdef double[::1] x = x_arr
    for i in range(nm):
        if vstat[i] == C_AT_HI:
            x[i] = hi[i]
        elif vstat[i] == C_AT_LO:
            x[i] = lo[i]
        else:
            x[i] = 0.0
    for i in range(m):
        x[basis[i]] = xB[i]
    return x_arr


def primal_solve(object A_in, object b_in, object cfull_in, object lo_in,
                 object hi_in, object basis_in, object vstat_in, int max_iter,
                 bint check_start=True, object Binv0=None):
    """Primal simplex from a primal feasible basis; updates basis/vstat in place."""
    A_arr = np.ascontiguousarray(A_in, dtype=np.float64)
    cdef double[:, ::1] A = A_arr
    cdef double[::1] b = np.ascontiguousarray(b_in, dtype=np.float64)
    cdef double[::1] cfull = np.ascontiguousarray(cfull_in, dtype=np.float64)
    cdef double[::1] lo = np.ascontiguousarray(lo_in, dtype=np.float64)
    cdef double[::1] hi = np.ascontiguousarray(hi_in, dtype=np.float64)
    cdef long long[::1] basis = basis_in
    cdef signed char[::1] vstat = vstat_in
    cdef Py_ssize_t m = A.shape[0], n = A.shape[1], nm = n + m
    cdef Py_ssize_t i, j, q, r, lv
    cdef int iters = 0, degen_run = 0, since_refactor = 0
    cdef int status = ITERATION_LIMIT
    cdef double s, den, tmin, tflip, best, xq_new, viol
    cdef bint bland

    Binv_arr = Binv0 if Binv0 is not None else _refactor(A, basis)
    if Binv_arr is None:
        return SINGULAR, 0, None, None
    Binv_arr = np.ascontiguousarray(Binv_arr)
    cdef double[:, ::1] Binv = Binv_arr

    cdef double[::1] rhs = np.empty(m)
    cdef double[::1] xB = np.empty(m)
    cdef double[::1] lob = np.empty(m)
    cdef double[::1] hib = np.empty(m)
    cdef double[::1] d = np.empty(nm)
    cdef double[::1] alpha = np.empty(m)
    cdef double[::1] t = np.empty(m)
    cdef double[::1] prow = np.empty(m)
    cdef double[::1] y = np.empty(m)

    _compute_xb(A, b, basis, vstat, lo, hi, Binv, rhs, xB)
    for i in range(m):
        lob[i] = lo[basis[i]]
        hib[i] = hi[basis[i]]
    if check_start:
        viol = 0.0
        for i in range(m):
            if lob[i] - xB[i] > viol:
                viol = lob[i] - xB[i]
            if xB[i] - hib[i] > viol:
                viol = xB[i] - hib[i]
        if viol > C_FEAS * 10:
            return NOT_FEASIBLE_START, 0, None, None

    while iters < max_iter:
        _reduced(A, cfull, basis, Binv, y, d)
        bland = degen_run >= C_DEGEN
        q = -1
        best = 0.0
        for j in range(nm):
            if hi[j] - lo[j] <= 0:
                continue
            if vstat[j] == C_AT_LO:
                if d[j] > C_OPT:
                    if bland:
                        q = j
                        break
                    if fabs(d[j]) > best:
                        best = fabs(d[j])
                        q = j
            elif vstat[j] == C_AT_HI:
                if d[j] < -C_OPT:
                    if bland:
                        q = j
                        break
                    if fabs(d[j]) > best:
                        best = fabs(d[j])
                        q = j
        if q < 0:
            status = OPTIMAL
            break
        _btran_col(A, Binv, q, alpha)
        s = 1.0 if vstat[q] == C_AT_LO else -1.0
        r = -1
        tmin = INFINITY
        for i in range(m):
            den = s * alpha[i]
            if den > C_PIV:
                t[i] = (xB[i] - lob[i]) / den
            elif den < -C_PIV:
                t[i] = (xB[i] - hib[i]) / den
            else:
                t[i] = INFINITY
            if t[i] < 0.0:
                t[i] = 0.0
            if t[i] < tmin:
                tmin = t[i]
                r = i
        if bland and tmin != INFINITY:
            lv = -1
            for i in range(m):
                if t[i] <= tmin + C_TIE and (lv < 0 or basis[i] < lv):
                    lv = basis[i]
                    r = i
            tmin = t[r]
        tflip = hi[q] - lo[q]
        if tflip < tmin - C_TIE:
            for i in range(m):
                xB[i] -= s * tflip * alpha[i]
            vstat[q] = C_AT_HI if vstat[q] == C_AT_LO else C_AT_LO
            degen_run = degen_run + 1 if tflip <= 1e-9 else 0
            iters += 1
            continue
        if tmin == INFINITY:
            status = NUMERICAL  # boxed problems cannot be truly unbounded
            break
        xq_new = (lo[q] if vstat[q] == C_AT_LO else hi[q]) + s * tmin
        for i in range(m):
            xB[i] -= s * tmin * alpha[i]
        lv = basis[r]
        vstat[lv] = C_AT_LO if s * alpha[r] > 0 else C_AT_HI
        basis[r] = q
        vstat[q] = C_BASIC
        _pivot_update(Binv, alpha, r, prow)
        xB[r] = xq_new
        lob[r] = lo[q]
        hib[r] = hi[q]
        degen_run = degen_run + 1 if tmin <= 1e-9 else 0
        iters += 1
        since_refactor += 1
        if since_refactor >= C_REFACTOR:
            since_refactor = 0
            Binv_arr = _refactor(A, basis)
            if Binv_arr is None:
                return NUMERICAL, iters, None, None
            Binv = Binv_arr
            _compute_xb(A, b, basis, vstat, lo, hi, Binv, rhs, xB)
            for i in range(m):
                lob[i] = lo[basis[i]]
                hib[i] = hi[basis[i]]
    if since_refactor:
        Binv_arr = _refactor(A, basis)
        if Binv_arr is None:
            return NUMERICAL, iters, None, None
        Binv = Binv_arr
    _compute_xb(A, b, basis, vstat, lo, hi, Binv, rhs, xB)
    return status, iters, _assemble(vstat, lo, hi, basis, xB), Binv_arr


def dual_solve(object A_in, object b_in, object cfull_in, object lo_in,
               object hi_in, object basis_in, object vstat_in, int max_iter,
               object Binv0=None):
    """Dual simplex from a dual feasible basis; updates basis/vstat in place.

    Reduced costs are kept incrementally and the leaving row is chosen by
    infeasibility scaled with the squared row norm of B^-1, exactly as in
    the reference kernel.
    """
    A_arr = np.ascontiguousarray(A_in, dtype=np.float64)
    cdef double[:, ::1] A = A_arr
    cdef double[::1] b = np.ascontiguousarray(b_in, dtype=np.float64)
    cdef double[::1] cfull = np.ascontiguousarray(cfull_in, dtype=np.float64)
    cdef double[::1] lo = np.ascontiguousarray(lo_in, dtype=np.float64)
    cdef double[::1] hi = np.ascontiguousarray(hi_in, dtype=np.float64)
    cdef long long[::1] basis = basis_in
    cdef signed char[::1] vstat = vstat_in
    cdef Py_ssize_t m = A.shape[0], n = A.shape[1], nm = n + m
    cdef Py_ssize_t i, k, nc, q, r, lv, bestrow
    cdef long long jj
    cdef int iters = 0, degen_run = 0, since_refactor = 0
    cdef int status = ITERATION_LIMIT
    cdef double v, s, piv, tmin, dxq, xq_new, delta, bound_r, norm2, sc, bestsc
    cdef bint bland, below

    Binv_arr = Binv0 if Binv0 is not None else _refactor(A, basis)
    if Binv_arr is None:
        return SINGULAR, 0, None, None
    Binv_arr = np.ascontiguousarray(Binv_arr)
    cdef double[:, ::1] Binv = Binv_arr

    cdef double[::1] rhs = np.empty(m)
    cdef double[::1] xB = np.empty(m)
    cdef double[::1] lob = np.empty(m)
    cdef double[::1] hib = np.empty(m)
    cdef double[::1] d = np.empty(nm)
    cdef double[::1] arow = np.empty(nm)
    cdef double[::1] alpha = np.empty(m)
    cdef double[::1] prow = np.empty(m)
    cdef double[::1] y = np.empty(m)
    cdef double[::1] theta = np.empty(nm)
    cdef long long[::1] cand = np.empty(nm, dtype=np.int64)

    _compute_xb(A, b, basis, vstat, lo, hi, Binv, rhs, xB)
    for i in range(m):
        lob[i] = lo[basis[i]]
        hib[i] = hi[basis[i]]
    _reduced(A, cfull, basis, Binv, y, d)

    while iters < max_iter:
        bland = degen_run >= C_DEGEN
        r = -1
        if bland:
            jj = -1
            for i in range(m):
                v = lob[i] - xB[i]
                if xB[i] - hib[i] > v:
                    v = xB[i] - hib[i]
                if v > C_FEAS and (jj < 0 or basis[i] < jj):
                    jj = basis[i]
                    r = i
        else:
            bestsc = -1.0
            for i in range(m):
                v = lob[i] - xB[i]
                if xB[i] - hib[i] > v:
                    v = xB[i] - hib[i]
                if v > C_FEAS:
                    norm2 = 0.0
                    for k in range(m):
                        norm2 += Binv[i, k] * Binv[i, k]
                    if norm2 < 1e-12:
                        norm2 = 1e-12
                    sc = v * v / norm2
                    if sc > bestsc:
                        bestsc = sc
                        r = i
        if r < 0:
            status = OPTIMAL
            break
        below = xB[r] < lob[r]
        delta = 1.0 if below else -1.0
        for k in range(nm):
            arow[k] = 0.0
        for k in range(m):
            v = Binv[r, k]
            if v != 0.0:
                for i in range(n):
                    arow[i] += v * A[k, i]
            arow[n + k] = v
        nc = 0
        for i in range(nm):
            if hi[i] - lo[i] <= 0:
                continue
            v = delta * arow[i]
            if (vstat[i] == C_AT_LO and v < -C_PIV) \
                    or (vstat[i] == C_AT_HI and v > C_PIV):
                theta[nc] = d[i] / v
                if theta[nc] < 0.0:
                    theta[nc] = 0.0
                cand[nc] = i
                nc += 1
        if nc == 0:
            status = INFEASIBLE
            break
        k = 0
        for i in range(1, nc):
            if theta[i] < theta[k]:
                k = i
        if bland:
            tmin = theta[k]
            for i in range(nc):
                if theta[i] <= tmin + C_TIE:
                    k = i
                    break
        tmin = theta[k]
        q = cand[k]
        _btran_col(A, Binv, q, alpha)
        piv = alpha[r]
        if fabs(piv) <= C_PIV:
            status = NUMERICAL
            break
        bound_r = lob[r] if below else hib[r]
        dxq = (xB[r] - bound_r) / piv
        xq_new = (lo[q] if vstat[q] == C_AT_LO else hi[q]) + dxq
        for i in range(m):
            xB[i] -= dxq * alpha[i]
        lv = basis[r]
        vstat[lv] = C_AT_LO if below else C_AT_HI
        basis[r] = q
        vstat[q] = C_BASIC
        _pivot_update(Binv, alpha, r, prow)
        xB[r] = xq_new
        lob[r] = lo[q]
        hib[r] = hi[q]
        for i in range(nm):
            d[i] -= tmin * delta * arow[i]
        d[q] = 0.0
        degen_run = degen_run + 1 if tmin <= 1e-9 else 0
        iters += 1
        since_refactor += 1
        if since_refactor >= C_REFACTOR:
            since_refactor = 0
            Binv_arr = _refactor(A, basis)
            if Binv_arr is None:
                return NUMERICAL, iters, None, None
            Binv = Binv_arr
            _compute_xb(A, b, basis, vstat, lo, hi, Binv, rhs, xB)
            for i in range(m):
                lob[i] = lo[basis[i]]
                hib[i] = hi[basis[i]]
            _reduced(A, cfull, basis, Binv, y, d)
    if since_refactor:
        Binv_arr = _refactor(A, basis)
        if Binv_arr is None:
            return NUMERICAL, iters, None, None
        Binv = Binv_arr
    _compute_xb(A, b, basis, vstat, lo, hi, Binv, rhs, xB)
    return status, iters, _assemble(vstat, lo, hi, basis, xB), Binv_arr
