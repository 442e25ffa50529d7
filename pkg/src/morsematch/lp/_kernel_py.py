"""Bounded-variable revised simplex kernels, numpy reference implementation.

Both kernels maximize c.x over A x <= b with box bounds, working on the
column space [structurals | slacks].  The basis is a row-position array of
column indices; ``vstat`` marks every column basic, at lower, or at upper
bound.  B^-1 is kept explicitly and updated rank-1 per pivot, with periodic
refactorization.  The compiled kernel in _kernel_cy mirrors this file.
"""

from __future__ import annotations

import numpy as np

from .tolerances import (DEGEN_LIMIT, FEAS_TOL, INFEASIBLE, ITERATION_LIMIT,
                         NOT_FEASIBLE_START, NUMERICAL, OPT_TOL, OPTIMAL,
                         PIV_TOL, RATIO_TIE_TOL, REFACTOR_EVERY, SINGULAR)

BASIC, AT_LO, AT_HI = 0, 1, 2


def _refactorize(A: np.ndarray, basis: np.ndarray) -> np.ndarray | None:
    """Fresh inverse of the basis matrix, or None when singular/overflowing.

    Only the structural block is actually inverted: slack basis columns are
    unit vectors, so with J the basic structural columns, R the rows not
    covered by a basic slack and S the covered ones, the inverse is
    [[A_RJ^-1, 0], [-A_SJ A_RJ^-1, I]] up to the row/position permutations.
    Cut-heavy models have far more rows than structurals, making this much
    cheaper than inverting the full m-by-m matrix.
    """
    m, n = A.shape
    struct_pos = np.flatnonzero(basis < n)
    slack_pos = np.flatnonzero(basis >= n)
    slack_rows = basis[slack_pos] - n
    if slack_rows.size and len(set(slack_rows.tolist())) != slack_rows.size:
        return None  # duplicated slack column: singular
    J = basis[struct_pos]
    covered = np.zeros(m, dtype=bool)
    covered[slack_rows] = True
    R = np.flatnonzero(~covered)
    try:
        Cinv = np.linalg.inv(A[np.ix_(R, J)])
    except np.linalg.LinAlgError:
        return None
    Binv = np.zeros((m, m))
    Binv[np.ix_(struct_pos, R)] = Cinv
    if slack_pos.size:
        Binv[np.ix_(slack_pos, R)] = -A[np.ix_(slack_rows, J)] @ Cinv
        Binv[slack_pos, slack_rows] = 1.0
    if not np.isfinite(Binv).all() or (np.abs(Binv).max(initial=0.0) > 1e14):
        return None
    return Binv


def _nonbasic_point(vstat: np.ndarray, lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
    x = np.where(vstat == AT_HI, hi, lo)
    x[vstat == BASIC] = 0.0
    return x


def _compute_xb(A, b, basis, vstat, lo, hi, Binv):
    n = A.shape[1]
    x = _nonbasic_point(vstat, lo, hi)
    rhs = b - A @ x[:n] - x[n:]
    return Binv @ rhs


def _reduced_costs(A, cfull, basis, Binv):
    n = A.shape[1]
    y = cfull[basis] @ Binv
    d = np.empty(cfull.shape[0])
    d[:n] = cfull[:n] - y @ A
    d[n:] = -y
    return d


def _column(A: np.ndarray, q: int) -> np.ndarray:
    m, n = A.shape
    if q < n:
        return A[:, q]
    e = np.zeros(m)
    e[q - n] = 1.0
    return e


def _assemble(A, basis, vstat, lo, hi, xB):
    x = _nonbasic_point(vstat, lo, hi)
    x[basis] = xB
    return x


def primal_solve(A, b, cfull, lo, hi, basis, vstat, max_iter, check_start=True,
                 Binv0=None):
    """Primal simplex from a primal feasible basis; updates basis/vstat in place.

    ``Binv0``, when given, must be the inverse basis matrix for ``basis`` as
    passed in; it saves the entry factorization.  Returns ``(status, iters,
    x, Binv)`` where ``Binv`` matches the final basis (or is None on
    singular/numerical failure), so callers can price without refactorizing.
    """
    m, n = A.shape
    Binv = Binv0 if Binv0 is not None else _refactorize(A, basis)
    if Binv is None:
        return SINGULAR, 0, None, None
    xB = _compute_xb(A, b, basis, vstat, lo, hi, Binv)
    lob, hib = lo[basis], hi[basis]
    if check_start:
        viol = np.maximum(lob - xB, xB - hib).max(initial=0.0)
        if viol > FEAS_TOL * 10:
            return NOT_FEASIBLE_START, 0, None, None
    free = hi - lo > 0
    iters = 0
    degen_run = 0
    since_refactor = 0
    status = ITERATION_LIMIT
    while iters < max_iter:
        d = _reduced_costs(A, cfull, basis, Binv)
        elig = (((vstat == AT_LO) & (d > OPT_TOL))
                | ((vstat == AT_HI) & (d < -OPT_TOL))) & free
        idx = np.flatnonzero(elig)
        if idx.size == 0:
            status = OPTIMAL
            break
        bland = degen_run >= DEGEN_LIMIT
        q = int(idx[0]) if bland else int(idx[np.argmax(np.abs(d[idx]))])
        alpha = Binv @ _column(A, q)
        s = 1.0 if vstat[q] == AT_LO else -1.0
        den = s * alpha
        t = np.full(m, np.inf)
        pos = den > PIV_TOL
        neg = den < -PIV_TOL
        t[pos] = (xB[pos] - lob[pos]) / den[pos]
        t[neg] = (xB[neg] - hib[neg]) / den[neg]
        np.maximum(t, 0.0, out=t)
        r = int(np.argmin(t)) if m else -1
        tmin = t[r] if m else np.inf
        if bland and np.isfinite(tmin):
            ties = np.flatnonzero(t <= tmin + RATIO_TIE_TOL)
            r = int(ties[np.argmin(basis[ties])])
            tmin = t[r]
        tflip = hi[q] - lo[q]
        if tflip < tmin - RATIO_TIE_TOL:
            xB -= s * tflip * alpha
            vstat[q] = AT_HI if vstat[q] == AT_LO else AT_LO
            degen_run = degen_run + 1 if tflip <= 1e-9 else 0
            iters += 1
            continue
        if not np.isfinite(tmin):
            status = NUMERICAL  # boxed problems cannot be truly unbounded
            break
        xq_new = (lo[q] if vstat[q] == AT_LO else hi[q]) + s * tmin
        xB -= s * tmin * alpha
        lv = int(basis[r])
        vstat[lv] = AT_LO if den[r] > 0 else AT_HI
        basis[r] = q
        vstat[q] = BASIC
        prow = Binv[r] / alpha[r]
        Binv -= np.outer(alpha, prow)
        Binv[r] = prow
        xB[r] = xq_new
        lob[r], hib[r] = lo[q], hi[q]
        degen_run = degen_run + 1 if tmin <= 1e-9 else 0
        iters += 1
        since_refactor += 1
        if since_refactor >= REFACTOR_EVERY:
            since_refactor = 0
            Binv = _refactorize(A, basis)
            if Binv is None:
                return NUMERICAL, iters, None, None
            xB = _compute_xb(A, b, basis, vstat, lo, hi, Binv)
            lob, hib = lo[basis], hi[basis]
    if since_refactor:
        Binv = _refactorize(A, basis)
        if Binv is None:
            return NUMERICAL, iters, None, None
    xB = _compute_xb(A, b, basis, vstat, lo, hi, Binv)
    return status, iters, _assemble(A, basis, vstat, lo, hi, xB), Binv


def dual_solve(A, b, cfull, lo, hi, basis, vstat, max_iter, Binv0=None):
    """Dual simplex from a dual feasible basis; updates basis/vstat in place.

    Reduced costs are kept incrementally (the pivot row is computed for the
    ratio test anyway) and refreshed at refactorizations.  The leaving row is
    chosen by infeasibility scaled with the squared row norm of B^-1, which
    behaves far better than plain most-infeasible on degenerate models.

    Accepts/returns an inverse basis matrix exactly like ``primal_solve``.
    """
    m, n = A.shape
    Binv = Binv0 if Binv0 is not None else _refactorize(A, basis)
    if Binv is None:
        return SINGULAR, 0, None, None
    xB = _compute_xb(A, b, basis, vstat, lo, hi, Binv)
    lob, hib = lo[basis], hi[basis]
    free = hi - lo > 0
    d = _reduced_costs(A, cfull, basis, Binv)
    iters = 0
    degen_run = 0
    since_refactor = 0
    status = ITERATION_LIMIT
    while iters < max_iter:
        viol = np.maximum(lob - xB, xB - hib)
        bland = degen_run >= DEGEN_LIMIT
        vrows = np.flatnonzero(viol > FEAS_TOL)
        if vrows.size == 0:
            status = OPTIMAL
            break
        if bland:
            r = int(vrows[np.argmin(basis[vrows])])
        else:
            rows = Binv[vrows]
            score = viol[vrows] ** 2 / np.maximum((rows * rows).sum(axis=1),
                                                  1e-12)
            r = int(vrows[np.argmax(score)])
        below = xB[r] < lob[r]
        delta = 1.0 if below else -1.0
        rho = Binv[r]
        arow = np.empty(n + m)
        arow[:n] = rho @ A
        arow[n:] = rho
        da = delta * arow
        cand_mask = ((((vstat == AT_LO) & (da < -PIV_TOL))
                      | ((vstat == AT_HI) & (da > PIV_TOL))) & free)
        cand = np.flatnonzero(cand_mask)
        if cand.size == 0:
            status = INFEASIBLE
            break
        theta = np.maximum(d[cand] / da[cand], 0.0)
        if bland:
            k = int(np.flatnonzero(theta <= theta.min() + RATIO_TIE_TOL)[0])
        else:
            k = int(np.argmin(theta))
        tmin = theta[k]
        q = int(cand[k])
        alpha = Binv @ _column(A, q)
        piv = alpha[r]
        if abs(piv) <= PIV_TOL:
            status = NUMERICAL
            break
        bound_r = lob[r] if below else hib[r]
        dxq = (xB[r] - bound_r) / piv
        xq_new = (lo[q] if vstat[q] == AT_LO else hi[q]) + dxq
        xB -= dxq * alpha
        lv = int(basis[r])
        vstat[lv] = AT_LO if below else AT_HI
        basis[r] = q
        vstat[q] = BASIC
        prow = Binv[r] / piv
        Binv -= np.outer(alpha, prow)
        Binv[r] = prow
        xB[r] = xq_new
        lob[r], hib[r] = lo[q], hi[q]
        d -= tmin * da
        d[q] = 0.0
        degen_run = degen_run + 1 if tmin <= 1e-9 else 0
        iters += 1
        since_refactor += 1
        if since_refactor >= REFACTOR_EVERY:
            since_refactor = 0
            Binv = _refactorize(A, basis)
            if Binv is None:
                return NUMERICAL, iters, None, None
            xB = _compute_xb(A, b, basis, vstat, lo, hi, Binv)
            lob, hib = lo[basis], hi[basis]
            d = _reduced_costs(A, cfull, basis, Binv)
    if since_refactor:
        Binv = _refactorize(A, basis)
        if Binv is None:
            return NUMERICAL, iters, None, None
    xB = _compute_xb(A, b, basis, vstat, lo, hi, Binv)
    return status, iters, _assemble(A, basis, vstat, lo, hi, xB), Binv
