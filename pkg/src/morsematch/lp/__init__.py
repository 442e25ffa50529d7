"""Self-contained LP layer: <= rows over [0,1]-boxed variables, maximization.

Rows are held sparsely and densified per solve.  Warm starts reuse a parent
basis after row additions or bound changes: appended rows enter with their
slacks basic, which keeps the old reduced costs and hence dual feasibility,
so the dual kernel restores primal feasibility cheaply.  A final reduced-cost
check falls back to the primal kernel if anything is left to improve.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence, TextIO

import numpy as np

from . import tolerances as tol
from ._kernel_py import (AT_HI, AT_LO, BASIC, _compute_xb, _reduced_costs,
                         _refactorize)
from .backend import get_kernel, kernel_name

__all__ = [
    "LpStatus",
    "LpRow",
    "LinearProgram",
    "SimplexBasis",
    "LpSolution",
    "solve",
    "gomory_cuts",
    "write_lp_text",
    "kernel_name",
]


class LpStatus(Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    ITERATION_LIMIT = "iteration_limit"


@dataclass(frozen=True)
class LpRow:
    """A sparse <= constraint: sum coefs[k] * x[cols[k]] <= rhs."""

    cols: tuple[int, ...]
    coefs: tuple[float, ...]
    rhs: float

    def __post_init__(self):
        if len(self.cols) != len(self.coefs):
            raise ValueError("cols and coefs must have equal length")
        if len(set(self.cols)) != len(self.cols):
            raise ValueError("row repeats a column")
        if not all(math.isfinite(v) for v in self.coefs) or not math.isfinite(self.rhs):
            raise ValueError("row entries must be finite")

    def activity(self, x: np.ndarray) -> float:
        return float(sum(v * x[j] for j, v in zip(self.cols, self.coefs)))


@dataclass
class SimplexBasis:
    """Snapshot of a simplex basis: row-wise basic columns plus all statuses."""

    basis: np.ndarray  # int64, one basic column per row
    vstat: np.ndarray  # int8 over [structurals | slacks]

    @property
    def num_rows(self) -> int:
        return int(self.basis.shape[0])

    def num_vars(self) -> int:
        return int(self.vstat.shape[0] - self.basis.shape[0])

    def copy(self) -> "SimplexBasis":
        return SimplexBasis(self.basis.copy(), self.vstat.copy())


@dataclass(frozen=True)
class LpSolution:
    status: LpStatus
    objective: float | None
    x: np.ndarray | None  # structural values
    basis: SimplexBasis | None
    iterations: int
    redcosts: np.ndarray | None = None  # structural reduced costs at optimum
    duals: np.ndarray | None = None  # row multipliers at optimum
    binv: np.ndarray | None = None  # inverse basis matrix, for warm re-solves


class LinearProgram:
    """Maximize c.x subject to sparse <= rows and bounds 0 <= lo <= hi <= 1."""

    def __init__(self, num_vars: int, objective: Sequence[float] | None = None):
        if num_vars < 0:
            raise ValueError("num_vars must be nonnegative")
        self.num_vars = num_vars
        if objective is None:
            self.objective = np.zeros(num_vars)
        else:
            self.objective = np.asarray(objective, dtype=float).copy()
            if self.objective.shape != (num_vars,):
                raise ValueError("objective length must equal num_vars")
        self.lower = np.zeros(num_vars)
        self.upper = np.ones(num_vars)
        self.rows: list[LpRow] = []

    @property
    def num_rows(self) -> int:
        return len(self.rows)

    def add_rows(self, rows: Iterable[LpRow]) -> None:
        new = list(rows)
        for row in new:
            if row.cols and (min(row.cols) < 0 or max(row.cols) >= self.num_vars):
                raise ValueError(f"row column out of range: {row.cols}")
        self.rows.extend(new)

    def set_bounds(self, j: int, lo: float, hi: float) -> None:
        if not 0 <= j < self.num_vars:
            raise IndexError(f"variable {j} out of range")
        if not (0.0 <= lo <= hi <= 1.0):
            raise ValueError(f"bounds must satisfy 0 <= lo <= hi <= 1: {lo}, {hi}")
        self.lower[j] = lo
        self.upper[j] = hi

    def fix_variable(self, j: int, value: float) -> None:
        self.set_bounds(j, value, value)

    def copy(self) -> "LinearProgram":
        out = LinearProgram(self.num_vars, self.objective)
        out.lower = self.lower.copy()
        out.upper = self.upper.copy()
        out.rows = list(self.rows)
        return out

    def as_arrays(self):
        m, n = len(self.rows), self.num_vars
        cached = getattr(self, "_dense", None)
        if cached is not None and cached[0].shape == (m, n):
            # prebuilt (A, b) for exactly these rows; treated as read-only
            A, b = cached
        else:
            A = np.zeros((m, n))
            b = np.empty(m)
            for i, row in enumerate(self.rows):
                for j, v in zip(row.cols, row.coefs):
                    A[i, j] = v
                b[i] = row.rhs
        return A, b, self.objective.copy(), self.lower.copy(), self.upper.copy()


def _extend_warm(warm: SimplexBasis, n: int, m: int):
    old_m = warm.num_rows
    basis = np.concatenate([warm.basis,
                            n + np.arange(old_m, m, dtype=np.int64)])
    vstat = np.concatenate([warm.vstat,
                            np.full(m - old_m, BASIC, dtype=np.int8)])
    return basis.astype(np.int64), vstat.astype(np.int8)


def _validated(A, b, lofull, hifull, x, feas_tol) -> bool:
    if x is None or not np.isfinite(x).all():
        return False
    if (x < lofull - feas_tol).any() or (x > hifull + feas_tol).any():
        return False
    if A.shape[0] and (A @ x[:A.shape[1]] > b + max(1e-6, feas_tol * 10)).any():
        return False
    return True


def _improvable(d, lofull, hifull, vstat) -> bool:
    free = hifull - lofull > 0
    elig = (((vstat == AT_LO) & (d > tol.OPT_TOL))
            | ((vstat == AT_HI) & (d < -tol.OPT_TOL))) & free
    return bool(elig.any())


def solve(lp: LinearProgram, warm: SimplexBasis | None = None,
          max_iter: int = 50000, backend: str | None = None,
          warm_binv: np.ndarray | None = None) -> LpSolution:
    """Solve the LP, warm-starting from a parent basis when given.

    ``warm_binv`` may carry the inverse basis matrix that belongs to ``warm``
    (e.g. a previous LpSolution.binv).  It is only used when the row count
    still matches, which is exactly the bounds-only re-solve case, and spares
    the entry refactorization; it is copied, never mutated.
    """
    kmod, _ = get_kernel(backend)
    A, b, c, lo, hi = lp.as_arrays()
    m, n = A.shape
    if m == 0:
        x = np.where(c > tol.OPT_TOL, hi, lo)
        sb = SimplexBasis(np.empty(0, dtype=np.int64),
                          np.where(c > tol.OPT_TOL, AT_HI, AT_LO).astype(np.int8))
        return LpSolution(LpStatus.OPTIMAL, float(c @ x), x, sb, 0,
                          redcosts=c.copy(), duals=np.empty(0))

    cfull = np.concatenate([c, np.zeros(m)])
    lofull = np.concatenate([lo, np.zeros(m)])
    hifull = np.concatenate([hi, np.full(m, np.inf)])
    total_iters = 0

    attempts = []
    if warm is not None and warm.num_vars() == n and warm.num_rows <= m:
        attempts.append("warm")
    attempts.append("cold")

    for attempt in attempts:
        binv0 = None
        if attempt == "warm":
            basis, vstat = _extend_warm(warm, n, m)
            start_dual = True
            if (warm_binv is not None and warm.num_rows == m
                    and warm_binv.shape == (m, m)):
                binv0 = np.array(warm_binv)  # kernels update it in place
        else:
            basis = n + np.arange(m, dtype=np.int64)
            vstat = np.empty(n + m, dtype=np.int8)
            vstat[n:] = BASIC
            xb0 = b - A @ lo
            if (xb0 >= -tol.FEAS_TOL).all():
                vstat[:n] = AT_LO
                start_dual = False
            else:
                # make the slack basis dual feasible via the objective sign
                vstat[:n] = np.where(c > 0, AT_HI, AT_LO)
                start_dual = True

        d = None
        if start_dual:
            status, iters, x, Binv = kmod.dual_solve(
                A, b, cfull, lofull, hifull, basis, vstat, max_iter,
                Binv0=binv0)
            total_iters += iters
            if status == tol.OPTIMAL:
                # bound tightenings can leave profitable nonbasics behind;
                # price on the kernel's own factorization to find out
                d = _reduced_costs(A, cfull, basis, Binv)
                if _improvable(d, lofull, hifull, vstat):
                    status, iters, x, Binv = kmod.primal_solve(
                        A, b, cfull, lofull, hifull, basis, vstat,
                        max_iter, check_start=False, Binv0=Binv)
                    total_iters += iters
                    d = None
        else:
            status, iters, x, Binv = kmod.primal_solve(
                A, b, cfull, lofull, hifull, basis, vstat, max_iter)
            total_iters += iters
            if status == tol.NOT_FEASIBLE_START:
                continue

        if status == tol.OPTIMAL:
            if not _validated(A, b, lofull, hifull, x, tol.FEAS_TOL):
                continue  # numerical trouble; retry cold or give up
            xs = x[:n].copy()
            redcosts = duals = None
            if Binv is not None:
                if d is None:
                    d = _reduced_costs(A, cfull, basis, Binv)
                redcosts, duals = d[:n].copy(), -d[n:].copy()
            return LpSolution(LpStatus.OPTIMAL, float(c @ xs), xs,
                              SimplexBasis(basis.copy(), vstat.copy()),
                              total_iters, redcosts=redcosts, duals=duals,
                              binv=Binv)
        if status == tol.INFEASIBLE:
            return LpSolution(LpStatus.INFEASIBLE, None, None, None, total_iters)
        # SINGULAR / NUMERICAL / ITERATION_LIMIT: try the next start

    return LpSolution(LpStatus.ITERATION_LIMIT, None, None, None, total_iters)


def _frac(a: float) -> float:
    f = a - math.floor(a)
    if f < 1e-9 or f > 1 - 1e-9:
        return 0.0
    return f


def gomory_cuts(lp: LinearProgram, sol: LpSolution,
                max_cuts: int = 10, int_tol: float = 1e-6) -> list[LpRow]:
    """Fractional rounding cuts from basic rows with fractional value.

    Valid for models whose rows all have integer coefficients and right-hand
    sides, which makes every slack integral at integral points; nonbasics at
    the upper bound are shifted before rounding.  Only cuts violated by the
    given point by more than 1e-6 are returned, most violated first.
    """
    if sol.status is not LpStatus.OPTIMAL or sol.basis is None:
        return []
    A, b, c, lo, hi = lp.as_arrays()
    m, n = A.shape
    if m == 0:
        return []
    basis, vstat = sol.basis.basis, sol.basis.vstat
    lofull = np.concatenate([lo, np.zeros(m)])
    hifull = np.concatenate([hi, np.full(m, np.inf)])
    Binv = _refactorize(A, basis)
    if Binv is None:
        return []
    xB = _compute_xb(A, b, basis, vstat, lofull, hifull, Binv)
    found: list[tuple[float, LpRow]] = []
    for i in range(m):
        f0 = xB[i] - math.floor(xB[i])
        if f0 < int_tol or f0 > 1 - int_tol:
            continue
        arow_struct = Binv[i] @ A
        arow_slack = Binv[i]
        coefs = np.zeros(n)
        rhs = -f0
        skip = False
        for j in range(n):
            if vstat[j] == BASIC:
                continue
            side_hi = vstat[j] == AT_HI
            fj = _frac(-arow_struct[j] if side_hi else arow_struct[j])
            if fj == 0.0:
                continue
            # cut is sum fj * xt_j >= f0 with xt the bound-shifted variable
            if side_hi:
                coefs[j] += fj
                rhs += fj * hi[j]
            else:
                coefs[j] -= fj
                rhs -= fj * lo[j]
        for r in range(m):
            if vstat[n + r] == BASIC:
                continue
            if vstat[n + r] == AT_HI:
                skip = True  # slack at an infinite bound cannot happen
                break
            fs = _frac(arow_slack[r])
            if fs == 0.0:
                continue
            # slack_r = b_r - A_r x, nonbasic at zero
            coefs += fs * A[r]
            rhs += fs * b[r]
        if skip:
            continue
        cols = tuple(int(j) for j in np.flatnonzero(np.abs(coefs) > 1e-12))
        if not cols:
            continue
        row = LpRow(cols, tuple(float(coefs[j]) for j in cols), float(rhs))
        violation = row.activity(sol.x) - row.rhs
        if violation > 1e-6:
            found.append((violation, row))
    found.sort(key=lambda t: -t[0])
    return [row for _, row in found[:max_cuts]]


def write_lp_text(lp: LinearProgram, out: TextIO) -> None:
    """Dump the model in LP text format (maximize, <= rows, bounds)."""

    def term(j: int, v: float, first: bool) -> str:
        sign = "- " if v < 0 else ("" if first else "+ ")
        mag = abs(v)
        coef = "" if mag == 1 else f"{mag:g} "
        return f"{sign}{coef}x{j}"

    out.write("Maximize\n obj: ")
    terms = [term(j, v, k == 0)
             for k, (j, v) in enumerate(
                 (j, v) for j, v in enumerate(lp.objective) if v != 0)]
    out.write(" ".join(terms) if terms else "0 x0")
    out.write("\nSubject To\n")
    for i, row in enumerate(lp.rows):
        body = " ".join(term(j, v, k == 0)
                        for k, (j, v) in enumerate(zip(row.cols, row.coefs)))
        out.write(f" r{i}: {body if body else '0 x0'} <= {row.rhs:g}\n")
    out.write("Bounds\n")
    for j in range(lp.num_vars):
        lo, hi = lp.lower[j], lp.upper[j]
        if lo == hi:
            out.write(f" x{j} = {lo:g}\n")
        else:
            out.write(f" {lo:g} <= x{j} <= {hi:g}\n")
    out.write("End\n")
