"""The embedded simplex engine against scipy, on both kernels."""

import random
from itertools import product

import numpy as np
import pytest

from morsematch.lp import (LinearProgram, LpRow, LpStatus, gomory_cuts,
                           kernel_name, solve, write_lp_text)
from morsematch.lp.backend import get_kernel
from oracles import scipy_lp

try:
    get_kernel("cython")
    _HAVE_CYTHON = True
except ImportError:
    _HAVE_CYTHON = False

BACKENDS = ["python",
            pytest.param("cython",
                         marks=pytest.mark.skipif(not _HAVE_CYTHON,
                                                  reason="no compiled kernel"))]

OBJ_TOL = 1e-7


def _random_lp(rng: random.Random) -> LinearProgram:
    n = rng.randint(2, 8)
    m = rng.randint(0, 10)
    c = [rng.uniform(-2, 2) for _ in range(n)]
    lp = LinearProgram(n, c)
    for j in range(n):
        lo = rng.uniform(0, 0.6)
        hi = min(1.0, lo + rng.uniform(0, 0.4))
        if rng.random() < 0.15:
            hi = lo  # fixed variable
        lp.set_bounds(j, lo, hi)
    x0 = [rng.uniform(lp.lower[j], lp.upper[j]) for j in range(n)]
    rows = []
    for _ in range(m):
        cols = tuple(sorted(rng.sample(range(n), rng.randint(1, min(4, n)))))
        coefs = tuple(float(rng.choice([-2, -1, 1, 2])) for _ in cols)
        act = sum(v * x0[j] for j, v in zip(cols, coefs))
        rhs = act + (rng.uniform(-0.6, 0.1) if rng.random() < 0.12
                     else rng.uniform(0.0, 1.2))
        rows.append(LpRow(cols, coefs, rhs))
    lp.add_rows(rows)
    return lp


@pytest.mark.parametrize("backend", BACKENDS)
def test_random_lps_match_scipy(backend):
    rng = random.Random(42)
    statuses = {"optimal": 0, "infeasible": 0}
    for k in range(120):
        lp = _random_lp(rng)
        sol = solve(lp, backend=backend)
        ref_status, ref_obj = scipy_lp(*lp.as_arrays())
        assert sol.status.value == ref_status, f"case {k}"
        statuses[ref_status] += 1
        if ref_status == "optimal":
            assert sol.objective == pytest.approx(ref_obj, abs=OBJ_TOL), \
                f"case {k}"
            A, b, _, lo, hi = lp.as_arrays()
            assert np.all(sol.x >= lo - 1e-9) and np.all(sol.x <= hi + 1e-9)
            if len(b):
                assert np.all(A @ sol.x <= b + 1e-7)
    # the battery must exercise both outcomes to mean anything
    assert statuses["optimal"] >= 50 and statuses["infeasible"] >= 5


@pytest.mark.parametrize("backend", BACKENDS)
def test_warm_restart_after_bound_change(backend):
    rng = random.Random(43)
    for k in range(40):
        lp = _random_lp(rng)
        sol = solve(lp, backend=backend)
        if sol.status is not LpStatus.OPTIMAL:
            continue
        j = rng.randrange(lp.num_vars)
        lp.set_bounds(j, lp.lower[j], lp.lower[j])
        warm = solve(lp, warm=sol.basis, warm_binv=sol.binv, backend=backend)
        cold = solve(lp, backend=backend)
        assert warm.status == cold.status
        if cold.status is LpStatus.OPTIMAL:
            assert warm.objective == pytest.approx(cold.objective, abs=OBJ_TOL)
            ref_status, ref_obj = scipy_lp(*lp.as_arrays())
            assert ref_status == "optimal"
            assert warm.objective == pytest.approx(ref_obj, abs=OBJ_TOL)


@pytest.mark.parametrize("backend", BACKENDS)
def test_warm_restart_after_added_row(backend):
    rng = random.Random(44)
    for _ in range(30):
        lp = _random_lp(rng)
        sol = solve(lp, backend=backend)
        if sol.status is not LpStatus.OPTIMAL:
            continue
        cols = tuple(range(lp.num_vars))
        cut = LpRow(cols, (1.0,) * len(cols),
                    float(sum(sol.x)) - rng.uniform(0.05, 0.3))
        lp.add_rows([cut])
        warm = solve(lp, warm=sol.basis, backend=backend)
        ref_status, ref_obj = scipy_lp(*lp.as_arrays())
        assert warm.status.value == ref_status
        if ref_status == "optimal":
            assert warm.objective == pytest.approx(ref_obj, abs=OBJ_TOL)


def test_no_rows_solves_by_inspection():
    lp = LinearProgram(3, [1.0, -1.0, 0.0])
    lp.set_bounds(0, 0.2, 0.9)
    sol = solve(lp)
    assert sol.status is LpStatus.OPTIMAL
    assert sol.x[0] == pytest.approx(0.9)
    assert sol.x[1] == pytest.approx(0.0)


def test_infeasible_row_within_bounds():
    lp = LinearProgram(2, [1.0, 1.0])
    lp.add_rows([LpRow((0, 1), (1.0, 1.0), -0.5)])
    assert solve(lp).status is LpStatus.INFEASIBLE


def test_iteration_limit_status():
    rng = random.Random(45)
    lp = _random_lp(rng)
    while lp.num_rows == 0:
        lp = _random_lp(rng)
    sol = solve(lp, max_iter=1)
    assert sol.status in (LpStatus.ITERATION_LIMIT, LpStatus.OPTIMAL,
                          LpStatus.INFEASIBLE)


def test_row_validation():
    with pytest.raises(ValueError):
        LpRow((0, 0), (1.0, 1.0), 1.0)
    with pytest.raises(ValueError):
        LpRow((0,), (1.0, 2.0), 1.0)
    with pytest.raises(ValueError):
        LpRow((0,), (float("nan"),), 1.0)
    lp = LinearProgram(2)
    with pytest.raises(ValueError):
        lp.add_rows([LpRow((5,), (1.0,), 1.0)])
    with pytest.raises(ValueError):
        lp.set_bounds(0, 0.5, 0.2)


def test_degenerate_lp_terminates():
    # many tight rows through one vertex; exercises the Bland fallback path
    lp = LinearProgram(4, [1.0, 1.0, 1.0, 1.0])
    rows = []
    for cols in product(range(4), repeat=2):
        if cols[0] < cols[1]:
            rows.append(LpRow(cols, (1.0, 1.0), 0.0))
    rows.append(LpRow((0, 1, 2, 3), (1.0,) * 4, 0.0))
    lp.add_rows(rows)
    sol = solve(lp)
    assert sol.status is LpStatus.OPTIMAL
    assert sol.objective == pytest.approx(0.0, abs=1e-9)


def test_gomory_cuts_keep_integer_points():
    rng = random.Random(46)
    produced = 0
    for _ in range(60):
        n = rng.randint(2, 5)
        lp = LinearProgram(n, [rng.uniform(0.2, 2) for _ in range(n)])
        for _ in range(rng.randint(1, 5)):
            cols = tuple(sorted(rng.sample(range(n),
                                           rng.randint(1, min(3, n)))))
            coefs = tuple(float(rng.choice([1, 1, 2])) for _ in cols)
            lp.add_rows([LpRow(cols, coefs, float(rng.randint(1, 3)))])
        sol = solve(lp)
        if sol.status is not LpStatus.OPTIMAL:
            continue
        cuts = gomory_cuts(lp, sol)
        produced += len(cuts)
        feas = [pt for pt in product((0, 1), repeat=n)
                if all(r.activity(np.array(pt, float)) <= r.rhs + 1e-9
                       for r in lp.rows)]
        for cut in cuts:
            assert cut.activity(sol.x) > cut.rhs + 1e-6
            for pt in feas:
                assert cut.activity(np.array(pt, float)) <= cut.rhs + 1e-7
    assert produced >= 1


def test_write_lp_text_smoke(tmp_path):
    lp = LinearProgram(2, [1.0, -1.5])
    lp.add_rows([LpRow((0, 1), (2.0, -1.0), 0.5)])
    lp.set_bounds(1, 0.25, 0.75)
    path = tmp_path / "model.lp"
    with open(path, "w") as fh:
        write_lp_text(lp, fh)
    text = path.read_text()
    assert "Maximize" in text and "Subject To" in text and "Bounds" in text


def test_kernel_name_is_known():
    assert kernel_name in ("python", "cython")
