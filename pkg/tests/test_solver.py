"""Branch-and-cut end-to-end behavior on small instances."""

import random

import numpy as np
import pytest

from conftest import record_matching
from morsematch import (DisconnectedComplexError, SolverConfig, SolveStatus,
                        best_betti_bounds, build_complex, critical_report,
                        dunce_hat, hasse_diagram, prove_bound, solve)
from oracles import enumerate_morse_matchings

KNOWN_OPTIMA = {
    "segment": 1,
    "triangle": 1,
    "full2": 1,
    "full3": 1,
    "circle": 2,
    "sphere2": 2,
    "sphere3": 2,
    "rp2": 3,
}


@pytest.mark.parametrize("name", sorted(KNOWN_OPTIMA))
def test_small_instances_solved_to_optimality(name, zoo):
    cx = zoo[name]
    res = solve(cx, SolverConfig())
    assert res.status is SolveStatus.OPTIMAL
    record_matching(res.matching)
    assert res.critical_total == KNOWN_OPTIMA[name]
    assert res.report.total == cx.num_faces - 2 * res.matching.size
    assert res.objective == pytest.approx(res.matching.size)
    assert res.dual_bound >= res.objective - 1e-6
    assert res.betti_bound == best_betti_bounds(cx)
    assert res.stats.nodes >= 1
    assert res.stats.lp_solves >= 1
    assert res.stats.time >= 0.0


def test_separation_off_reaches_same_optimum(zoo):
    for name in ("circle", "rp2"):
        cx = zoo[name]
        res = solve(cx, SolverConfig.no_separation())
        assert res.status is SolveStatus.OPTIMAL
        record_matching(res.matching)
        assert res.critical_total == KNOWN_OPTIMA[name]


def test_gomory_cuts_reach_same_optimum(zoo):
    res = solve(zoo["rp2"], SolverConfig(use_gomory=True))
    assert res.status is SolveStatus.OPTIMAL
    record_matching(res.matching)
    assert res.critical_total == 3


def test_most_fractional_branching_reaches_same_optimum(zoo):
    for name in ("circle", "rp2"):
        res = solve(zoo[name], SolverConfig(branching="most_fractional"))
        assert res.status is SolveStatus.OPTIMAL
        record_matching(res.matching)
        assert res.critical_total == KNOWN_OPTIMA[name]


def test_weighted_matching_against_enumeration(zoo):
    rng = random.Random(401)
    cx = zoo["full2"]
    h = hasse_diagram(cx)
    for _ in range(3):
        w = [round(rng.uniform(0, 3), 3) for _ in range(h.num_arcs)]
        res = solve(cx, SolverConfig(weights=w))
        assert res.status is SolveStatus.OPTIMAL
        record_matching(res.matching)
        best = max(sum(w[a] for a in m.arcs)
                   for m in enumerate_morse_matchings(h))
        assert res.objective == pytest.approx(best, abs=1e-6)


def test_weight_validation(zoo):
    h = hasse_diagram(zoo["triangle"])
    with pytest.raises(ValueError):
        solve(zoo["triangle"], SolverConfig(weights=[1.0] * (h.num_arcs + 1)))
    with pytest.raises(ValueError):
        solve(zoo["triangle"], SolverConfig(weights=[-1.0] * h.num_arcs))


def test_disconnected_requires_split_flag():
    cx = build_complex([(1, 2, 3), (4, 5)])
    with pytest.raises(DisconnectedComplexError):
        solve(cx, SolverConfig())
    res = solve(cx, SolverConfig(split_components=True))
    assert res.status is SolveStatus.OPTIMAL
    record_matching(res.matching)
    # one critical vertex per component, nothing else on these two
    assert res.report.counts[0] == 2
    assert res.critical_total == 2


def test_split_components_matches_whole_solve(zoo):
    cx = build_complex([(1, 2, 3), (2, 3, 4), (10, 11), (11, 12), (10, 12)])
    res = solve(cx, SolverConfig(split_components=True))
    assert res.status is SolveStatus.OPTIMAL
    record_matching(res.matching)
    # disk component collapses to a point; triangle-cycle component needs 2
    assert res.critical_total == 1 + 2


def test_time_limit_returns_heuristic_incumbent():
    res = solve(dunce_hat(), SolverConfig(time_limit=0.0))
    assert res.status is SolveStatus.TIME_LIMIT
    record_matching(res.matching)
    assert res.matching.size >= 1
    assert res.dual_bound >= res.objective


def test_node_limit_status():
    res = solve(dunce_hat(), SolverConfig(node_limit=3))
    assert res.status is SolveStatus.NODE_LIMIT
    record_matching(res.matching)
    assert res.stats.nodes <= 3
    assert res.dual_bound >= res.objective


def test_prove_bound_matches_best_betti(zoo):
    assert prove_bound(zoo["rp2"]) == 3
    assert prove_bound(zoo["sphere2"]) == 2
    assert prove_bound(zoo["dunce"]) == 1


def test_solver_is_deterministic(zoo):
    a = solve(zoo["rp2"], SolverConfig())
    b = solve(zoo["rp2"], SolverConfig())
    assert a.objective == b.objective
    assert a.matching.arcs == b.matching.arcs
    assert a.stats.nodes == b.stats.nodes
    assert a.stats.lp_iterations == b.stats.lp_iterations


def test_debug_dir_writes_model_snapshots(tmp_path, zoo):
    out = tmp_path / "snaps"
    res = solve(zoo["circle"], SolverConfig(debug_dir=str(out)))
    assert res.status is SolveStatus.OPTIMAL
    files = list(out.iterdir())
    assert files, "debug dir should receive at least one snapshot"


def test_resolved_vertex_counts_always_canonical(zoo):
    # unit-weight solves canonicalize: exactly one critical vertex
    for name in ("triangle", "circle", "rp2"):
        res = solve(zoo[name], SolverConfig())
        assert res.report.counts[0] == 1
