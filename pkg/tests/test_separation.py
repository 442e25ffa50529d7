"""Cycle-inequality separation against exhaustive enumeration."""

import random

import numpy as np
import pytest

from morsematch import (brute_force_separation, build_complex,
                        conservative_weight_audit, hasse_diagram, level,
                        separate_level, simplex_boundary)
from morsematch.separation import (CycleCut, DegenerateCycleError,
                                   TransformedGraph, recover_cycle,
                                   transformed_graph)
from oracles import random_complex


def _levels(rng, tries, max_faces=30):
    """Random (level graph, hasse) pairs with at most max_faces faces."""
    out = []
    while len(out) < tries:
        cx = build_complex(random_complex(rng, max_vertices=6, density=0.8))
        h = hasse_diagram(cx)
        for i in range(cx.dim):
            lg = level(h, i)
            if lg.edges and len(lg.lower) + len(lg.upper) <= max_faces:
                out.append((lg, h))
    return out[:tries]


def _feasible_point(lg, h, rng):
    """Random x in [0,1]^arcs scaled to satisfy the matching inequalities."""
    x = np.zeros(h.num_arcs)
    for arc, _, _ in lg.edges:
        x[arc] = rng.random()
    worst = 1.0
    for adj in (lg.adj_upper, lg.adj_lower):
        for f, inc in adj.items():
            worst = max(worst, sum(x[a] for a, _ in inc))
    x /= worst
    return x


def _independent_violation(lg, cut: CycleCut, x) -> float:
    assert all(any(a == arc for arc, _, _ in lg.edges) for a in cut.arcs)
    return float(sum(x[a] for a in cut.arcs)) - cut.rhs


def test_cut_shape_validation():
    with pytest.raises(ValueError):
        CycleCut(0, (1, 2, 3, 4), 1, 0.1)  # too short
    with pytest.raises(ValueError):
        CycleCut(0, (1, 2, 3, 4, 5, 6, 7), 2, 0.1)  # odd
    with pytest.raises(ValueError):
        CycleCut(0, (1, 2, 3, 1, 5, 6), 2, 0.1)  # repeated arc


def test_triangle_half_point_is_separated():
    # x = 1/2 on every level-0 arc of the triangle boundary: the 6-cycle
    # inequality x(C) <= 2 is violated by 1
    cx = simplex_boundary(2)
    h = hasse_diagram(cx)
    lg = level(h, 0)
    x = np.full(h.num_arcs, 0.5)
    cuts = separate_level(lg, x)
    assert cuts
    best = cuts[0]
    assert best.rhs == len(best.arcs) // 2 - 1
    assert best.violation == pytest.approx(1.0)
    ref = brute_force_separation(lg, x)
    assert ref is not None
    assert ref.violation == pytest.approx(best.violation)


def test_agreement_with_enumeration_on_random_points():
    rng = random.Random(211)
    found = 0
    for lg, h in _levels(rng, 60):
        x = _feasible_point(lg, h, rng)
        cuts = separate_level(lg, x)
        ref = brute_force_separation(lg, x)
        assert (len(cuts) > 0) == (ref is not None)
        if cuts:
            found += 1
            for cut in cuts:
                assert cut.level == lg.index
                assert cut.rhs == len(cut.arcs) // 2 - 1
                assert _independent_violation(lg, cut, x) > 1e-6
            # the exhaustive optimum is an upper bound for every emitted cut
            assert max(c.violation for c in cuts) <= ref.violation + 1e-9
    assert found >= 5


def test_separation_rejects_infeasible_points():
    cx = simplex_boundary(2)
    h = hasse_diagram(cx)
    lg = level(h, 0)
    x = np.full(h.num_arcs, 0.9)  # violates matching inequalities
    with pytest.raises(ValueError):
        separate_level(lg, x)
    with pytest.raises(ValueError):
        separate_level(lg, np.full(h.num_arcs, -0.2))


def test_graph_cache_gives_identical_results():
    rng = random.Random(223)
    for lg, h in _levels(rng, 15):
        tg = TransformedGraph(lg)
        for _ in range(3):
            x = _feasible_point(lg, h, rng)
            fresh = separate_level(lg, x)
            cached = separate_level(lg, x, graph=tg)
            assert [(c.arcs, c.rhs) for c in fresh] \
                == [(c.arcs, c.rhs) for c in cached]


def test_graph_cache_rejects_wrong_level():
    cx = build_complex([(1, 2, 3), (2, 3, 4)])
    h = hasse_diagram(cx)
    lg0, lg1 = level(h, 0), level(h, 1)
    tg = TransformedGraph(lg0)
    with pytest.raises(ValueError):
        separate_level(lg1, np.zeros(h.num_arcs), graph=tg)


def test_recover_cycle_structure():
    cx = simplex_boundary(2)
    h = hasse_diagram(cx)
    lg = level(h, 0)
    x = np.full(h.num_arcs, 0.5)
    tg = transformed_graph(lg, x)
    cuts = separate_level(lg, x)
    cut = cuts[0]
    # traversal alternates (upper, lower) endpoints around a closed walk
    ends = [h.arcs[a] for a in cut.arcs]
    for t in range(len(ends)):
        shared = set(ends[t]) & set(ends[(t + 1) % len(ends)])
        assert shared, "consecutive cycle arcs must share a face"
    assert tg.nodes  # structure built


def test_audit_nonnegative_on_feasible_points():
    rng = random.Random(227)
    for lg, h in _levels(rng, 40):
        x = _feasible_point(lg, h, rng)
        assert conservative_weight_audit(lg, x) >= -1e-9


def test_audit_infinite_when_acyclic():
    cx = build_complex([(1, 2), (2, 3)])  # path graph: no level cycles
    h = hasse_diagram(cx)
    lg = level(h, 0)
    assert conservative_weight_audit(lg, np.zeros(h.num_arcs)) == float("inf")


def test_max_cuts_cap_respected():
    rng = random.Random(229)
    for lg, h in _levels(rng, 25):
        x = _feasible_point(lg, h, rng)
        cuts = separate_level(lg, x, max_cuts=2)
        assert len(cuts) <= 2
        allc = separate_level(lg, x, max_cuts=50)
        if allc:
            assert cuts and cuts[0].violation == pytest.approx(
                allc[0].violation)
