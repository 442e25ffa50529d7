"""Shared fixtures plus the matching identity suite.

Every test that produces a matching is expected to pass it through
``record_matching``, which asserts the full identity suite (size/critical
count consistency, Euler characteristic, per-field lower bounds, skeleton
connectivity after removing upward-matched edges, vertex canonicalization)
and logs it.  The acceptance test for the identity criterion then both
exercises its own batch and reports the run-wide tally.
"""

from __future__ import annotations

import random
import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

from morsematch import (DEFAULT_FIELDS, MorseMatching, SolverConfig,
                        betti_numbers, canonicalize_vertices,
                        connected_components, critical_report, dunce_hat,
                        euler_characteristic, full_simplex, hasse_diagram,
                        is_connected, is_morse_matching, projective_plane,
                        simplex_boundary, triangle)
from morsematch.lp import LinearProgram
from morsematch.lp import solve as lp_solve
from morsematch.solver import _betti_rows, _matching_rows

MATCHING_LOG: list[MorseMatching] = []
ACCEPTANCE_LINES: list[str] = []


def _betti_cached(cx, field, _cache={}):
    key = (cx.facets, str(field))
    if key not in _cache:
        _cache[key] = betti_numbers(cx, field).betti
    return _cache[key]


def _skeleton_components(cx, dropped_edges: set[int]) -> int:
    parent = list(range(cx.num_vertices))

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for eid in cx.ids_of_dim(1) if cx.dim >= 1 else ():
        if eid in dropped_edges:
            continue
        u, v = (find(w) for w in cx.face_key(eid))
        if u != v:
            parent[u] = v
    return len({find(v) for v in range(cx.num_vertices)})


def assert_matching_identities(m: MorseMatching,
                               fields=DEFAULT_FIELDS) -> None:
    h = m.hasse
    cx = h.complex
    assert is_morse_matching(h, m.arcs).ok

    report = critical_report(m)
    assert report.total == cx.num_faces - 2 * m.size
    assert sum((-1) ** j * c for j, c in enumerate(report.counts)) \
        == euler_characteristic(cx)
    for field in fields:
        betti = _betti_cached(cx, field)
        for j, c in enumerate(report.counts):
            assert c >= betti[j], \
                f"c_{j} = {c} < beta_{j} = {betti[j]} over {field}"

    # removing the edges matched upward to 2-faces must not disconnect
    # anything: the pruned 1-skeleton keeps the component count
    dropped = {h.arcs[a][1] for a in m.arcs if h.arc_level(a) == 1}
    assert _skeleton_components(cx, dropped) == len(connected_components(cx))

    if is_connected(cx):
        canon = canonicalize_vertices(m)
        assert is_morse_matching(h, canon.arcs).ok
        creport = critical_report(canon)
        assert creport.counts[0] == 1
        assert creport.counts[2:] == report.counts[2:]
        assert creport.total <= report.total


def record_matching(m: MorseMatching, fields=DEFAULT_FIELDS) -> MorseMatching:
    assert_matching_identities(m, fields)
    MATCHING_LOG.append(m)
    return m


def root_lp_point(h) -> np.ndarray:
    """Optimal point of the root relaxation (matching plus bound rows)."""
    from morsematch import best_betti_bounds

    bounds = best_betti_bounds(h.complex)
    lp = LinearProgram(h.num_arcs, np.ones(h.num_arcs))
    lp.add_rows(_matching_rows(h))
    lp.add_rows(_betti_rows(h, bounds))
    sol = lp_solve(lp)
    assert sol.status.value == "optimal"
    return sol.x


def random_matchings(h, rng: random.Random, count: int):
    """Diverse valid matchings: greedy from random points plus subsets."""
    from morsematch import greedy_from_lp

    out = []
    while len(out) < count:
        x = [rng.random() for _ in range(h.num_arcs)]
        m = greedy_from_lp(h, x)
        out.append(m)
        if len(out) < count and m.size:
            keep = frozenset(a for a in m.arcs if rng.random() > 0.4)
            out.append(MorseMatching(h, keep))
    return out[:count]


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
    terminalreporter.write_line(
        f"identity suite: {len(MATCHING_LOG)} matchings checked this run")


@pytest.fixture(scope="session")
def zoo():
    """Named small instances reused across tests."""
    return {
        "triangle": triangle(),
        "segment": full_simplex(1),
        "full2": full_simplex(2),
        "full3": full_simplex(3),
        "circle": simplex_boundary(2),
        "sphere2": simplex_boundary(3),
        "sphere3": simplex_boundary(4),
        "rp2": projective_plane(),
        "dunce": dunce_hat(),
    }


@pytest.fixture()
def rng():
    return random.Random(20260823)


@pytest.fixture(scope="session")
def fast_config():
    return SolverConfig(heuristic_frequency=5)
