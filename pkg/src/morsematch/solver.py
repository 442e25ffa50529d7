"""Branch and cut for maximum Morse matchings.

The relaxation maximizes the matching size over the matching inequalities
(one per face), aggregated Betti rows (one per dimension, bounding matched
faces by f_i minus the homology lower bound), and cycle inequalities added
on the fly.  Nodes are explored best bound first with depth-first plunging;
integral points are accepted only after lazy acyclicity checks, which add
uncapped cycle cuts for any directed cycle found.  The incumbent is kept
vertex-canonical so exactly one vertex stays critical.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field, replace
from enum import Enum
from heapq import heappush, heappop
from pathlib import Path
from typing import Sequence

import numpy as np

from .complexes import (DisconnectedComplexError, HasseDiagram,
                        SimplicialComplex, hasse_diagram, is_connected, level,
                        split_components)
from .heuristic import greedy_from_lp, improve
from .homology import DEFAULT_FIELDS, FieldSpec, best_betti_bounds
from .lp import (AT_HI, AT_LO, LinearProgram, LpRow, LpSolution, LpStatus,
                 SimplexBasis, gomory_cuts, solve as lp_solve, write_lp_text)
from .matching import (CriticalReport, MorseMatching, canonicalize_vertices,
                       critical_report, is_morse_matching)
from .separation import (CycleCut, TransformedGraph, separate_level,
                         transformed_graph)

__all__ = [
    "SolverConfig",
    "SolveStatus",
    "SolveStats",
    "SolveResult",
    "solve",
    "prove_bound",
]

INT_TOL = 1e-6
RC_EPS = 1e-6
SB_RELIABLE = 4  # pseudocost samples per direction before probes stop
SB_MAX_PROBES = 8  # strong-branching probe pairs per node
SB_ITER_CAP = 300  # pivot cap for a single probe


class SolveStatus(Enum):
    OPTIMAL = "Optimal"
    TIME_LIMIT = "TimeLimit"
    NODE_LIMIT = "NodeLimit"


@dataclass(frozen=True)
class SolverConfig:
    fields: tuple[FieldSpec, ...] = DEFAULT_FIELDS
    max_separation_rounds: int = 7
    max_cuts_per_level: int = 20
    heuristic_frequency: int = 10
    branching: str = "pseudocost"  # or "most_fractional"
    use_separation: bool = True
    use_gomory: bool = False
    time_limit: float | None = None
    node_limit: int | None = None
    split_components: bool = False
    weights: tuple[float, ...] | None = None  # per-arc objective, default 1
    eps_cut: float = 1e-6
    debug_dir: str | None = None
    lp_max_iter: int = 50000

    def __post_init__(self):
        if self.branching not in ("most_fractional", "pseudocost"):
            raise ValueError(f"unknown branching rule {self.branching!r}")
        if self.max_separation_rounds < 0 or self.max_cuts_per_level < 1:
            raise ValueError("separation limits out of range")
        if self.heuristic_frequency < 1:
            raise ValueError("heuristic frequency must be positive")

    @classmethod
    def no_separation(cls, **kw) -> "SolverConfig":
        """Plain branch and bound: no cycle separation, no Gomory cuts."""
        return cls(use_separation=False, use_gomory=False, **kw)


@dataclass
class SolveStats:
    nodes: int = 0
    max_depth: int = 0
    lp_solves: int = 0
    lp_iterations: int = 0
    cuts_added: int = 0
    lazy_cuts: int = 0
    gomory_added: int = 0
    heuristic_calls: int = 0
    augmentations: int = 0
    lp_failures: int = 0
    vars_fixed: int = 0  # by reduced costs or one-sided probe results
    probes: int = 0  # strong-branching probe LPs
    time: float = 0.0


@dataclass
class SolveResult:
    status: SolveStatus
    matching: MorseMatching
    report: CriticalReport
    objective: float  # matching size, or weighted sum when weights given
    dual_bound: float  # upper bound on the objective
    betti_bound: tuple[int, ...]  # per-dimension critical lower bounds used
    stats: SolveStats

    @property
    def critical_total(self) -> int:
        return self.report.total


def prove_bound(cx: SimplicialComplex,
                fields: Sequence[FieldSpec] = DEFAULT_FIELDS) -> int:
    """Field-best lower bound on the total number of critical faces."""
    return sum(best_betti_bounds(cx, fields))


@dataclass
class _Node:
    lower: np.ndarray
    upper: np.ndarray
    depth: int
    bound: float
    basis: SimplexBasis | None
    branch_arc: int = -1
    branch_dir: int = 0
    parent_obj: float = math.inf
    parent_frac: float = 0.0
    # inverse basis matrix matching ``basis``; only handed to the child that
    # is processed immediately, so the queue never pins large matrices
    binv_hint: np.ndarray | None = None


class _LimitReached(Exception):
    def __init__(self, status: SolveStatus):
        self.status = status


def _matching_rows(h: HasseDiagram) -> list[LpRow]:
    rows = []
    for f in range(h.complex.num_faces):
        inc = h.incident[f]
        if inc:
            rows.append(LpRow(inc, (1.0,) * len(inc), 1.0))
    return rows


def _betti_rows(h: HasseDiagram, bounds: tuple[int, ...]) -> list[LpRow]:
    cx = h.complex
    rows = []
    for i in range(cx.dim + 1):
        cols: list[int] = []
        if i >= 1:
            cols.extend(h.arcs_at_level(i - 1))
        if i < cx.dim:
            cols.extend(h.arcs_at_level(i))
        if not cols:
            continue
        rows.append(LpRow(tuple(cols), (1.0,) * len(cols),
                          float(cx.f_vector[i] - bounds[i])))
    return rows


def _witness_cut(h: HasseDiagram, faces: tuple[int, ...]) -> tuple[tuple[int, ...], int]:
    """Arc ids and rhs of the cycle inequality for a directed-cycle witness."""
    cx = h.complex
    lvl = min(cx.face_dim(f) for f in faces)
    if cx.face_dim(faces[0]) != lvl:
        faces = faces[1:] + faces[:1]
    k = len(faces)
    if k < 6 or k % 2:
        raise AssertionError(f"witness cycle has invalid length {k}")
    arcs = []
    for t in range(k):
        f, g = faces[t], faces[(t + 1) % k]
        up, low = (g, f) if t % 2 == 0 else (f, g)
        arcs.append(h.arc_ids[(up, low)])
    return tuple(arcs), k // 2 - 1


class _Pseudocost:
    def __init__(self):
        self.up: dict[int, tuple[float, int]] = {}
        self.down: dict[int, tuple[float, int]] = {}

    def record(self, arc: int, direction: int, degrade: float, dist: float):
        if dist <= 1e-9:
            return
        table = self.up if direction else self.down
        s, k = table.get(arc, (0.0, 0))
        table[arc] = (s + max(degrade, 0.0) / dist, k + 1)

    def count(self, arc: int) -> int:
        return min(self.up.get(arc, (0.0, 0))[1],
                   self.down.get(arc, (0.0, 0))[1])

    def _avg(self, table: dict, arc: int) -> float:
        if arc in table:
            s, k = table[arc]
            return s / k
        if table:
            return sum(s / k for s, k in table.values()) / len(table)
        return 1.0

    def score(self, arc: int, frac: float) -> float:
        dn = self._avg(self.down, arc) * frac
        up = self._avg(self.up, arc) * (1.0 - frac)
        return max(dn, 1e-6) * max(up, 1e-6)


def _fractional_arcs(x: np.ndarray, lower: np.ndarray, upper: np.ndarray,
                     arc_lev: np.ndarray) -> list[int]:
    """Free fractional arcs, restricted to the highest level that has any.

    Arcs between the two top dimensions steer everything below them: fixing
    them decides which top faces get matched downward, and the lower levels
    mostly follow.  Branching there first shrinks trees dramatically on hard
    instances, so the restriction applies under every branching rule.
    """
    frac = [a for a in range(x.shape[0])
            if lower[a] < upper[a] and INT_TOL < x[a] < 1 - INT_TOL]
    if not frac:
        raise AssertionError("branching called on an integral point")
    top = max(arc_lev[a] for a in frac)
    return [a for a in frac if arc_lev[a] == top]


def _pick_branch_arc(x: np.ndarray, lower: np.ndarray, upper: np.ndarray,
                     rule: str, pseudo: _Pseudocost, arc_lev: np.ndarray) -> int:
    frac = _fractional_arcs(x, lower, upper, arc_lev)
    if rule == "pseudocost" and (pseudo.up or pseudo.down):
        return max(frac, key=lambda a: (pseudo.score(a, float(x[a])), -a))
    return min(frac, key=lambda a: (abs(float(x[a]) - 0.5), a))


def _solve_connected(cx: SimplicialComplex, config: SolverConfig,
                     t0: float) -> SolveResult:
    h = hasse_diagram(cx)
    n = h.num_arcs
    arc_lev = np.fromiter((h.arc_level(a) for a in range(n)),
                          dtype=np.int64, count=n)
    bounds = best_betti_bounds(cx, config.fields)
    stats = SolveStats()
    deadline = t0 + config.time_limit if config.time_limit is not None else None

    if config.weights is None:
        obj = np.ones(n)
        integral_obj = True
    else:
        if len(config.weights) != n:
            raise ValueError(f"need one weight per arc ({n})")
        obj = np.asarray(config.weights, dtype=float)
        if (obj < 0).any():
            raise ValueError("arc weights must be nonnegative")
        integral_obj = bool(np.all(obj == np.round(obj)))
    unit = config.weights is None

    base_rows = _matching_rows(h) + _betti_rows(h, bounds)
    pool_rows: list[LpRow] = []
    pool_keys: set = set()
    lg_cache = {i: level(h, i) for i in range(cx.dim)}
    tg_cache = {i: TransformedGraph(lg_cache[i]) for i in range(cx.dim)}

    # every node LP shares the prefix base_rows + pool_rows and the pool only
    # appends, so one growing dense matrix serves them all
    dense_cap = max(64, len(base_rows))
    dense_A = np.zeros((dense_cap, n))
    dense_b = np.zeros(dense_cap)
    dense_m = 0

    def dense_arrays(rows: list[LpRow]):
        nonlocal dense_A, dense_b, dense_cap, dense_m
        m = len(rows)
        if m > dense_cap:
            while dense_cap < m:
                dense_cap *= 2
            grown_A = np.zeros((dense_cap, n))
            grown_A[:dense_m] = dense_A[:dense_m]
            grown_b = np.zeros(dense_cap)
            grown_b[:dense_m] = dense_b[:dense_m]
            dense_A, dense_b = grown_A, grown_b
        while dense_m < m:
            row = rows[dense_m]
            for j, v in zip(row.cols, row.coefs):
                dense_A[dense_m, j] = v
            dense_b[dense_m] = row.rhs
            dense_m += 1
        return dense_A[:m], dense_b[:m]
    debug_dir = Path(config.debug_dir) if config.debug_dir else None
    if debug_dir:
        debug_dir.mkdir(parents=True, exist_ok=True)

    def out_of_time() -> bool:
        return deadline is not None and time.monotonic() > deadline

    def mvalue(m: MorseMatching) -> float:
        if unit:
            return float(m.size)
        return float(sum(obj[a] for a in m.arcs))

    incumbent: MorseMatching | None = None
    zinc = -math.inf

    def offer(candidate: MorseMatching) -> None:
        nonlocal incumbent, zinc
        if unit:
            candidate = canonicalize_vertices(candidate)
        v = mvalue(candidate)
        if v > zinc + 1e-9:
            incumbent, zinc = candidate, v

    def run_heuristic(x) -> None:
        m = greedy_from_lp(h, x)
        m, paths = improve(m)
        stats.heuristic_calls += 1
        stats.augmentations += len(paths)
        offer(m)

    # a valid incumbent exists from the start, whatever the limits are
    run_heuristic(np.zeros(n))

    def pool_add(arcs: tuple[int, ...], rhs: float) -> bool:
        key = tuple(sorted(arcs))
        if key in pool_keys:
            return False
        pool_keys.add(key)
        pool_rows.append(LpRow(key, (1.0,) * len(key), float(rhs)))
        return True

    def node_lp(node: _Node) -> LinearProgram:
        lp = LinearProgram(n, obj)
        lp.lower = node.lower.copy()
        lp.upper = node.upper.copy()
        lp.rows = base_rows + pool_rows
        lp._dense = dense_arrays(lp.rows)
        return lp

    def prune_bound(z: float) -> float:
        return math.floor(z + INT_TOL) if integral_obj else z

    def improving_target() -> float:
        # any solution we still care about must reach this objective
        return zinc + (1.0 if integral_obj else 1e-6)

    def rc_fix(node: _Node, lp: LinearProgram, sol: LpSolution) -> int:
        """Pin free arcs whose reduced cost rules out improving solutions."""
        d = sol.redcosts
        if d is None:
            return 0
        thresh = max(sol.objective - improving_target(), 0.0) + RC_EPS
        vst = sol.basis.vstat[:n]
        freev = node.upper - node.lower > 0.5
        fix_lo = np.flatnonzero(freev & (vst == AT_LO) & (d < -thresh))
        fix_hi = np.flatnonzero(freev & (vst == AT_HI) & (d > thresh))
        node.upper[fix_lo] = node.lower[fix_lo]
        node.lower[fix_hi] = node.upper[fix_hi]
        changed = len(fix_lo) + len(fix_hi)
        if changed:
            lp.lower = node.lower.copy()
            lp.upper = node.upper.copy()
        return changed

    pseudo = _Pseudocost()

    def choose_branch(node: _Node, lp: LinearProgram,
                      basis: SimplexBasis | None, x: np.ndarray,
                      binv: np.ndarray | None = None):
        """Reliability branching: probe unreliable arcs, score reliable ones.

        Returns an arc id, "again" after pinning an arc whose probe proved
        one side cannot improve the incumbent, or "fathom" when both sides
        are dead.
        """
        frac = _fractional_arcs(x, node.lower, node.upper, arc_lev)
        frac.sort(key=lambda a: (abs(float(x[a]) - 0.5), a))
        best_arc, best_score = frac[0], -1.0
        probes = 0
        for a in frac:
            fa = float(x[a])
            if pseudo.count(a) >= SB_RELIABLE or probes >= SB_MAX_PROBES:
                score = pseudo.score(a, fa)
            else:
                probes += 1
                degrade = [0.0, 0.0]
                dead = [False, False]
                for direction in (0, 1):
                    lo0, hi0 = lp.lower[a], lp.upper[a]
                    if direction == 0:
                        lp.upper[a] = lo0
                    else:
                        lp.lower[a] = hi0
                    try:
                        probe = lp_solve(lp, warm=basis,
                                         max_iter=SB_ITER_CAP,
                                         warm_binv=binv)
                    finally:
                        lp.lower[a], lp.upper[a] = lo0, hi0
                    stats.probes += 1
                    stats.lp_solves += 1
                    stats.lp_iterations += probe.iterations
                    if probe.status is LpStatus.INFEASIBLE:
                        dead[direction] = True
                        degrade[direction] = math.inf
                    elif probe.status is LpStatus.OPTIMAL:
                        degrade[direction] = max(
                            node.bound - probe.objective, 0.0)
                        if prune_bound(probe.objective) <= zinc + 1e-9:
                            dead[direction] = True
                        pseudo.record(a, direction, degrade[direction],
                                      fa if direction == 0 else 1.0 - fa)
                if dead[0] and dead[1]:
                    return "fathom"
                if dead[0] or dead[1]:
                    if dead[0]:
                        node.lower[a] = node.upper[a]
                    else:
                        node.upper[a] = node.lower[a]
                    lp.lower = node.lower.copy()
                    lp.upper = node.upper.copy()
                    stats.vars_fixed += 1
                    return "again"
                score = max(degrade[0], 1e-6) * max(degrade[1], 1e-6)
            if score > best_score:
                best_arc, best_score = a, score
        return best_arc
    heap: list[tuple[float, int, _Node]] = []
    seq = 0
    root = _Node(np.zeros(n), np.ones(n), 0, math.inf, None)
    current: _Node | None = root
    node: _Node | None = None
    status = SolveStatus.OPTIMAL
    final_bound = zinc

    try:
        while current is not None or heap:
            if current is None:
                bound_key, _, popped = heappop(heap)
                if prune_bound(-bound_key) <= zinc + 1e-9:
                    continue  # pruned by a newer incumbent
                current = popped
            if config.node_limit is not None and stats.nodes >= config.node_limit:
                raise _LimitReached(SolveStatus.NODE_LIMIT)
            if out_of_time():
                raise _LimitReached(SolveStatus.TIME_LIMIT)
            node = current
            current = None
            stats.nodes += 1
            stats.max_depth = max(stats.max_depth, node.depth)

            lp = node_lp(node)
            basis = node.basis
            rounds = 0
            lazy = 0
            did_heuristic = False
            branch_choice: int | None = None
            x = None
            binv = node.binv_hint
            node.binv_hint = None
            while True:
                if out_of_time():
                    raise _LimitReached(SolveStatus.TIME_LIMIT)
                sol = lp_solve(lp, warm=basis, max_iter=config.lp_max_iter,
                               warm_binv=binv)
                stats.lp_solves += 1
                stats.lp_iterations += sol.iterations
                if sol.status is LpStatus.INFEASIBLE:
                    x = None
                    break
                if sol.status is LpStatus.ITERATION_LIMIT:
                    stats.lp_failures += 1
                    x = None
                    sol = None
                    break
                basis = sol.basis
                binv = sol.binv
                node.bound = min(node.bound, sol.objective)
                if node.branch_arc >= 0 and math.isfinite(node.parent_obj):
                    pseudo.record(node.branch_arc, node.branch_dir,
                                  node.parent_obj - sol.objective,
                                  node.parent_frac)
                    node.branch_arc = -1  # record once
                if prune_bound(node.bound) <= zinc + 1e-9:
                    x = None
                    break
                fixed = rc_fix(node, lp, sol)
                if fixed:
                    stats.vars_fixed += fixed
                    continue
                x = sol.x
                if not did_heuristic and node.depth % config.heuristic_frequency == 0:
                    did_heuristic = True
                    run_heuristic(x)
                    if prune_bound(node.bound) <= zinc + 1e-9:
                        x = None
                        break
                near = np.abs(x - np.round(x)) <= INT_TOL
                if near.all():
                    arcs = frozenset(int(a) for a in np.flatnonzero(x > 0.5))
                    check = is_morse_matching(h, arcs)
                    if check:
                        offer(MorseMatching(h, arcs))
                        x = None
                        break
                    if check.cycle is None:
                        raise AssertionError(
                            "integral LP point violates a matching row")
                    cut_arcs, rhs = _witness_cut(h, check.cycle)
                    if not pool_add(cut_arcs, rhs):
                        raise AssertionError("repeated lazy cut; no progress")
                    lp.rows = base_rows + pool_rows
                    lp._dense = dense_arrays(lp.rows)
                    stats.lazy_cuts += 1
                    lazy += 1
                    if lazy > 10 * n + 100:
                        raise AssertionError("lazy cut loop did not terminate")
                    continue
                if config.use_separation and rounds < config.max_separation_rounds:
                    added = 0
                    for i in range(cx.dim):
                        lg = lg_cache[i]
                        cuts = separate_level(lg, x,
                                              max_cuts=config.max_cuts_per_level,
                                              eps_cut=config.eps_cut,
                                              feas_tol=1e-6,
                                              graph=tg_cache[i])
                        if debug_dir and node.depth == 0 and rounds == 0:
                            with open(debug_dir / f"root_level{i}.tg", "w") as fh:
                                transformed_graph(lg, x).dump(fh)
                        for cut in cuts:
                            if pool_add(cut.arcs, cut.rhs):
                                added += 1
                    stats.cuts_added += added
                    if config.use_gomory and node.depth == 0:
                        gcuts = gomory_cuts(lp, sol)
                        fresh = []
                        for row in gcuts:
                            key = ("g", row.cols,
                                   tuple(round(v, 9) for v in row.coefs),
                                   round(row.rhs, 9))
                            if key not in pool_keys:
                                pool_keys.add(key)
                                fresh.append(row)
                        pool_rows.extend(fresh)
                        stats.gomory_added += len(fresh)
                        added += len(fresh)
                    if added:
                        lp.rows = base_rows + pool_rows
                        lp._dense = dense_arrays(lp.rows)
                        rounds += 1
                        continue
                if config.branching == "pseudocost":
                    act = choose_branch(node, lp, basis, x, binv)
                    if act == "fathom":
                        x = None
                        break
                    if act == "again":
                        continue
                    branch_choice = act
                break

            if debug_dir and node.depth == 0:
                with open(debug_dir / "root.lp", "w") as fh:
                    write_lp_text(lp, fh)

            if x is None and sol is not None and sol.status is LpStatus.OPTIMAL:
                continue  # pruned or fathomed by integrality
            if sol is None:
                # LP numerical failure: branch on the first free arc with the
                # inherited bound so correctness does not depend on this LP
                free = [a for a in range(n) if node.lower[a] < node.upper[a]]
                if not free:
                    # fully fixed assignment; judge it directly
                    arcs = frozenset(int(a)
                                     for a in np.flatnonzero(node.lower > 0.5))
                    if is_morse_matching(h, arcs):
                        offer(MorseMatching(h, arcs))
                    continue
                q = free[0]
                xq = 0.5
            elif sol.status is LpStatus.INFEASIBLE:
                continue
            else:
                if branch_choice is not None:
                    q = branch_choice
                else:
                    q = _pick_branch_arc(x, node.lower, node.upper,
                                         config.branching, pseudo, arc_lev)
                xq = float(x[q])

            children = []
            for direction in (0, 1):
                lo = node.lower.copy()
                hi = node.upper.copy()
                if direction == 0:
                    hi[q] = 0.0
                else:
                    lo[q] = 1.0
                children.append(_Node(
                    lo, hi, node.depth + 1, node.bound, basis,
                    branch_arc=q, branch_dir=direction,
                    parent_obj=node.bound,
                    parent_frac=xq if direction == 0 else 1.0 - xq))
            # plunge the 1-side first: committing an arc restricts the
            # subproblem far more than forbidding it, so bounds drop fast
            current = children[1]
            other = children[0]
            current.binv_hint = binv
            if prune_bound(other.bound) > zinc + 1e-9:
                heappush(heap, (-other.bound, seq, other))
                seq += 1
        status = SolveStatus.OPTIMAL
        final_bound = zinc
    except _LimitReached as lim:
        status = lim.status
        bounds_open = [-k for k, _, _ in heap]
        if current is not None:
            bounds_open.append(current.bound)
        if node is not None:
            bounds_open.append(node.bound)  # may be mid-processing
        final_bound = max([zinc] + bounds_open)

    assert incumbent is not None
    stats.time = time.monotonic() - t0
    return SolveResult(status, incumbent, critical_report(incumbent),
                       zinc, final_bound, bounds, stats)


def _merge_split(cx: SimplicialComplex, config: SolverConfig,
                 t0: float) -> SolveResult:
    h = hasse_diagram(cx)
    parts = split_components(cx)
    merged_arcs: set[int] = set()
    status = SolveStatus.OPTIMAL
    total_dual = 0.0
    stats = SolveStats()
    betti: list[int] = [0] * (cx.dim + 1)
    nodes_left = config.node_limit
    for sub, face_map in parts:
        sub_cfg = replace(config, split_components=False,
                          weights=None if config.weights is None else tuple(
                              _sub_weights(h, sub, face_map, config.weights)),
                          time_limit=(None if config.time_limit is None
                                      else max(0.0, config.time_limit
                                               - (time.monotonic() - t0))),
                          node_limit=nodes_left)
        res = solve(sub, sub_cfg)
        if res.status is not SolveStatus.OPTIMAL and status is SolveStatus.OPTIMAL:
            status = res.status
        sub_h = res.matching.hasse
        for a in res.matching.arcs:
            u, low = sub_h.arcs[a]
            merged_arcs.add(h.arc_ids[(face_map[u], face_map[low])])
        total_dual += res.dual_bound
        for i, b in enumerate(res.betti_bound):
            betti[i] += b
        stats.nodes += res.stats.nodes
        stats.max_depth = max(stats.max_depth, res.stats.max_depth)
        stats.lp_solves += res.stats.lp_solves
        stats.lp_iterations += res.stats.lp_iterations
        stats.cuts_added += res.stats.cuts_added
        stats.lazy_cuts += res.stats.lazy_cuts
        stats.gomory_added += res.stats.gomory_added
        stats.heuristic_calls += res.stats.heuristic_calls
        stats.augmentations += res.stats.augmentations
        stats.lp_failures += res.stats.lp_failures
        if nodes_left is not None:
            nodes_left = max(0, nodes_left - res.stats.nodes)
    matching = MorseMatching(h, frozenset(merged_arcs))
    check = is_morse_matching(h, matching.arcs)
    if not check:
        raise AssertionError(f"component merge broke the matching: {check}")
    stats.time = time.monotonic() - t0
    objective = (float(matching.size) if config.weights is None
                 else float(sum(config.weights[a] for a in matching.arcs)))
    return SolveResult(status, matching, critical_report(matching),
                       objective, total_dual, tuple(betti), stats)


def _sub_weights(h: HasseDiagram, sub, face_map, weights):
    sub_h = hasse_diagram(sub)
    out = []
    for a in range(sub_h.num_arcs):
        u, low = sub_h.arcs[a]
        out.append(weights[h.arc_ids[(face_map[u], face_map[low])]])
    return out


def solve(cx: SimplicialComplex, config: SolverConfig | None = None) -> SolveResult:
    """Solve the maximum Morse matching problem on the complex."""
    config = config or SolverConfig()
    t0 = time.monotonic()
    if not is_connected(cx):
        if not config.split_components:
            raise DisconnectedComplexError(
                "complex is disconnected; enable split_components to solve "
                "per component")
        return _merge_split(cx, config, t0)
    return _solve_connected(cx, config, t0)
