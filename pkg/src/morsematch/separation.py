"""Cycle inequalities on one Hasse level and their separation.

A simple cycle C in a level graph alternates i-faces and (i+1)-faces, has
even length at least 6, and gives the valid inequality x(C) <= |C|/2 - 1.
Separation works on a transformed graph whose nodes are pairs of lower faces
under a common upper face.  The search itself runs over directed traversal
states (enter one pair face, leave by the other) with state cost
1 - x(enter, w) - x(exit, w), which is nonnegative under the matching
inequalities; a state cycle of total cost below 1 maps to a closed walk in
the level that splits into simple cycles, at least one of them violated, and
conversely every violated simple cycle appears as such a state cycle.  This
keeps the emptiness answer exact even when pair nodes share lower faces.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from itertools import combinations
from math import inf
from typing import Iterable, Mapping, Sequence, TextIO

from .complexes import LevelGraph

__all__ = [
    "CycleCut",
    "TransformedGraph",
    "DegenerateCycleError",
    "transformed_graph",
    "separate_level",
    "recover_cycle",
    "brute_force_separation",
    "conservative_weight_audit",
    "ENUMERATION_LIMIT",
]

ENUMERATION_LIMIT = 30  # max faces per side for exhaustive cycle enumeration


class DegenerateCycleError(ValueError):
    """A transformed-graph cycle whose recovery revisits a face."""


@dataclass(frozen=True)
class CycleCut:
    """x(arcs) <= rhs for a simple alternating cycle at one level."""

    level: int
    arcs: tuple[int, ...]  # arc ids in traversal order around the cycle
    rhs: int
    violation: float

    def __post_init__(self):
        k = len(self.arcs)
        if k < 6 or k % 2:
            raise ValueError(f"cycle length must be even and >= 6, got {k}")
        if len(set(self.arcs)) != k:
            raise ValueError("cycle repeats an arc")
        if self.rhs != k // 2 - 1:
            raise ValueError(f"rhs must be {k // 2 - 1} for length {k}")

    def key(self) -> tuple[int, ...]:
        return tuple(sorted(self.arcs))

    def validate(self, lg: LevelGraph) -> None:
        """Check the arcs really form a simple cycle in the level graph."""
        pair = {arc: (up, low) for arc, up, low in lg.edges}
        faces: list[int] = []
        prev_up, prev_low = pair[self.arcs[-1]]
        for a in self.arcs:
            up, low = pair[a]
            shared = {up, low} & {prev_up, prev_low}
            if len(shared) != 1:
                raise ValueError("consecutive arcs must share one face")
            faces.append(shared.pop())
            prev_up, prev_low = up, low
        if len(set(faces)) != len(faces):
            raise ValueError("cycle visits a face twice")


class TransformedGraph:
    """Pair graph of one level: nodes ({u, u'}, w), edges between nodes that
    share a lower face and have distinct upper faces.

    Edge lengths: ell' is half the sum of the four incident arc values and
    ell~ = 1 - ell'; both are exposed per edge and in ``dump``.
    """

    def __init__(self, lg: LevelGraph, x=None):
        self.level_graph = lg
        self.nodes: list[tuple[int, int, int]] = []  # (a, b, w) with a < b
        self.node_arcs: list[tuple[int, int]] = []   # arc ids (w,a), (w,b)
        pair_owner: dict[tuple[int, int], int] = {}
        bucket: dict[int, list[int]] = {}
        for w in lg.upper:
            down = lg.adj_upper.get(w, ())
            for (arc1, a), (arc2, b) in combinations(down, 2):
                if a > b:
                    a, b, arc1, arc2 = b, a, arc2, arc1
                if (a, b) in pair_owner:
                    raise ValueError(
                        f"lower faces {a}, {b} lie under two upper faces; "
                        "not a simplicial level")
                pair_owner[(a, b)] = w
                nid = len(self.nodes)
                self.nodes.append((a, b, w))
                self.node_arcs.append((arc1, arc2))
                bucket.setdefault(a, []).append(nid)
                bucket.setdefault(b, []).append(nid)
        self._bucket = bucket
        self.num_nodes = len(self.nodes)
        self.node_x: list[tuple[float, float]] = [(0.0, 0.0)] * self.num_nodes
        self.cost: list[float] = [1.0] * self.num_nodes
        self._succ: list[list[int]] | None = None
        self._succ_sets: list[frozenset] | None = None
        self._pair_arc: dict[tuple[int, int], int] | None = None
        if x is not None:
            self.set_values(x)

    def set_values(self, x) -> None:
        """Refresh the x-dependent node values; the structure is static."""
        for nid, (arc1, arc2) in enumerate(self.node_arcs):
            xa, xb = float(x[arc1]), float(x[arc2])
            self.node_x[nid] = (xa, xb)
            self.cost[nid] = 1.0 - xa - xb

    def edges(self) -> list[tuple[int, int, float, float]]:
        """Undirected edges as (node1, node2, ell', ell~)."""
        out = []
        for members in self._bucket.values():
            for n1, n2 in combinations(members, 2):
                if self.nodes[n1][2] == self.nodes[n2][2]:
                    continue
                lp = 1.0 - (self.cost[n1] + self.cost[n2]) / 2.0
                out.append((n1, n2, lp, 1.0 - lp))
        out.sort(key=lambda e: (e[0], e[1]))
        return out

    def dump(self, out: TextIO) -> None:
        out.write(f"transformed graph: level {self.level_graph.index}, "
                  f"{self.num_nodes} nodes\n")
        for nid, (a, b, w) in enumerate(self.nodes):
            out.write(f"node {nid}: ({a},{b}|{w}) x={self.node_x[nid][0]:.6f}"
                      f",{self.node_x[nid][1]:.6f}\n")
        for n1, n2, lp, lt in self.edges():
            out.write(f"edge {n1} -- {n2} ell'={lp:.6f} ell~={lt:.6f}\n")

    # directed traversal states: state 2*nid enters at a and exits at b,
    # state 2*nid+1 enters at b and exits at a
    def _states(self):
        if self._succ is None:
            succ: list[list[int]] = [[] for _ in range(2 * self.num_nodes)]
            for nid, (a, b, w) in enumerate(self.nodes):
                for s, exit_face in ((2 * nid, b), (2 * nid + 1, a)):
                    for nid2 in self._bucket.get(exit_face, ()):
                        a2, b2, w2 = self.nodes[nid2]
                        if w2 == w:
                            continue
                        succ[s].append(
                            2 * nid2 if a2 == exit_face else 2 * nid2 + 1)
            for lst in succ:
                lst.sort()
            self._succ = succ
            self._succ_sets = [frozenset(s) for s in succ]
        cost = [0.0] * (2 * self.num_nodes)
        for nid in range(self.num_nodes):
            cost[2 * nid] = cost[2 * nid + 1] = self.cost[nid]
        return self._succ, cost

    def pair_arc(self) -> dict[tuple[int, int], int]:
        """(upper, lower) -> arc id over the level, built once."""
        if self._pair_arc is None:
            self._pair_arc = {(up, low): arc
                              for arc, up, low in self.level_graph.edges}
        return self._pair_arc


def transformed_graph(lg: LevelGraph, x) -> TransformedGraph:
    """Build the pair graph for the level under arc values ``x``."""
    return TransformedGraph(lg, x)


def _check_point(lg: LevelGraph, x, feas_tol: float) -> None:
    for arc, _, _ in lg.edges:
        v = float(x[arc])
        if v < -feas_tol or v > 1 + feas_tol:
            raise ValueError(f"x[{arc}] = {v} outside [0, 1]")
    for w, down in lg.adj_upper.items():
        s = sum(float(x[arc]) for arc, _ in down)
        if s > 1 + feas_tol:
            raise ValueError(f"matching inequality violated at face {w}: {s}")
    for v, up in lg.adj_lower.items():
        s = sum(float(x[arc]) for arc, _ in up)
        if s > 1 + feas_tol:
            raise ValueError(f"matching inequality violated at face {v}: {s}")


def _pair_to_arc(lg: LevelGraph) -> dict[tuple[int, int], int]:
    return {(up, low): arc for arc, up, low in lg.edges}


def _decompose_walk(faces: Sequence[int]) -> list[list[int]]:
    """Split a closed walk with no immediate reversals into simple cycles."""
    stack: list[int] = []
    pos: dict[int, int] = {}
    pieces: list[list[int]] = []
    for f in faces:
        if f in pos:
            k = pos[f]
            piece = stack[k:]
            for g in piece:
                del pos[g]
            del stack[k:]
            pieces.append(piece)
        pos[f] = len(stack)
        stack.append(f)
    if stack:
        pieces.append(stack)
    return pieces


def _cut_from_faces(lg: LevelGraph, faces: Sequence[int], x,
                    pair_arc: dict[tuple[int, int], int]) -> CycleCut:
    """Faces alternate lower, upper, lower, ... around the cycle."""
    arcs: list[int] = []
    k = len(faces)
    for t in range(k):
        f, g = faces[t], faces[(t + 1) % k]
        up, low = (g, f) if t % 2 == 0 else (f, g)
        arcs.append(pair_arc[(up, low)])
    value = sum(float(x[a]) for a in arcs)
    rhs = k // 2 - 1
    return CycleCut(lg.index, tuple(arcs), rhs, value - rhs)


def separate_level(lg: LevelGraph, x, max_cuts: int = 20,
                   eps_cut: float = 1e-6,
                   feas_tol: float = 1e-7,
                   graph: TransformedGraph | None = None) -> list[CycleCut]:
    """Find violated cycle inequalities; empty exactly when none exists.

    ``x`` must be indexable by arc id, lie in [0, 1], and satisfy the
    matching inequalities on this level up to ``feas_tol``.  Returns up to
    ``max_cuts`` distinct cuts, most violated first.  ``graph`` may hold a
    TransformedGraph previously built for the same level, sparing the
    structural rebuild when separating many points on one complex.
    """
    _check_point(lg, x, feas_tol)
    if graph is None:
        tg = TransformedGraph(lg, x)
    else:
        if graph.level_graph.index != lg.index:
            raise ValueError("graph was built for a different level")
        tg = graph
        tg.set_values(x)
    succ, cost = tg._states()
    nstates = len(succ)
    succ_sets = tg._succ_sets
    pair_arc = tg.pair_arc()

    def enter_face(s: int) -> int:
        a, b, _ = tg.nodes[s // 2]
        return a if s % 2 == 0 else b

    best: dict[tuple[int, ...], CycleCut] = {}
    for s0 in range(nstates):
        c0 = max(cost[s0], 0.0)
        limit = 1.0 - eps_cut - c0
        if limit <= 0:
            continue
        dist: dict[int, float] = {}
        prev: dict[int, int] = {}
        heap: list[tuple[float, int]] = []
        for t in succ[s0]:
            if t >= s0:
                d = max(cost[t], 0.0)
                if d < limit and d < dist.get(t, inf):
                    dist[t] = d
                    prev[t] = s0
                    heapq.heappush(heap, (d, t))
        best_total, best_end = inf, None
        while heap:
            d, t = heapq.heappop(heap)
            if d > dist.get(t, inf):
                continue
            if s0 in succ_sets[t] and d + c0 < best_total:
                best_total, best_end = d + c0, t
            for t2 in succ[t]:
                if t2 < s0 or t2 == s0:
                    continue
                nd = d + max(cost[t2], 0.0)
                if nd < limit and nd < dist.get(t2, inf):
                    dist[t2] = nd
                    prev[t2] = t
                    heapq.heappush(heap, (nd, t2))
        if best_end is None or best_total >= 1.0 - eps_cut:
            continue
        chain = [best_end]
        while chain[-1] != s0:
            chain.append(prev[chain[-1]])
        chain.reverse()
        faces: list[int] = []
        for s in chain:
            faces.append(enter_face(s))
            faces.append(tg.nodes[s // 2][2])
        for piece in _decompose_walk(faces):
            if len(piece) < 6:
                continue
            cut = _cut_from_faces(lg, piece, x, pair_arc)
            if cut.violation > eps_cut:
                best.setdefault(cut.key(), cut)
    cuts = sorted(best.values(), key=lambda c: (-c.violation, c.key()))
    return cuts[:max_cuts]


def recover_cycle(tg: TransformedGraph, node_ids: Sequence[int]) -> CycleCut:
    """Map a cycle of transformed-graph nodes back to a level cycle.

    ``node_ids`` must be consecutive-adjacent and cyclically closed.  Raises
    DegenerateCycleError when the recovered walk revisits a face, in which
    case the cycle does not correspond to a single simple level cycle.
    """
    k = len(node_ids)
    if k < 3:
        raise ValueError("need at least three nodes")
    lowers: list[int] = []
    uppers: list[int] = []
    arcs: list[tuple[int, int]] = []
    for t in range(k):
        nid, nxt = node_ids[t], node_ids[(t + 1) % k]
        a1, b1, w1 = tg.nodes[nid]
        a2, b2, w2 = tg.nodes[nxt]
        if w1 == w2:
            raise ValueError("consecutive nodes share their upper face")
        shared = {a1, b1} & {a2, b2}
        if len(shared) != 1:
            raise ValueError("consecutive nodes must share one lower face")
        lowers.append(shared.pop())
        uppers.append(w2)
    if len(set(lowers)) != k or len(set(uppers)) != k:
        raise DegenerateCycleError("recovered walk revisits a face")
    # traversal for node t+1: enter at lowers[t], leave at lowers[t+1]
    value = 0.0
    cycle_arcs: list[int] = []
    for t in range(k):
        nid = node_ids[(t + 1) % k]
        a, b, _ = tg.nodes[nid]
        arc_a, arc_b = tg.node_arcs[nid]
        xa, xb = tg.node_x[nid]
        enter = lowers[t]
        first, second = (arc_a, arc_b) if a == enter else (arc_b, arc_a)
        cycle_arcs.extend((first, second))
        value += xa + xb
    rhs = k - 1  # |C| = 2k
    return CycleCut(tg.level_graph.index, tuple(cycle_arcs), rhs, value - rhs)


def _enumerate_cycles(lg: LevelGraph) -> Iterable[tuple[int, ...]]:
    """All simple cycles as alternating face tuples, deterministic order."""
    if len(lg.lower) > ENUMERATION_LIMIT or len(lg.upper) > ENUMERATION_LIMIT:
        raise ValueError(
            f"level too large for enumeration (> {ENUMERATION_LIMIT} faces)")
    adj: dict[int, list[int]] = {}
    for _, up, low in lg.edges:
        adj.setdefault(up, []).append(low)
        adj.setdefault(low, []).append(up)
    for lst in adj.values():
        lst.sort()
    nodes = sorted(adj)
    for root in nodes:
        stack = [(root, iter(adj[root]))]
        path = [root]
        onpath = {root}
        while stack:
            v, it = stack[-1]
            w = next(it, None)
            if w is None:
                stack.pop()
                path.pop()
                onpath.discard(v)
                continue
            if w == root and len(path) >= 3 and path[1] < path[-1]:
                if len(path) < 6:
                    raise ValueError(
                        "4-cycle found; two upper faces share two lower faces")
                yield tuple(path)
                continue
            if w > root and w not in onpath:
                stack.append((w, iter(adj[w])))
                path.append(w)
                onpath.add(w)


def brute_force_separation(lg: LevelGraph, x,
                           eps_cut: float = 1e-6) -> CycleCut | None:
    """Exhaustive most-violated cycle, or None; guard at 30 faces per side."""
    pair_arc = _pair_to_arc(lg)
    best: CycleCut | None = None
    for faces in _enumerate_cycles(lg):
        if faces[0] in lg.adj_upper:
            # rotate so the cycle starts on a lower face
            faces = faces[1:] + faces[:1]
        cut = _cut_from_faces(lg, faces, x, pair_arc)
        if cut.violation > eps_cut and (best is None
                                        or cut.violation > best.violation):
            best = cut
    return best


def conservative_weight_audit(lg: LevelGraph, x) -> float:
    """Minimum over all simple cycles of sum(1/2 - x_a), inf when acyclic.

    Evaluated by grouping each cycle's arcs under its upper faces: every
    upper face on the cycle carries exactly two cycle arcs, so the weight is
    sum over those faces of (1 - x(two arcs)), which the matching
    inequalities keep nonnegative.
    """
    pair_arc = _pair_to_arc(lg)
    lowest = inf
    for faces in _enumerate_cycles(lg):
        if faces[0] in lg.adj_upper:
            faces = faces[1:] + faces[:1]
        total = 0.0
        k = len(faces)
        for t in range(1, k, 2):
            w = faces[t]
            a1 = pair_arc[(w, faces[t - 1])]
            a2 = pair_arc[(w, faces[(t + 1) % k])]
            total += 1.0 - float(x[a1]) - float(x[a2])
        lowest = min(lowest, total)
    return lowest
