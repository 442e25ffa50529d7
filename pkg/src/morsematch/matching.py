"""Morse matchings on a Hasse diagram and discrete Morse functions.

A matching M in the Hasse diagram is Morse when reversing its arcs leaves
the diagram acyclic.  Any directed cycle in the modified diagram alternates
matched and unmatched arcs strictly, so it stays inside a single level; all
validity checks here work level by level.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .complexes import (DisconnectedComplexError, HasseDiagram, is_connected)

__all__ = [
    "MorseMatching",
    "MatchingCheck",
    "FunctionCheck",
    "CriticalReport",
    "DiscreteMorseFunction",
    "is_morse_matching",
    "critical_report",
    "matching_to_function",
    "function_to_matching",
    "is_discrete_morse_function",
    "canonicalize_vertices",
]


@dataclass(frozen=True)
class MorseMatching:
    """A set of Hasse arc ids; validity is checked by is_morse_matching."""

    hasse: HasseDiagram
    arcs: frozenset[int]

    def __post_init__(self):
        bad = [a for a in self.arcs if not 0 <= a < self.hasse.num_arcs]
        if bad:
            raise ValueError(f"arc ids out of range: {sorted(bad)[:5]}")

    @property
    def size(self) -> int:
        return len(self.arcs)

    def partner(self) -> dict[int, int]:
        """Map each matched face to the face it is matched with."""
        out: dict[int, int] = {}
        for a in self.arcs:
            u, low = self.hasse.arcs[a]
            out[u] = low
            out[low] = u
        return out


@dataclass(frozen=True)
class MatchingCheck:
    ok: bool
    overmatched_face: int | None = None
    cycle: tuple[int, ...] | None = None  # face ids along a directed cycle

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class FunctionCheck:
    ok: bool
    face: int | None = None
    reason: str | None = None

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class CriticalReport:
    counts: tuple[int, ...]  # critical faces per dimension
    critical_faces: tuple[int, ...]

    @property
    def total(self) -> int:
        return sum(self.counts)


@dataclass(frozen=True)
class DiscreteMorseFunction:
    hasse: HasseDiagram
    values: tuple[float, ...]  # indexed by face id

    def __post_init__(self):
        if len(self.values) != self.hasse.complex.num_faces:
            raise ValueError("one value per face required")


def _level_digraph(h: HasseDiagram, arcs: frozenset[int],
                   i: int) -> dict[int, list[int]]:
    """Level i with matched arcs pointing up and the rest pointing down."""
    adj: dict[int, list[int]] = {}
    for a in h.arcs_at_level(i):
        u, low = h.arcs[a]
        if a in arcs:
            adj.setdefault(low, []).append(u)
        else:
            adj.setdefault(u, []).append(low)
    for lst in adj.values():
        lst.sort()
    return adj


def _find_cycle(nodes: Iterable[int],
                adj: Mapping[int, Sequence[int]]) -> tuple[int, ...] | None:
    color = {v: 0 for v in nodes}
    for s in sorted(color):
        if color[s]:
            continue
        stack = [(s, iter(adj.get(s, ())))]
        color[s] = 1
        path = [s]
        while stack:
            v, it = stack[-1]
            w = next(it, None)
            if w is None:
                color[v] = 2
                stack.pop()
                path.pop()
                continue
            if color[w] == 1:
                return tuple(path[path.index(w):])
            if color[w] == 0:
                color[w] = 1
                stack.append((w, iter(adj.get(w, ()))))
                path.append(w)
    return None


def is_morse_matching(h: HasseDiagram, arcs: Iterable[int]) -> MatchingCheck:
    """Check the matching property and acyclicity, with a witness on failure."""
    arcs = frozenset(arcs)
    seen: dict[int, int] = {}
    for a in sorted(arcs):
        if not 0 <= a < h.num_arcs:
            raise ValueError(f"arc id {a} out of range")
        for f in h.arcs[a]:
            if f in seen:
                return MatchingCheck(False, overmatched_face=f)
            seen[f] = a
    cx = h.complex
    for i in range(cx.dim):
        adj = _level_digraph(h, arcs, i)
        nodes = list(cx.ids_of_dim(i)) + list(cx.ids_of_dim(i + 1))
        cyc = _find_cycle(nodes, adj)
        if cyc is not None:
            return MatchingCheck(False, cycle=cyc)
    return MatchingCheck(True)


def critical_report(matching: MorseMatching) -> CriticalReport:
    cx = matching.hasse.complex
    matched = set()
    for a in matching.arcs:
        matched.update(matching.hasse.arcs[a])
    crit = tuple(f for f in range(cx.num_faces) if f not in matched)
    counts = [0] * (cx.dim + 1)
    for f in crit:
        counts[cx.face_dim(f)] += 1
    report = CriticalReport(tuple(counts), crit)
    if report.total != cx.num_faces - 2 * matching.size:
        raise AssertionError("critical face count disagrees with matching size")
    return report


def matching_to_function(matching: MorseMatching) -> DiscreteMorseFunction:
    """Integer-valued function decreasing along the modified Hasse diagram.

    Faces get n-1 minus their position in a deterministic topological order
    of the modified diagram, so matched pairs satisfy f(upper) < f(lower)
    and every other covering pair satisfies f(upper) > f(lower).
    """
    h = matching.hasse
    check = is_morse_matching(h, matching.arcs)
    if not check:
        raise ValueError(f"not a Morse matching: {check}")
    n = h.complex.num_faces
    adj: dict[int, list[int]] = {}
    indeg = [0] * n
    for a in range(h.num_arcs):
        u, low = h.arcs[a]
        src, dst = (low, u) if a in matching.arcs else (u, low)
        adj.setdefault(src, []).append(dst)
        indeg[dst] += 1
    ready = [f for f in range(n) if indeg[f] == 0]
    heapq.heapify(ready)
    values = [0] * n
    pos = 0
    while ready:
        f = heapq.heappop(ready)
        values[f] = n - 1 - pos
        pos += 1
        for w in adj.get(f, ()):
            indeg[w] -= 1
            if indeg[w] == 0:
                heapq.heappush(ready, w)
    if pos != n:
        raise AssertionError("modified Hasse diagram was not acyclic")
    return DiscreteMorseFunction(h, tuple(values))


def function_to_matching(h: HasseDiagram,
                         f: DiscreteMorseFunction) -> MorseMatching:
    """Pair each covering arc whose upper value does not exceed the lower."""
    chosen = [a for a in range(h.num_arcs)
              if f.values[h.arcs[a][0]] <= f.values[h.arcs[a][1]]]
    m = MorseMatching(h, frozenset(chosen))
    check = is_morse_matching(h, m.arcs)
    if not check:
        raise ValueError(f"function does not induce a Morse matching: {check}")
    return m


def is_discrete_morse_function(h: HasseDiagram,
                               f: DiscreteMorseFunction) -> FunctionCheck:
    """At most one exceptional covering pair on each side of every face."""
    cx = h.complex
    for fid in range(cx.num_faces):
        up_bad = 0
        down_bad = 0
        for a in h.incident[fid]:
            u, low = h.arcs[a]
            if low == fid and f.values[u] <= f.values[fid]:
                up_bad += 1
            elif u == fid and f.values[low] >= f.values[fid]:
                down_bad += 1
        if up_bad > 1:
            return FunctionCheck(False, fid, "two cofacets with smaller value")
        if down_bad > 1:
            return FunctionCheck(False, fid, "two facets with larger value")
    return FunctionCheck(True)


def canonicalize_vertices(matching: MorseMatching) -> MorseMatching:
    """Rebuild the vertex level so exactly one vertex is critical.

    Drops all vertex-edge arcs, then rematches every non-root vertex with its
    parent edge in a BFS tree of the 1-skeleton restricted to edges that are
    not matched upward to a 2-face.  Levels above the edges are untouched, so
    critical counts in dimensions >= 2 are preserved and the total never grows.
    """
    h = matching.hasse
    cx = h.complex
    if not is_connected(cx):
        raise DisconnectedComplexError(
            "vertex canonicalization needs a connected complex")
    if cx.dim == 0:
        return matching

    edges_up = set()  # edge face ids matched to a 2-face
    kept = set()
    for a in matching.arcs:
        u, low = h.arcs[a]
        if cx.face_dim(low) == 0:
            continue  # vertex-edge arc, rebuilt below
        kept.add(a)
        if cx.face_dim(low) == 1:
            edges_up.add(low)

    neighbors: dict[int, list[tuple[int, int]]] = {}  # vertex -> (vertex, edge fid)
    for eid in cx.ids_of_dim(1):
        if eid in edges_up:
            continue
        u, v = cx.face_key(eid)
        neighbors.setdefault(u, []).append((v, eid))
        neighbors.setdefault(v, []).append((u, eid))
    for lst in neighbors.values():
        lst.sort()

    root = 0
    seen = {root}
    order = [root]
    parent_edge: dict[int, int] = {}
    k = 0
    while k < len(order):
        v = order[k]
        k += 1
        for w, eid in neighbors.get(v, ()):
            if w not in seen:
                seen.add(w)
                parent_edge[w] = eid
                order.append(w)
    if len(seen) != cx.num_vertices:
        raise AssertionError(
            "skeleton minus upward-matched edges must stay connected")

    for v, eid in parent_edge.items():
        kept.add(h.arc_ids[(eid, v)])
    return MorseMatching(h, frozenset(kept))
