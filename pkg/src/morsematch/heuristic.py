"""Primal heuristic: LP-guided greedy matching plus path-reversal augmentation.

The greedy pass adds arcs by decreasing LP value (ties by arc id) while the
per-level digraphs stay acyclic, tracked with an incremental topological
order.  Augmentation looks for a critical (i+1)-face with a unique directed
path to a critical i-face inside level i; reversing that path keeps the
matching valid, grows it by one arc, and removes two critical faces.
Uniqueness within the level suffices because directed cycles never leave a
level and the other levels' digraphs are unchanged by the flip.
"""

from __future__ import annotations

from dataclasses import dataclass

from .complexes import HasseDiagram
from .matching import MorseMatching, critical_report, is_morse_matching

__all__ = [
    "AugmentingPath",
    "greedy_from_lp",
    "augment_once",
    "improve",
]


@dataclass(frozen=True)
class AugmentingPath:
    level: int
    upper: int  # critical (i+1)-face the path starts at
    lower: int  # critical i-face it ends at
    faces: tuple[int, ...]
    arcs: tuple[int, ...]


class _LevelOrder:
    """Topological order of one level digraph under arc reversals."""

    def __init__(self, h: HasseDiagram, i: int):
        cx = h.complex
        nodes = list(cx.ids_of_dim(i + 1)) + list(cx.ids_of_dim(i))
        self.pos = {v: k for k, v in enumerate(nodes)}
        self.order = nodes
        self.out: dict[int, set[int]] = {v: set() for v in nodes}
        self.inn: dict[int, set[int]] = {v: set() for v in nodes}
        for a in h.arcs_at_level(i):
            u, low = h.arcs[a]
            self.out[u].add(low)
            self.inn[low].add(u)

    def try_reverse(self, u: int, low: int) -> bool:
        """Turn the arc u -> low around; False when that would close a cycle."""
        self.out[u].discard(low)
        self.inn[low].discard(u)
        pos = self.pos
        if pos[low] < pos[u]:
            self.out[low].add(u)
            self.inn[u].add(low)
            return True
        # forward region from u, bounded by low's position
        bound = pos[low]
        fwd = {u}
        stack = [u]
        cycle = False
        while stack and not cycle:
            v = stack.pop()
            for t in self.out[v]:
                if t == low:
                    cycle = True
                    break
                if pos[t] <= bound and t not in fwd:
                    fwd.add(t)
                    stack.append(t)
        if cycle:
            self.out[u].add(low)
            self.inn[low].add(u)
            return False
        # backward region from low, bounded by u's position
        floor_ = pos[u]
        bwd = {low}
        stack = [low]
        while stack:
            v = stack.pop()
            for t in self.inn[v]:
                if pos[t] >= floor_ and t not in bwd:
                    bwd.add(t)
                    stack.append(t)
        moved = sorted(bwd, key=pos.get) + sorted(fwd, key=pos.get)
        slots = sorted(pos[v] for v in moved)
        for slot, v in zip(slots, moved):
            self.order[slot] = v
            pos[v] = slot
        self.out[low].add(u)
        self.inn[u].add(low)
        return True


def greedy_from_lp(h: HasseDiagram, x) -> MorseMatching:
    """Maximal acyclic matching grown in decreasing LP-value order."""
    order = sorted(range(h.num_arcs), key=lambda a: (-float(x[a]), a))
    free = [True] * h.complex.num_faces
    levels: dict[int, _LevelOrder] = {}
    chosen: list[int] = []
    for a in order:
        u, low = h.arcs[a]
        if not (free[u] and free[low]):
            continue
        i = h.arc_level(a)
        if i not in levels:
            levels[i] = _LevelOrder(h, i)
        if levels[i].try_reverse(u, low):
            free[u] = free[low] = False
            chosen.append(a)
    return MorseMatching(h, frozenset(chosen))


def _path_counts(adj: dict[int, list[int]], target: int):
    """Lazy directed path counts into ``target``, saturated at 2.

    Returns (counts, resolve); resolve(v) fills counts for everything v can
    reach via an iterative post-order walk, valid because the digraph is a DAG.
    """
    counts: dict[int, int] = {target: 1}
    done = {target}

    def resolve(v: int) -> int:
        if v in done:
            return counts.get(v, 0)
        stack = [(v, iter(adj.get(v, ())))]
        active = {v}
        while stack:
            node, it = stack[-1]
            w = next(it, None)
            if w is None:
                total = 0
                for u in adj.get(node, ()):
                    total += counts.get(u, 0)
                    if total >= 2:
                        total = 2
                        break
                counts[node] = total
                done.add(node)
                active.discard(node)
                stack.pop()
                continue
            if w not in done and w not in active:
                active.add(w)
                stack.append((w, iter(adj.get(w, ()))))
        return counts[v]

    return counts, resolve


def augment_once(m: MorseMatching):
    """First critical pair with a unique connecting path, flipped; else None."""
    h = m.hasse
    cx = h.complex
    report = critical_report(m)
    crit = set(report.critical_faces)
    for i in range(cx.dim):
        crit_upper = [f for f in cx.ids_of_dim(i + 1) if f in crit]
        crit_lower = [f for f in cx.ids_of_dim(i) if f in crit]
        if not crit_upper or not crit_lower:
            continue
        adj: dict[int, list[int]] = {}
        arc_of: dict[tuple[int, int], int] = {}
        for a in h.arcs_at_level(i):
            u, low = h.arcs[a]
            src, dst = (low, u) if a in m.arcs else (u, low)
            adj.setdefault(src, []).append(dst)
            arc_of[(src, dst)] = a
        for lst in adj.values():
            lst.sort()
        count_cache: dict[int, tuple[dict, object]] = {}
        for g in crit_upper:
            for f in crit_lower:
                if f not in count_cache:
                    count_cache[f] = _path_counts(adj, f)
                counts, resolve = count_cache[f]
                if resolve(g) != 1:
                    continue
                faces = [g]
                arcs = []
                v = g
                while v != f:
                    nxt = next(w for w in adj.get(v, ())
                               if counts.get(w, 0) == 1)
                    arcs.append(arc_of[(v, nxt)])
                    faces.append(nxt)
                    v = nxt
                flipped = m.arcs.symmetric_difference(arcs)
                new = MorseMatching(h, frozenset(flipped))
                check = is_morse_matching(h, new.arcs)
                if not check:
                    raise AssertionError(f"augmentation broke the matching: {check}")
                if new.size != m.size + 1:
                    raise AssertionError("augmentation must add exactly one arc")
                return new, AugmentingPath(i, g, f, tuple(faces), tuple(arcs))
    return None


def improve(m: MorseMatching):
    """Augment until no unique-path pair remains; returns (matching, paths)."""
    paths: list[AugmentingPath] = []
    while True:
        step = augment_once(m)
        if step is None:
            return m, tuple(paths)
        m, path = step
        paths.append(path)
