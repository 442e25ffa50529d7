"""Finite abstract simplicial complexes and their Hasse diagrams.

Faces are stored as sorted tuples of dense internal vertex ids and addressed
by dense face ids, ordered by dimension and lexicographically within a
dimension.  Original vertex labels (ints or strings) are kept for output.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Hashable, Sequence

FaceKey = tuple[int, ...]

__all__ = [
    "Face",
    "SimplicialComplex",
    "HasseDiagram",
    "LevelGraph",
    "DisconnectedComplexError",
    "build_complex",
    "hasse_diagram",
    "level",
    "is_connected",
    "connected_components",
    "split_components",
]


class DisconnectedComplexError(ValueError):
    """Raised when an operation requires a connected complex."""


@dataclass(frozen=True)
class Face:
    """A single face, as a strictly increasing tuple of internal vertex ids."""

    vertices: tuple[int, ...]

    def __post_init__(self):
        v = self.vertices
        if not v:
            raise ValueError("a face needs at least one vertex")
        if any(v[k] >= v[k + 1] for k in range(len(v) - 1)):
            raise ValueError(f"face vertices must be strictly increasing: {v}")

    @property
    def dim(self) -> int:
        return len(self.vertices) - 1


def _label_key(label: Hashable):
    # ints sort numerically before any string labels; strings sort lexically
    if isinstance(label, bool) or not isinstance(label, int):
        return (1, str(label))
    return (0, label)


class SimplicialComplex:
    """Downward-closed face set with dense ids and label bookkeeping.

    Face ids run 0..n-1, dimension-major; within a dimension faces are in
    lexicographic order of their vertex tuples.  ``labels[v]`` maps the
    internal vertex id ``v`` back to the token it was built from.
    """

    def __init__(self, faces_by_dim: Sequence[Sequence[FaceKey]],
                 labels: Sequence[Hashable], facets: Sequence[FaceKey]):
        self.faces_by_dim: tuple[tuple[FaceKey, ...], ...] = tuple(
            tuple(fs) for fs in faces_by_dim)
        self.labels: tuple[Hashable, ...] = tuple(labels)
        self.facets: tuple[FaceKey, ...] = tuple(facets)
        self.dim: int = len(self.faces_by_dim) - 1
        self.f_vector: tuple[int, ...] = tuple(len(fs) for fs in self.faces_by_dim)
        offsets = [0]
        for count in self.f_vector:
            offsets.append(offsets[-1] + count)
        self._offsets: tuple[int, ...] = tuple(offsets)
        self.num_faces: int = offsets[-1]
        self._face_ids: dict[FaceKey, int] = {}
        for fs in self.faces_by_dim:
            for key in fs:
                self._face_ids[key] = len(self._face_ids)

    @property
    def num_vertices(self) -> int:
        return self.f_vector[0]

    def face_key(self, fid: int) -> FaceKey:
        d = self.face_dim(fid)
        return self.faces_by_dim[d][fid - self._offsets[d]]

    def face_dim(self, fid: int) -> int:
        if not 0 <= fid < self.num_faces:
            raise IndexError(f"face id {fid} out of range")
        d = 0
        while self._offsets[d + 1] <= fid:
            d += 1
        return d

    def face(self, fid: int) -> Face:
        return Face(self.face_key(fid))

    def id_of(self, vertices: Iterable[int]) -> int:
        key = tuple(sorted(vertices))
        try:
            return self._face_ids[key]
        except KeyError:
            raise KeyError(f"no face with vertices {key}") from None

    def has_face(self, vertices: Iterable[int]) -> bool:
        return tuple(sorted(vertices)) in self._face_ids

    def ids_of_dim(self, d: int) -> range:
        return range(self._offsets[d], self._offsets[d + 1])

    def face_labels(self, fid: int) -> tuple[Hashable, ...]:
        return tuple(self.labels[v] for v in self.face_key(fid))

    def __repr__(self) -> str:
        return f"SimplicialComplex(f={self.f_vector})"


def build_complex(facets: Iterable[Iterable[Hashable]],
                  labels: Sequence[Hashable] | None = None) -> SimplicialComplex:
    """Build a complex as the downward closure of the given facets.

    Vertex tokens may be arbitrary hashables; they are renumbered densely in
    sorted order (ints first, numerically, then other tokens by string).  An
    explicit ``labels`` sequence pins the vertex order instead and must cover
    every token used.  Duplicate facets are dropped; a facet with a repeated
    vertex or an empty facet is an error.
    """
    raw: list[tuple[Hashable, ...]] = []
    for fac in facets:
        toks = tuple(fac)
        if not toks:
            raise ValueError("empty facet")
        if len(set(toks)) != len(toks):
            raise ValueError(f"facet {toks!r} repeats a vertex")
        raw.append(toks)
    if not raw:
        raise ValueError("no facets given")

    seen = set()
    for fac in raw:
        seen.update(fac)
    if labels is None:
        label_order = sorted(seen, key=_label_key)
    else:
        label_order = list(labels)
        if len(set(label_order)) != len(label_order):
            raise ValueError("labels repeat a token")
        missing = seen.difference(label_order)
        if missing:
            raise ValueError(f"labels missing tokens: {sorted(missing, key=_label_key)}")
    vid = {tok: i for i, tok in enumerate(label_order)}

    facet_keys = sorted({tuple(sorted(vid[t] for t in fac)) for fac in raw},
                        key=lambda k: (len(k), k))
    closure: set[FaceKey] = set()
    for key in facet_keys:
        for r in range(1, len(key) + 1):
            closure.update(combinations(key, r))
    top = max(len(k) for k in closure) - 1
    faces_by_dim: list[list[FaceKey]] = [[] for _ in range(top + 1)]
    for key in sorted(closure, key=lambda k: (len(k), k)):
        faces_by_dim[len(key) - 1].append(key)
    maximal = [k for k in facet_keys
               if not any(set(k) < set(other) for other in facet_keys)]
    return SimplicialComplex(faces_by_dim, label_order, maximal)


class HasseDiagram:
    """All covering arcs of a complex, each from an (i+1)-face to an i-face.

    Arc ids are dense and ordered by (level, upper face id, lower face id),
    so the arcs of one level occupy a contiguous id range.  ``incident[f]``
    lists the arc ids touching face ``f`` in ascending order.
    """

    def __init__(self, cx: SimplicialComplex):
        self.complex = cx
        arcs: list[tuple[int, int]] = []
        level_start = [0] * (cx.dim + 1)
        for i in range(cx.dim):
            level_start[i] = len(arcs)
            for ufid in cx.ids_of_dim(i + 1):
                key = cx.face_key(ufid)
                lows = sorted(cx.id_of(key[:k] + key[k + 1:])
                              for k in range(len(key)))
                arcs.extend((ufid, lfid) for lfid in lows)
        level_start[cx.dim] = len(arcs)
        self.arcs: tuple[tuple[int, int], ...] = tuple(arcs)
        self.num_arcs: int = len(arcs)
        self._level_start = tuple(level_start)
        self.arc_ids: dict[tuple[int, int], int] = {
            arc: a for a, arc in enumerate(arcs)}
        incident: list[list[int]] = [[] for _ in range(cx.num_faces)]
        for a, (u, low) in enumerate(arcs):
            incident[u].append(a)
            incident[low].append(a)
        self.incident: tuple[tuple[int, ...], ...] = tuple(
            tuple(lst) for lst in incident)

    def arc_level(self, a: int) -> int:
        return self.complex.face_dim(self.arcs[a][1])

    def arcs_at_level(self, i: int) -> range:
        if not 0 <= i < max(self.complex.dim, 1):
            raise IndexError(f"no level {i} in a {self.complex.dim}-complex")
        if self.complex.dim == 0:
            return range(0)
        return range(self._level_start[i], self._level_start[i + 1])

    def __repr__(self) -> str:
        return f"HasseDiagram(n={self.complex.num_faces}, m={self.num_arcs})"


@dataclass(frozen=True)
class LevelGraph:
    """The bipartite subgraph of one Hasse level, i-faces versus (i+1)-faces."""

    index: int
    lower: tuple[int, ...]
    upper: tuple[int, ...]
    edges: tuple[tuple[int, int, int], ...]  # (arc id, upper face, lower face)
    adj_lower: dict[int, tuple[tuple[int, int], ...]]  # lower -> (arc, upper)
    adj_upper: dict[int, tuple[tuple[int, int], ...]]  # upper -> (arc, lower)

    @classmethod
    def from_edges(cls, index: int,
                   edges: Iterable[tuple[int, int, int]]) -> "LevelGraph":
        edges = tuple(edges)
        arcs_seen = set()
        pairs_seen = set()
        a_low: dict[int, list[tuple[int, int]]] = {}
        a_up: dict[int, list[tuple[int, int]]] = {}
        for arc, up, low in edges:
            if arc in arcs_seen:
                raise ValueError(f"arc id {arc} repeated")
            if (up, low) in pairs_seen:
                raise ValueError(f"edge ({up}, {low}) repeated")
            arcs_seen.add(arc)
            pairs_seen.add((up, low))
            a_low.setdefault(low, []).append((arc, up))
            a_up.setdefault(up, []).append((arc, low))
        lower = tuple(sorted(a_low))
        upper = tuple(sorted(a_up))
        return cls(index, lower, upper,
                   edges,
                   {v: tuple(sorted(lst)) for v, lst in a_low.items()},
                   {w: tuple(sorted(lst)) for w, lst in a_up.items()})

    def arc_id(self, upper: int, lower: int) -> int:
        for arc, low in self.adj_upper[upper]:
            if low == lower:
                return arc
        raise KeyError(f"no edge ({upper}, {lower}) at level {self.index}")


def hasse_diagram(cx: SimplicialComplex) -> HasseDiagram:
    """Enumerate all covering arcs of the complex."""
    return HasseDiagram(cx)


def level(h: HasseDiagram, i: int) -> LevelGraph:
    """Extract level i of the Hasse diagram as a bipartite graph."""
    edges = [(a, *h.arcs[a]) for a in h.arcs_at_level(i)]
    lg = LevelGraph.from_edges(i, edges)
    # faces of the level with no incident arc still belong to it
    lower = tuple(h.complex.ids_of_dim(i))
    upper = tuple(h.complex.ids_of_dim(i + 1))
    adj_low = dict(lg.adj_lower)
    adj_up = dict(lg.adj_upper)
    for v in lower:
        adj_low.setdefault(v, ())
    for w in upper:
        adj_up.setdefault(w, ())
    return LevelGraph(i, lower, upper, lg.edges, adj_low, adj_up)


def connected_components(cx: SimplicialComplex) -> list[tuple[int, ...]]:
    """Vertex sets of the 1-skeleton components, sorted by smallest member."""
    nv = cx.num_vertices
    neighbors: list[list[int]] = [[] for _ in range(nv)]
    if cx.dim >= 1:
        for key in cx.faces_by_dim[1]:
            u, v = key
            neighbors[u].append(v)
            neighbors[v].append(u)
    seen = [False] * nv
    comps: list[tuple[int, ...]] = []
    for s in range(nv):
        if seen[s]:
            continue
        stack = [s]
        seen[s] = True
        comp = []
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in neighbors[v]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        comps.append(tuple(sorted(comp)))
    return comps


def is_connected(cx: SimplicialComplex) -> bool:
    """True when the 1-skeleton is connected (single vertices count)."""
    return len(connected_components(cx)) == 1


def split_components(cx: SimplicialComplex) -> list[tuple[SimplicialComplex, tuple[int, ...]]]:
    """Split into connected subcomplexes.

    Returns one ``(subcomplex, face_map)`` pair per component, where
    ``face_map[sub_fid]`` is the face id in the parent complex.  Each facet
    lies in exactly one component, so the split is a partition of the faces.
    """
    comps = connected_components(cx)
    out: list[tuple[SimplicialComplex, tuple[int, ...]]] = []
    for comp in comps:
        members = set(comp)
        facs = [tuple(cx.labels[v] for v in key)
                for key in cx.facets if members.issuperset(key)]
        sub = build_complex(facs, labels=[cx.labels[v] for v in comp])
        back = {lab: v for v, lab in enumerate(cx.labels)}
        face_map = tuple(
            cx.id_of(back[lab] for lab in sub.face_labels(fid))
            for fid in range(sub.num_faces))
        out.append((sub, face_map))
    return out
