"""Built-in test instances and small random generators."""

from __future__ import annotations

import random
from importlib import resources
from itertools import combinations

from .complexes import SimplicialComplex, build_complex

__all__ = [
    "PROJECTIVE_PLANE_FACETS",
    "DUNCE_HAT_FACETS",
    "triangle",
    "full_simplex",
    "simplex_boundary",
    "projective_plane",
    "dunce_hat",
    "random_connected_graph",
    "instance_path",
    "list_instances",
]

# 6-vertex triangulation of the real projective plane: 2-neighborly, every
# edge in exactly two triangles, chi = 1.
PROJECTIVE_PLANE_FACETS: tuple[tuple[int, ...], ...] = (
    (1, 2, 4), (1, 2, 6), (1, 3, 4), (1, 3, 5), (1, 5, 6),
    (2, 3, 5), (2, 3, 6), (2, 4, 5), (3, 4, 6), (4, 5, 6),
)

# 8-vertex dunce hat: a triangulated disk whose boundary is glued along the
# word e e e^-1.  Contractible but not collapsible; f = (8, 24, 17).
DUNCE_HAT_FACETS: tuple[tuple[int, ...], ...] = (
    (1, 2, 4), (2, 3, 4), (3, 4, 5), (1, 3, 5), (1, 2, 5),
    (2, 5, 6), (2, 3, 6), (1, 3, 6), (1, 6, 7), (1, 3, 7),
    (2, 3, 7), (2, 7, 8), (1, 2, 8), (1, 4, 8), (4, 5, 6),
    (4, 6, 7), (4, 7, 8),
)


def triangle() -> SimplicialComplex:
    """The full triangle on three vertices: f = (3, 3, 1)."""
    return build_complex([(1, 2, 3)])


def full_simplex(k: int) -> SimplicialComplex:
    """The full k-simplex on vertices 1..k+1."""
    if k < 0:
        raise ValueError("dimension must be nonnegative")
    return build_complex([tuple(range(1, k + 2))])


def simplex_boundary(d: int) -> SimplicialComplex:
    """The boundary of the d-simplex, a triangulated (d-1)-sphere."""
    if d < 1:
        raise ValueError("need d >= 1 for a nonempty boundary")
    return build_complex(list(combinations(range(1, d + 2), d)))


def projective_plane() -> SimplicialComplex:
    return build_complex(PROJECTIVE_PLANE_FACETS)


def dunce_hat() -> SimplicialComplex:
    return build_complex(DUNCE_HAT_FACETS)


def random_connected_graph(rng: random.Random, max_vertices: int = 12,
                           max_edges: int = 30) -> tuple[tuple[int, int], ...]:
    """Edge facets of a random connected graph on 1..nv, spanning tree first."""
    nv = rng.randint(2, max_vertices)
    edges: set[tuple[int, int]] = set()
    for v in range(2, nv + 1):
        u = rng.randint(1, v - 1)
        edges.add((u, v))
    cap = min(max_edges, nv * (nv - 1) // 2)
    target = rng.randint(len(edges), cap)
    pool = [e for e in combinations(range(1, nv + 1), 2) if e not in edges]
    rng.shuffle(pool)
    for e in pool:
        if len(edges) >= target:
            break
        edges.add(e)
    return tuple(sorted(edges))


def instance_path(name: str):
    """Path to a bundled facet-list file, e.g. 'projective_plane'."""
    res = resources.files(__package__).joinpath("data", f"{name}.fl")
    if not res.is_file():
        raise FileNotFoundError(f"no bundled instance {name!r}")
    return res


def list_instances() -> list[str]:
    data = resources.files(__package__).joinpath("data")
    return sorted(p.name[:-3] for p in data.iterdir() if p.name.endswith(".fl"))
