"""Maximum Morse matchings of simplicial complexes.

A discrete Morse matching pairs faces with cofaces so that reversing the
paired Hasse arcs leaves every level acyclic; unmatched faces are critical.
This package minimizes the number of critical faces exactly by branch and
cut over a 0/1 formulation, with cycle-elimination cuts, homological lower
bounds over the rationals and prime fields, and a greedy-plus-augmentation
heuristic.  An embedded bounded-variable simplex method (compiled extension
with a pure-Python fallback) solves the relaxations; no external solver is
needed.

Typical use::

    from morsematch import dunce_hat, solve, SolverConfig
    res = solve(dunce_hat(), SolverConfig())
    res.report.counts      # critical faces per dimension, e.g. (1, 1, 1)
"""

from .complexes import (DisconnectedComplexError, HasseDiagram, LevelGraph,
                        SimplicialComplex, build_complex,
                        connected_components, hasse_diagram, is_connected,
                        level, split_components)
from .heuristic import augment_once, greedy_from_lp, improve
from .homology import (DEFAULT_FIELDS, BettiVector, FieldSpec,
                       best_betti_bounds, betti_numbers, boundary_matrix,
                       euler_characteristic, rank)
from .instances import (dunce_hat, full_simplex, instance_path,
                        list_instances, projective_plane,
                        random_connected_graph, simplex_boundary, triangle)
from .io import (ParseError, load_complex, matching_from_json,
                 matching_to_json, parse_facets, result_to_json)
from .matching import (CriticalReport, DiscreteMorseFunction, MatchingCheck,
                       MorseMatching, canonicalize_vertices, critical_report,
                       function_to_matching, is_discrete_morse_function,
                       is_morse_matching, matching_to_function)
from .separation import (CycleCut, brute_force_separation,
                         conservative_weight_audit, separate_level)
from .solver import (SolveResult, SolverConfig, SolveStats, SolveStatus,
                     prove_bound, solve)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # complexes
    "SimplicialComplex", "HasseDiagram", "LevelGraph",
    "DisconnectedComplexError", "build_complex", "hasse_diagram", "level",
    "is_connected", "connected_components", "split_components",
    # homology
    "FieldSpec", "BettiVector", "boundary_matrix", "rank", "betti_numbers",
    "euler_characteristic", "best_betti_bounds", "DEFAULT_FIELDS",
    # matchings and functions
    "MorseMatching", "MatchingCheck", "CriticalReport",
    "DiscreteMorseFunction", "is_morse_matching", "critical_report",
    "matching_to_function", "function_to_matching",
    "is_discrete_morse_function", "canonicalize_vertices",
    # heuristic
    "greedy_from_lp", "augment_once", "improve",
    # separation
    "CycleCut", "separate_level", "brute_force_separation",
    "conservative_weight_audit",
    # solver
    "SolverConfig", "SolveStatus", "SolveStats", "SolveResult", "solve",
    "prove_bound",
    # instances
    "triangle", "full_simplex", "simplex_boundary", "projective_plane",
    "dunce_hat", "random_connected_graph", "instance_path", "list_instances",
    # io
    "ParseError", "parse_facets", "load_complex", "matching_to_json",
    "matching_from_json", "result_to_json",
]
