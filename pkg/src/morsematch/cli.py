"""Command-line interface.

Subcommands: ``solve`` (exact branch-and-cut), ``betti`` (Betti numbers and
Euler characteristic), ``heuristic`` (greedy matching plus augmentation),
``check`` (validate a matching file), ``info`` (complex summary).  All output
is JSON on stdout unless ``-o`` names a file.

Exit codes: 0 on success, 2 when a solve stopped at a time or node limit
(the incumbent is still emitted), 1 on bad input or usage.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .complexes import (DisconnectedComplexError, hasse_diagram, is_connected,
                        level)
from .heuristic import greedy_from_lp, improve
from .homology import DEFAULT_FIELDS, FieldSpec, betti_numbers, \
    euler_characteristic
from .io import (ParseError, load_complex, matching_from_json,
                 matching_to_json, report_to_json, result_to_json, write_json)
from .matching import critical_report, is_morse_matching
from .solver import SolverConfig, SolveStatus, solve

__all__ = ["main"]


class _Parser(argparse.ArgumentParser):
    """argparse with usage errors reported via exit code 1, not 2."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _fields_arg(text: str) -> tuple[FieldSpec, ...]:
    try:
        return tuple(FieldSpec.parse(part) for part in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _emit(doc, path: str | None) -> None:
    if path is None or path == "-":
        write_json(doc, sys.stdout)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            write_json(doc, fh)


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("complex", help="facet-list file (one facet per line)")
    p.add_argument("-o", "--output", metavar="PATH", default=None,
                   help="write JSON here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    top = _Parser(prog="morsematch",
                  description="Minimize critical faces of a simplicial "
                              "complex via maximum Morse matchings.")
    sub = top.add_subparsers(dest="command", required=True, metavar="command")

    ps = sub.add_parser("solve", help="prove a minimum-critical matching")
    _add_common(ps)
    ps.add_argument("--fields", type=_fields_arg, default=DEFAULT_FIELDS,
                    metavar="SPEC", help="comma-separated coefficient fields "
                    "for the lower bound, e.g. Q,GF(2) (default)")
    ps.add_argument("--time-limit", type=float, default=None, metavar="SEC")
    ps.add_argument("--node-limit", type=int, default=None, metavar="N")
    ps.add_argument("--branching", default="pseudocost",
                    choices=("pseudocost", "most_fractional"))
    ps.add_argument("--split-components", action="store_true",
                    help="solve connected components independently")
    ps.add_argument("--no-separation", action="store_true",
                    help="rely on lazy cuts only (no fractional separation)")
    ps.add_argument("--gomory", action="store_true",
                    help="also add Gomory mixed-integer cuts at the root")
    ps.add_argument("--max-cuts-per-level", type=int, default=20, metavar="K")
    ps.add_argument("--heuristic-frequency", type=int, default=10, metavar="K",
                    help="run the rounding heuristic every K nodes")
    ps.add_argument("--debug-dir", default=None, metavar="DIR",
                    help="dump per-node LP snapshots here")
    ps.add_argument("--seed", type=int, default=0,
                    help="reserved for auxiliary randomized tooling; the "
                    "search itself is deterministic")
    ps.set_defaults(func=_cmd_solve)

    pb = sub.add_parser("betti", help="Betti numbers and Euler characteristic")
    _add_common(pb)
    pb.add_argument("--fields", type=_fields_arg, default=DEFAULT_FIELDS,
                    metavar="SPEC", help="comma-separated fields, e.g. Q,GF(2)")
    pb.set_defaults(func=_cmd_betti)

    ph = sub.add_parser("heuristic",
                        help="greedy matching plus augmentation, no proof")
    _add_common(ph)
    ph.add_argument("--lp-point", default=None, metavar="PATH",
                    help="JSON list of per-arc values guiding the greedy "
                    "order (default: all zeros)")
    ph.add_argument("--matching-out", default=None, metavar="PATH",
                    help="also write the matching itself as JSON")
    ph.add_argument("--seed", type=int, default=0,
                    help="reserved for auxiliary randomized tooling")
    ph.set_defaults(func=_cmd_heuristic)

    pc = sub.add_parser("check", help="validate a matching file")
    _add_common(pc)
    pc.add_argument("matching", help="matching JSON (upper/lower label pairs)")
    pc.set_defaults(func=_cmd_check)

    pi = sub.add_parser("info", help="sizes, f-vector, connectivity")
    _add_common(pi)
    pi.set_defaults(func=_cmd_info)

    return top


def _cmd_solve(args) -> int:
    cx = load_complex(args.complex)
    config = SolverConfig(
        fields=args.fields,
        max_cuts_per_level=args.max_cuts_per_level,
        heuristic_frequency=args.heuristic_frequency,
        branching=args.branching,
        use_separation=not args.no_separation,
        use_gomory=args.gomory,
        time_limit=args.time_limit,
        node_limit=args.node_limit,
        split_components=args.split_components,
        debug_dir=args.debug_dir,
    )
    res = solve(cx, config)
    _emit(result_to_json(res, cx), args.output)
    return 0 if res.status is SolveStatus.OPTIMAL else 2


def _cmd_betti(args) -> int:
    cx = load_complex(args.complex)
    doc = {
        "f_vector": list(cx.f_vector),
        "euler_characteristic": euler_characteristic(cx),
        "betti": {str(f): list(betti_numbers(cx, f).betti)
                  for f in args.fields},
    }
    _emit(doc, args.output)
    return 0


def _load_lp_point(path: str, num_arcs: int) -> np.ndarray:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(path, None, str(exc))
    if (not isinstance(data, list) or len(data) != num_arcs
            or not all(isinstance(v, (int, float)) for v in data)):
        raise ParseError(path, None,
                         f"expected a JSON list of {num_arcs} numbers")
    return np.asarray(data, dtype=float)


def _cmd_heuristic(args) -> int:
    cx = load_complex(args.complex)
    h = hasse_diagram(cx)
    x = (np.zeros(h.num_arcs) if args.lp_point is None
         else _load_lp_point(args.lp_point, h.num_arcs))
    m, _ = improve(greedy_from_lp(h, x))
    report = critical_report(m)
    _emit(report_to_json(report, cx), args.output)
    if args.matching_out is not None:
        with open(args.matching_out, "w", encoding="utf-8") as fh:
            write_json(matching_to_json(m), fh)
    return 0


def _cmd_check(args) -> int:
    cx = load_complex(args.complex)
    h = hasse_diagram(cx)
    try:
        with open(args.matching, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(args.matching, None, str(exc))
    m = matching_from_json(h, data, source=args.matching)
    verdict = is_morse_matching(h, m.arcs)
    if verdict.ok:
        _emit({"ok": True, "size": m.size,
               "critical": report_to_json(critical_report(m), cx)},
              args.output)
        return 0
    doc = {"ok": False}
    if verdict.overmatched_face is not None:
        doc["overmatched_face"] = list(cx.face_labels(verdict.overmatched_face))
    if verdict.cycle is not None:
        doc["cycle"] = [list(cx.face_labels(f)) for f in verdict.cycle]
    _emit(doc, args.output)
    return 1


def _cmd_info(args) -> int:
    cx = load_complex(args.complex)
    h = hasse_diagram(cx)
    levels = []
    for i in range(cx.dim):
        lg = level(h, i)
        levels.append({"level": i, "upper_faces": len(lg.upper),
                       "lower_faces": len(lg.lower), "arcs": len(lg.edges)})
    doc = {
        "num_vertices": cx.num_vertices,
        "num_faces": cx.num_faces,
        "num_arcs": h.num_arcs,
        "dim": cx.dim,
        "f_vector": list(cx.f_vector),
        "connected": is_connected(cx),
        "levels": levels,
    }
    _emit(doc, args.output)
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"morsematch: error: {exc}", file=sys.stderr)
        return 1
    except DisconnectedComplexError as exc:
        print(f"morsematch: error: {exc} (use --split-components)",
              file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
