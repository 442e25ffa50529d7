"""Text and JSON interchange: facet lists, matchings, reports, results.

Facet-list format: one facet per line as whitespace-separated vertex tokens;
``#`` starts a comment (full line or trailing); blank lines are ignored.
Tokens that parse as integers become integer vertex labels, everything else
stays a string.  Matchings travel as ``[{"upper": [...], "lower": [...]},
...]`` with faces given by their vertex labels, and solve results as a
single JSON document carrying a schema version.
"""

from __future__ import annotations

import json
from dataclasses import asdict
from typing import IO, Hashable, Iterable

from .complexes import HasseDiagram, SimplicialComplex, build_complex
from .matching import CriticalReport, MorseMatching

__all__ = [
    "ParseError",
    "RESULT_SCHEMA_VERSION",
    "parse_facets",
    "load_complex",
    "matching_to_json",
    "matching_from_json",
    "report_to_json",
    "result_to_json",
    "write_json",
]

RESULT_SCHEMA_VERSION = 1


class ParseError(ValueError):
    """Input that could not be parsed, with its source location."""

    def __init__(self, source: str, line: int | None, message: str):
        where = source if line is None else f"{source}:{line}"
        super().__init__(f"{where}: {message}")
        self.source = source
        self.line = line


def _token(text: str) -> Hashable:
    try:
        return int(text)
    except ValueError:
        return text


def parse_facets(lines: Iterable[str] | str,
                 source: str = "<string>") -> list[list[Hashable]]:
    """Parse facet-list text into a list of facets (lists of vertex tokens)."""
    if isinstance(lines, str):
        lines = lines.splitlines()
    facets: list[list[Hashable]] = []
    lineno = 0
    for raw in lines:
        lineno += 1
        body = raw.split("#", 1)[0].strip()
        if not body:
            continue
        toks = [_token(t) for t in body.split()]
        if len(set(toks)) != len(toks):
            raise ParseError(source, lineno, f"facet repeats a vertex: {body!r}")
        facets.append(toks)
    if not facets:
        raise ParseError(source, None, "no facets found")
    return facets


def load_complex(path) -> SimplicialComplex:
    """Read a facet-list file and build its complex."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            facets = parse_facets(fh, source=str(path))
    except OSError as exc:
        raise ParseError(str(path), None, f"cannot read file: {exc.strerror}")
    try:
        return build_complex(facets)
    except ValueError as exc:
        raise ParseError(str(path), None, str(exc))


def matching_to_json(matching: MorseMatching) -> list[dict]:
    """Serialize a matching as upper/lower label pairs, in arc-id order."""
    cx = matching.hasse.complex
    out = []
    for a in sorted(matching.arcs):
        up, low = matching.hasse.arcs[a]
        out.append({"upper": list(cx.face_labels(up)),
                    "lower": list(cx.face_labels(low))})
    return out


def matching_from_json(h: HasseDiagram, data,
                       source: str = "<matching>") -> MorseMatching:
    """Rebuild a matching from its JSON form against the given diagram.

    Validates shape and face existence; whether the arcs form a Morse
    matching is deliberately left to ``is_morse_matching``.
    """
    cx = h.complex
    label_ids = {lab: v for v, lab in enumerate(cx.labels)}
    if not isinstance(data, list):
        raise ParseError(source, None, "expected a JSON list of pairs")
    arcs = set()
    for k, entry in enumerate(data):
        if not isinstance(entry, dict) or set(entry) != {"upper", "lower"}:
            raise ParseError(source, None,
                             f"pair {k}: expected keys 'upper' and 'lower'")
        fids = []
        for side in ("upper", "lower"):
            labs = entry[side]
            if not isinstance(labs, list) or not labs:
                raise ParseError(source, None,
                                 f"pair {k}: {side} must be a non-empty list")
            try:
                vids = [label_ids[_token(x) if isinstance(x, str) else x]
                        for x in labs]
            except KeyError as exc:
                raise ParseError(source, None,
                                 f"pair {k}: unknown vertex {exc.args[0]!r}")
            if len(set(vids)) != len(vids):
                raise ParseError(source, None, f"pair {k}: repeated vertex")
            if not cx.has_face(vids):
                raise ParseError(source, None,
                                 f"pair {k}: {sorted(labs, key=str)} is not a face")
            fids.append(cx.id_of(vids))
        up, low = fids
        arc = h.arc_ids.get((up, low))
        if arc is None:
            raise ParseError(source, None,
                             f"pair {k}: upper face does not cover lower face")
        if arc in arcs:
            raise ParseError(source, None, f"pair {k}: duplicate pair")
        arcs.add(arc)
    return MorseMatching(h, frozenset(arcs))


def report_to_json(report: CriticalReport, cx: SimplicialComplex) -> dict:
    return {
        "counts": list(report.counts),
        "total": report.total,
        "critical_faces": [list(cx.face_labels(f))
                           for f in report.critical_faces],
    }


def result_to_json(res, cx: SimplicialComplex) -> dict:
    """Solve result as one JSON document (see RESULT_SCHEMA_VERSION)."""
    return {
        "schema_version": RESULT_SCHEMA_VERSION,
        "status": res.status.value,
        "objective": res.objective,
        "dual_bound": res.dual_bound,
        "critical": report_to_json(res.report, cx),
        "betti_bound": list(res.betti_bound),
        "matching": matching_to_json(res.matching),
        "stats": asdict(res.stats),
    }


def write_json(obj, out: IO[str]) -> None:
    json.dump(obj, out, indent=2, sort_keys=False)
    out.write("\n")
