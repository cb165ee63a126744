"""Readers and writers for ``.graph``, ``.flow.json`` and ``.pts.json`` files.

``.graph`` is plain text: a header line ``<vertex_count> <edge_count>``, then
one ``u v`` line per edge (0-based).  Lines starting with ``#`` are comments.
Floats in the JSON formats are written with 17 significant digits.
"""

from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Optional, Union

from .errors import InvalidParameter, ParseError
from .flow import FlowAssignment, PointSequence
from .graph import Graph

PathLike = Union[str, Path]


def parse_graph(text: str) -> Graph:
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"line {lineno}: expected two integers, got {raw!r}")
        try:
            rows.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise ParseError(f"line {lineno}: expected two integers, got {raw!r}") from None
    if not rows:
        raise ParseError("missing header line")
    (nv, ne), edges = rows[0], rows[1:]
    if nv < 0 or ne < 0:
        raise ParseError("negative counts in header")
    if len(edges) != ne:
        raise ParseError(f"header announces {ne} edges, found {len(edges)}")
    try:
        return Graph(nv, tuple(edges))
    except InvalidParameter as exc:
        raise ParseError(str(exc)) from None


def format_graph(G: Graph) -> str:
    lines = [f"{G.vertex_count} {G.edge_count}"]
    lines += [f"{u} {v}" for u, v in G.edges]
    return "\n".join(lines) + "\n"


def read_graph(path: PathLike) -> Graph:
    return parse_graph(Path(path).read_text())


def write_graph(G: Graph, path: PathLike) -> None:
    Path(path).write_text(format_graph(G))


def _num(x: float) -> str:
    return format(float(x), ".17g")


def _pairs(values) -> str:
    return "[" + ", ".join(f"[{_num(v.real)}, {_num(v.imag)}]" for v in values) + "]"


def _parse_pairs(data, what: str):
    if not isinstance(data, list):
        raise ParseError(f"{what} must be an array of [re, im] pairs")
    out = []
    for item in data:
        if (
            not isinstance(item, list)
            or len(item) != 2
            or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in item)
        ):
            raise ParseError(f"{what}: bad entry {item!r}")
        if not all(math.isfinite(x) for x in item):
            raise ParseError(f"{what}: non-finite entry {item!r}")
        out.append(complex(item[0], item[1]))
    return out


def format_flow(flow: FlowAssignment, r: Optional[float] = None) -> str:
    G = flow.graph
    edges = json.dumps([list(e) for e in G.edges])
    parts = [
        f'  "graph": {{"vertex_count": {G.vertex_count}, "edges": {edges}}}',
        f'  "values": {_pairs(flow.values)}',
    ]
    if r is not None:
        parts.append(f'  "r": {_num(r)}')
    return "{\n" + ",\n".join(parts) + "\n}\n"


def parse_flow(text: str):
    """Return ``(flow, r)``; ``r`` is ``None`` when the file has no ``"r"`` key."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    if not isinstance(data, dict) or "graph" not in data or "values" not in data:
        raise ParseError('flow file needs "graph" and "values"')
    g = data["graph"]
    try:
        G = Graph(int(g["vertex_count"]), tuple((int(u), int(v)) for u, v in g["edges"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad inline graph: {exc}") from None
    values = _parse_pairs(data["values"], "values")
    if len(values) != G.edge_count:
        raise ParseError(f"{len(values)} values for {G.edge_count} edges")
    r = data.get("r")
    if r is not None and (not isinstance(r, (int, float)) or not math.isfinite(r)):
        raise ParseError('"r" must be a finite number')
    return FlowAssignment(G, values), (None if r is None else float(r))


def read_flow(path: PathLike):
    return parse_flow(Path(path).read_text())


def write_flow(flow: FlowAssignment, path: PathLike, r: Optional[float] = None) -> None:
    Path(path).write_text(format_flow(flow, r))


def format_points(seq: PointSequence) -> str:
    return _pairs(seq.points) + "\n"


def parse_points(text: str) -> PointSequence:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    pts = _parse_pairs(data, "points")
    if len(pts) < 3:
        raise ParseError("a point sequence needs at least 3 points")
    return PointSequence(pts)


def read_points(path: PathLike) -> PointSequence:
    return parse_points(Path(path).read_text())


def write_points(seq: PointSequence, path: PathLike) -> None:
    Path(path).write_text(format_points(seq))
