"""Graph text format and JSON side files.

Graph text format, one record per line, ``#`` starts a comment::

    v <id> <label>
    e <src> <dst> <label>

Flags are never read from input; ``format_graph(..., with_flags=True)``
appends a ``neg`` token to flagged edge lines for debugging dumps only.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Iterable, List

from gpforge.graph import GraphError, LabeledDigraph


class ParseError(GraphError):
    def __init__(self, message: str, line: int | None = None, source: str | None = None):
        where = ""
        if source:
            where += f"{source}:"
        if line is not None:
            where += f"{line}: "
        elif where:
            where += " "
        super().__init__(where + message)
        self.line = line


def parse_graph(text: str, source: str | None = None) -> LabeledDigraph:
    vertices = {}
    edges = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        kind = parts[0]
        if kind == "v":
            if len(parts) != 3:
                raise ParseError("expected 'v <id> <label>'", lineno, source)
            vid = _uint(parts[1], lineno, source)
            if vid in vertices:
                raise ParseError(f"duplicate vertex {vid}", lineno, source)
            vertices[vid] = parts[2]
        elif kind == "e":
            if len(parts) != 4:
                raise ParseError("expected 'e <src> <dst> <label>'", lineno, source)
            u = _uint(parts[1], lineno, source)
            v = _uint(parts[2], lineno, source)
            for x in (u, v):
                if x not in vertices:
                    raise ParseError(f"edge endpoint {x} is not a declared vertex", lineno, source)
            if u == v:
                raise ParseError("self-loops are not supported", lineno, source)
            if (u, v) in edges and edges[(u, v)] != parts[3]:
                raise ParseError(f"second edge {u}->{v} with a different label", lineno, source)
            edges[(u, v)] = parts[3]
        else:
            raise ParseError(f"unknown record type {kind!r}", lineno, source)
    return LabeledDigraph(vertices, edges)


def _uint(tok: str, lineno: int, source) -> int:
    try:
        val = int(tok)
    except ValueError:
        raise ParseError(f"vertex id {tok!r} is not an integer", lineno, source) from None
    if val < 0:
        raise ParseError(f"vertex id {tok!r} is negative", lineno, source)
    return val


def format_graph(g: LabeledDigraph, with_flags: bool = False) -> str:
    lines = [f"v {v} {lbl}" for v, lbl in g.vertices.items()]
    for (u, v), lbl in g.edges.items():
        line = f"e {u} {v} {lbl}"
        if with_flags and (u, v) in g.flagged:
            line += " neg"
        lines.append(line)
    return "\n".join(lines) + "\n"


def read_graph(path) -> LabeledDigraph:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read graph file: {exc.strerror}", source=str(path)) from exc
    return parse_graph(text, source=str(path))


def write_graph(g: LabeledDigraph, path) -> None:
    Path(path).write_text(format_graph(g), encoding="utf-8")


def parse_vertex_sets(text: str, source: str | None = None) -> List[List[int]]:
    """JSON array of integer arrays."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno, source) from None
    if not isinstance(data, list) or not all(isinstance(x, list) for x in data):
        raise ParseError("expected a JSON array of integer arrays", source=source)
    for x in data:
        if not all(isinstance(v, int) and not isinstance(v, bool) for v in x):
            raise ParseError("vertex ids must be integers", source=source)
    return data


def read_vertex_sets(path) -> List[List[int]]:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read file: {exc.strerror}", source=str(path)) from exc
    return parse_vertex_sets(text, source=str(path))


def write_vertex_sets(sets: Iterable[Iterable[int]], path) -> None:
    data = [sorted(s) for s in sets]
    Path(path).write_text(json.dumps(data) + "\n", encoding="utf-8")
