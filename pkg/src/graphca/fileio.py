"""Readers and writers for the on-disk formats.

* ``.col`` (DIMACS): ``c`` comments, ``p edge V E``, ``e u v`` with 1-based
  vertices.  Edges are written in lexicographic order.  Vertex labels, when
  present, ride along as ``c label <v> <name>`` comments.
* ``.ca``: header ``ca <k> <n> <g>`` then ``k`` lines ``<label> <n symbols>``.
* group JSON: ``{"order": m, "elements": [...], "table": [[...]]}`` and
  connection sets ``{"S": [...]}`` of indices or element names.
* coords: one ``vertex: (x1,...,xk)`` line per product vertex.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from graphca.algebra.groups import FiniteGroup, group_from_table
from graphca.ca import CoveringArray
from graphca.errors import FormatError, GraphCAError
from graphca.graph import Graph


def format_col(graph: Graph, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend(f"c {c}" for c in comment.splitlines())
    if graph.vertex_labels is not None:
        for v, name in enumerate(graph.vertex_labels):
            lines.append(f"c label {v + 1} {name}")
    lines.append(f"p edge {graph.vertex_count} {len(graph.edges)}")
    lines.extend(f"e {u + 1} {v + 1}" for u, v in graph.sorted_edges())
    return "\n".join(lines) + "\n"


def parse_col(text: str, path=None) -> Graph:
    n = None
    declared = None
    edges = set()
    labels = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        parts = raw.split()
        if not parts:
            continue
        tag = parts[0]
        if tag == "c":
            if len(parts) == 4 and parts[1] == "label":
                try:
                    labels[int(parts[2]) - 1] = parts[3]
                except ValueError:
                    raise FormatError(f"bad label line {raw!r}", path, lineno) from None
            continue
        if tag == "p":
            if n is not None:
                raise FormatError("duplicate problem line", path, lineno)
            if len(parts) != 4 or parts[1] not in ("edge", "col"):
                raise FormatError(f"expected 'p edge V E', got {raw!r}", path, lineno)
            try:
                n, declared = int(parts[2]), int(parts[3])
            except ValueError:
                raise FormatError(f"non-integer counts in {raw!r}", path, lineno) from None
            continue
        if tag == "e":
            if n is None:
                raise FormatError("edge line before problem line", path, lineno)
            try:
                u, v = int(parts[1]) - 1, int(parts[2]) - 1
            except (IndexError, ValueError):
                raise FormatError(f"expected 'e u v', got {raw!r}", path, lineno) from None
            if len(parts) != 3:
                raise FormatError(f"expected 'e u v', got {raw!r}", path, lineno)
            if not (0 <= u < n and 0 <= v < n):
                raise FormatError(f"vertex out of range 1..{n} in {raw!r}", path, lineno)
            if u == v:
                raise FormatError(f"self-loop in {raw!r}", path, lineno)
            edges.add((min(u, v), max(u, v)))
            continue
        raise FormatError(f"unrecognised line {raw!r}", path, lineno)
    if n is None:
        raise FormatError("missing 'p edge V E' line", path)
    if declared != len(edges):
        raise FormatError(f"header declares {declared} edges, found {len(edges)} distinct", path)
    vertex_labels = None
    if labels:
        if sorted(labels) != list(range(n)):
            raise FormatError("labels must cover every vertex exactly once", path)
        vertex_labels = tuple(labels[v] for v in range(n))
    return Graph(n, frozenset(edges), vertex_labels)


def read_col(path) -> Graph:
    path = Path(path)
    return parse_col(_read_text(path), path)


def write_col(graph: Graph, path, comment: str | None = None) -> None:
    Path(path).write_text(format_col(graph, comment))


def format_ca(ca: CoveringArray) -> str:
    labels = ca.labels()
    for name in labels:
        if not name or any(ch.isspace() for ch in name):
            raise GraphCAError(f"row label {name!r} cannot be written (empty or contains whitespace)")
    lines = [f"ca {ca.rows} {ca.cols} {ca.g}"]
    for name, row in zip(labels, ca.matrix):
        lines.append(" ".join([name, *map(str, row.tolist())]))
    return "\n".join(lines) + "\n"


def parse_ca(text: str, path=None, graph: Graph | None = None) -> CoveringArray:
    """Parse a ``.ca`` file, binding rows to ``graph`` vertices through their labels.

    Labels match the graph's vertex labels when it has them, otherwise they
    are read as 0-based vertex indices.  Without a graph, all-integer labels
    still give a binding; anything else leaves the array unbound.
    """
    lines = [(i, ln) for i, ln in enumerate(text.splitlines(), start=1) if ln.strip()]
    if not lines:
        raise FormatError("empty file", path)
    lineno, header = lines[0]
    parts = header.split()
    if len(parts) != 4 or parts[0] != "ca":
        raise FormatError(f"expected 'ca <k> <n> <g>', got {header!r}", path, lineno)
    try:
        k, n, g = map(int, parts[1:])
    except ValueError:
        raise FormatError(f"non-integer header fields in {header!r}", path, lineno) from None
    body = lines[1:]
    if len(body) != k:
        raise FormatError(f"header declares {k} rows, found {len(body)}", path)
    labels, rows = [], []
    for lineno, ln in body:
        parts = ln.split()
        if len(parts) != n + 1:
            raise FormatError(f"expected a label and {n} symbols", path, lineno)
        try:
            row = [int(x) for x in parts[1:]]
        except ValueError:
            raise FormatError("non-integer symbol", path, lineno) from None
        if any(not 0 <= x < g for x in row):
            raise FormatError(f"symbol outside Z_{g}", path, lineno)
        labels.append(parts[0])
        rows.append(row)
    matrix = np.array(rows, dtype=np.int64).reshape(k, n)

    binding = None
    if graph is not None and graph.vertex_labels is not None:
        index = {name: v for v, name in enumerate(graph.vertex_labels)}
        try:
            binding = [index[x] for x in labels]
        except KeyError as exc:
            raise FormatError(f"label {exc.args[0]!r} is not a vertex of the graph", path) from None
    elif all(_is_int(x) for x in labels):
        binding = [int(x) for x in labels]
        if graph is not None and any(not 0 <= v < graph.vertex_count for v in binding):
            raise FormatError("row label is not a vertex of the graph", path)
    elif graph is not None:
        raise FormatError("row labels are not vertex indices and the graph has no labels", path)
    if binding is not None and len(set(binding)) != len(binding):
        raise FormatError("two rows carry the same vertex label", path)
    if graph is not None and k != graph.vertex_count:
        raise FormatError(f"array has {k} rows but the graph has {graph.vertex_count} vertices", path)
    return CoveringArray(matrix, g, graph, binding)


def read_ca(path, graph: Graph | None = None) -> CoveringArray:
    path = Path(path)
    return parse_ca(_read_text(path), path, graph)


def write_ca(ca: CoveringArray, path) -> None:
    Path(path).write_text(format_ca(ca))


def format_coords(coords) -> str:
    return "".join(f"{v}: ({','.join(map(str, c))})\n" for v, c in enumerate(coords))


def group_to_json(grp: FiniteGroup) -> dict:
    return {"order": grp.order, "elements": list(grp.names), "table": [list(r) for r in grp.table]}


def group_from_json(data: dict, path=None) -> FiniteGroup:
    try:
        table = data["table"]
        names = data.get("elements")
        order = data.get("order", len(table))
    except (KeyError, TypeError, AttributeError):
        raise FormatError("group JSON needs a 'table' entry", path) from None
    if order != len(table):
        raise FormatError(f"order {order} does not match table size {len(table)}", path)
    return group_from_table(table, names)


def read_group(path) -> FiniteGroup:
    path = Path(path)
    return group_from_json(_read_json(path), path)


def read_connection_set(path, grp: FiniteGroup) -> list:
    path = Path(path)
    data = _read_json(path)
    try:
        items = data["S"]
    except (KeyError, TypeError):
        raise FormatError("connection set JSON needs an 'S' entry", path) from None
    return [grp.index(x) for x in items]


def _is_int(text: str) -> bool:
    try:
        int(text)
    except ValueError:
        return False
    return True


def _read_text(path: Path) -> str:
    try:
        return path.read_text()
    except OSError as exc:
        raise FormatError(f"cannot read file ({exc.strerror})", path) from None


def _read_json(path: Path):
    try:
        return json.loads(_read_text(path))
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc.msg}", path, exc.lineno) from None
