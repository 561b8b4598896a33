"""Reading, writing and synthesising grid description files.

A grid is stored either as a directory holding two CSV tables::

    nodes.csv   id,kind
    edges.csv   from,to,resistance_ohm_per_km,length_km,is_link,max_current_a

or as one JSON document ``{"version": 1, "nodes": [...], "edges": [...]}``
whose objects use the same field names.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
from pathlib import Path

import numpy as np

from .errors import (
    DuplicateNodeError,
    InfeasibleError,
    InvalidValueError,
    MalformedHeaderError,
    MissingFieldError,
    NonNumericFieldError,
    UnknownNodeReferenceError,
)
from .grid_model import NODE_KINDS, EdgeRecord, GridGraph, NodeRecord, build_graph

NODE_FIELDS = ("id", "kind")
EDGE_FIELDS = ("from", "to", "resistance_ohm_per_km", "length_km", "is_link", "max_current_a")
FORMAT_VERSION = 1


def _number(text, line, field, source, optional=False):
    if text is None or (isinstance(text, str) and text.strip() == ""):
        if optional:
            return None
        raise MissingFieldError("required value is empty", line, field, source)
    if isinstance(text, bool):
        raise NonNumericFieldError(f"expected a number, got {text!r}", line, field, source)
    try:
        value = float(text)
    except (TypeError, ValueError):
        raise NonNumericFieldError(f"expected a number, got {text!r}", line, field, source) from None
    if not math.isfinite(value):
        raise NonNumericFieldError(f"expected a finite number, got {text!r}", line, field, source)
    return value


def _flag(text, line, field, source):
    if isinstance(text, bool):
        return text
    s = "" if text is None else str(text).strip().lower()
    if s in ("1", "true"):
        return True
    if s in ("0", "false", ""):
        return False
    raise InvalidValueError(f"is_link must be 0 or 1, got {text!r}", line, field, source)


def _node(row_id, kind, line, source, seen):
    if row_id is None or str(row_id).strip() == "":
        raise MissingFieldError("node id is empty", line, "id", source)
    nid = str(row_id).strip()
    kind = "substation" if kind is None or str(kind).strip() == "" else str(kind).strip()
    if kind not in NODE_KINDS:
        raise InvalidValueError(f"kind must be one of {NODE_KINDS}, got {kind!r}", line, "kind", source)
    if nid in seen:
        raise DuplicateNodeError(
            f"node id {nid!r} already declared on line {seen[nid]}", line, "id", source
        )
    seen[nid] = line
    return NodeRecord(nid, kind)


def _edge(row, line, source, declared):
    ends = []
    for field in ("from", "to"):
        val = row.get(field)
        if val is None or str(val).strip() == "":
            raise MissingFieldError("endpoint is empty", line, field, source)
        nid = str(val).strip()
        if declared is not None and nid not in declared:
            raise UnknownNodeReferenceError(f"undeclared node id {nid!r}", line, field, source)
        ends.append(nid)
    is_link = _flag(row.get("is_link"), line, "is_link", source)
    r = _number(row.get("resistance_ohm_per_km"), line, "resistance_ohm_per_km", source, optional=is_link)
    length = _number(row.get("length_km"), line, "length_km", source, optional=is_link)
    cur = _number(row.get("max_current_a"), line, "max_current_a", source, optional=True)
    for field, v in (("resistance_ohm_per_km", r), ("length_km", length)):
        if v is not None and v < 0:
            raise InvalidValueError(f"{field} must be nonnegative", line, field, source)
    if cur is not None and cur <= 0:
        raise InvalidValueError("max_current_a must be positive", line, "max_current_a", source)
    if ends[0] == ends[1]:
        raise InvalidValueError(f"self-loop on node {ends[0]!r}", line, "to", source)
    return EdgeRecord(ends[0], ends[1], r, length, is_link, cur)


def _check_header(header, expected, required, source):
    if header is None:
        raise MalformedHeaderError("file is empty", 1, None, source)
    names = [h.strip() for h in header]
    unknown = [h for h in names if h not in expected]
    missing = [h for h in required if h not in names]
    if unknown or missing or len(set(names)) != len(names):
        raise MalformedHeaderError(
            f"expected columns {','.join(expected)}; got {','.join(names)}", 1, None, source
        )
    return names


def parse_nodes_csv(text, source="nodes.csv"):
    reader = csv.reader(io.StringIO(text))
    names = _check_header(next(reader, None), NODE_FIELDS, NODE_FIELDS[:1], source)
    seen = {}
    nodes = []
    for line, row in enumerate(reader, start=2):
        if not row or all(c.strip() == "" for c in row):
            continue
        if len(row) != len(names):
            raise MissingFieldError(f"expected {len(names)} fields, got {len(row)}", line, None, source)
        rec = dict(zip(names, row))
        nodes.append(_node(rec.get("id"), rec.get("kind"), line, source, seen))
    return nodes


def parse_edges_csv(text, declared=None, source="edges.csv"):
    reader = csv.reader(io.StringIO(text))
    names = _check_header(next(reader, None), EDGE_FIELDS, ("from", "to"), source)
    edges = []
    for line, row in enumerate(reader, start=2):
        if not row or all(c.strip() == "" for c in row):
            continue
        if len(row) != len(names):
            raise MissingFieldError(f"expected {len(names)} fields, got {len(row)}", line, None, source)
        edges.append(_edge(dict(zip(names, row)), line, source, declared))
    return edges


def parse_grid_csv(nodes_text, edges_text):
    """Parse the two CSV tables of a grid directory."""
    nodes = parse_nodes_csv(nodes_text)
    edges = parse_edges_csv(edges_text, {n.id for n in nodes})
    return nodes, edges


def parse_grid_json(text, source="grid.json"):
    """Parse a JSON grid document.

    Errors carry the record index as ``line`` (1-based within its section)
    and a ``section[i].field`` path as ``field``.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedHeaderError(f"invalid JSON: {exc.msg}", exc.lineno, None, source) from None
    if not isinstance(doc, dict) or "nodes" not in doc or "edges" not in doc:
        raise MalformedHeaderError("document must be an object with 'nodes' and 'edges'", 1, None, source)
    if doc.get("version") != FORMAT_VERSION:
        raise MalformedHeaderError(f"unsupported version {doc.get('version')!r}", 1, "version", source)
    seen = {}
    nodes = []
    for i, rec in enumerate(doc["nodes"], start=1):
        if not isinstance(rec, dict):
            raise MissingFieldError("node entry must be an object", i, f"nodes[{i - 1}]", source)
        nodes.append(_node(rec.get("id"), rec.get("kind"), i, source, seen))
    declared = set(seen)
    edges = []
    for i, rec in enumerate(doc["edges"], start=1):
        if not isinstance(rec, dict):
            raise MissingFieldError("edge entry must be an object", i, f"edges[{i - 1}]", source)
        unknown = set(rec) - set(EDGE_FIELDS)
        if unknown:
            raise MalformedHeaderError(f"unknown edge fields {sorted(unknown)}", i, f"edges[{i - 1}]", source)
        edges.append(_edge(rec, i, source, declared))
    return nodes, edges


def parse_grid(path_or_text):
    """Parse a grid from a directory, a ``.json`` file, or JSON text.

    Returns
    -------
    (list of NodeRecord, list of EdgeRecord)
    """
    if isinstance(path_or_text, (str, os.PathLike)) and not str(path_or_text).lstrip().startswith("{"):
        path = Path(path_or_text)
        if path.is_dir():
            nodes_text = (path / "nodes.csv").read_text(encoding="utf-8")
            edges_text = (path / "edges.csv").read_text(encoding="utf-8")
            return parse_grid_csv(nodes_text, edges_text)
        return parse_grid_json(path.read_text(encoding="utf-8"), source=path.name)
    if hasattr(path_or_text, "read"):
        path_or_text = path_or_text.read()
    if isinstance(path_or_text, bytes):
        path_or_text = path_or_text.decode("utf-8")
    return parse_grid_json(path_or_text)


def load_graph(path) -> GridGraph:
    return build_graph(*parse_grid(path))


# -- serialisation -------------------------------------------------------
def _fmt(x):
    return "" if x is None else repr(float(x))


def nodes_to_csv(nodes):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(NODE_FIELDS)
    for n in nodes:
        w.writerow([n.id, n.kind])
    return buf.getvalue()


def edges_to_csv(edges):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(EDGE_FIELDS)
    for e in edges:
        w.writerow([
            e.endpoint_a, e.endpoint_b, _fmt(e.resistance_per_km), _fmt(e.length_km),
            int(e.is_link), _fmt(e.max_current),
        ])
    return buf.getvalue()


def grid_to_json(nodes, edges) -> str:
    doc = {
        "version": FORMAT_VERSION,
        "nodes": [{"id": n.id, "kind": n.kind} for n in nodes],
        "edges": [
            {
                "from": e.endpoint_a,
                "to": e.endpoint_b,
                "resistance_ohm_per_km": e.resistance_per_km,
                "length_km": e.length_km,
                "is_link": int(e.is_link),
                "max_current_a": e.max_current,
            }
            for e in edges
        ],
    }
    return json.dumps(doc, indent=1)


def write_grid(nodes, edges, path):
    """Write records to a grid directory, or to a JSON file if ``path`` ends in ``.json``."""
    path = Path(path)
    if path.suffix == ".json":
        path.write_text(grid_to_json(nodes, edges), encoding="utf-8")
        return path
    path.mkdir(parents=True, exist_ok=True)
    (path / "nodes.csv").write_text(nodes_to_csv(nodes), encoding="utf-8")
    (path / "edges.csv").write_text(edges_to_csv(edges), encoding="utf-8")
    return path


# -- synthetic grids -----------------------------------------------------
def _draw(dist, rng, n):
    if dist is None:
        return [None] * n
    kind, *args = dist
    if kind == "constant":
        return [float(args[0])] * n
    if kind == "uniform":
        a, b = args
        return rng.uniform(a, b, size=n).tolist()
    raise ValueError(f"unknown distribution {kind!r}; use ('constant', w) or ('uniform', a, b)")


def synthetic_records(order, size, weight_dist=("constant", 1.0), seed=0, current_dist=None):
    """Records of a random connected grid; see :func:`generate_synthetic_grid`."""
    from .baselines import random_connected_pairs

    rng = np.random.default_rng(seed)
    pairs = random_connected_pairs(order, size, rng)
    weights = _draw(weight_dist, rng, len(pairs))
    currents = _draw(current_dist, rng, len(pairs))
    if any(w is not None and not w > 0 for w in weights):
        raise InfeasibleError("weight distribution must produce positive weights")
    nodes = [NodeRecord(f"n{i}") for i in range(order)]
    edges = [
        EdgeRecord(f"n{a}", f"n{b}", w, 1.0, False, c)
        for (a, b), w, c in zip(pairs, weights, currents)
    ]
    return nodes, edges


def generate_synthetic_grid(order, size, weight_dist=("constant", 1.0), seed=0, current_dist=None) -> GridGraph:
    """Random connected grid with exactly ``order`` nodes and ``size`` edges.

    ``weight_dist`` (and optionally ``current_dist``) is ``("constant", w)``
    or ``("uniform", a, b)``.  Output is a pure function of the arguments.
    """
    return build_graph(*synthetic_records(order, size, weight_dist, seed, current_dist))
