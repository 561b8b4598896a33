"""Weighted power-grid graph model.

Nodes are substations, transformers or consumers; edges are cables weighted
by their resistance in Ohm (resistance per km times length).  Short
connections without a known resistance ("links") get a conventional weight
of ``LINK_WEIGHT``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np
import scipy.sparse as sp
from scipy.sparse.csgraph import connected_components as _cc_labels

from .errors import (
    EmptyGraphError,
    GraphConstructionError,
    SelfLoopError,
    UnknownNodeError,
    ValidationError,
)

LINK_WEIGHT = 1e-9
NODE_KINDS = ("substation", "transformer", "consumer")


@dataclass(frozen=True)
class NodeRecord:
    id: str
    kind: str = "substation"

    def __post_init__(self):
        if self.kind not in NODE_KINDS:
            raise ValidationError(
                f"node {self.id!r}: kind must be one of {NODE_KINDS}, got {self.kind!r}"
            )


@dataclass(frozen=True)
class EdgeRecord:
    endpoint_a: str
    endpoint_b: str
    resistance_per_km: float | None = None
    length_km: float | None = None
    is_link: bool = False
    max_current: float | None = None

    @property
    def weight(self) -> float:
        if self.is_link:
            return LINK_WEIGHT
        return self.resistance_per_km * self.length_km


class GridGraph:
    """Immutable undirected multigraph with positive edge weights.

    Node indices are dense ``0..N-1``; ``node_ids[i]`` is the external id of
    node ``i``.  Parallel edges are kept, but every shortest-path and matrix
    computation works on the *collapsed* simple graph in which each node pair
    keeps its minimum-weight edge (see :meth:`neighbors`).

    Parameters
    ----------
    node_ids : sequence of str
    edges : sequence of (int, int) index pairs
    weights : sequence of float, all > 0
    currents : sequence of float or None, optional
        Maximum operating current per edge in Ampere; NaN marks a missing value.
    kinds : sequence of str, optional
    parent_index : sequence of int, optional
        For subgraphs, the index of every node in the graph it was cut from.
    """

    __slots__ = (
        "_ids", "_kinds", "_u", "_v", "_w", "_cur", "_parent", "_index", "_cache",
    )

    def __init__(self, node_ids, edges, weights, currents=None, kinds=None, parent_index=None):
        self._ids = tuple(str(i) for i in node_ids)
        n = len(self._ids)
        self._kinds = tuple(kinds) if kinds is not None else ("substation",) * n
        e = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
        self._u = e[:, 0].copy()
        self._v = e[:, 1].copy()
        self._w = np.asarray(weights, dtype=float).reshape(-1).copy()
        if currents is None:
            self._cur = np.full(len(self._w), np.nan)
        else:
            self._cur = np.array(
                [np.nan if c is None else float(c) for c in currents], dtype=float
            )
        if len(self._w) != len(self._u) or len(self._cur) != len(self._u):
            raise ValidationError("edge, weight and current arrays differ in length")
        if len(self._u) and (self._u.min() < 0 or max(self._u.max(), self._v.max()) >= n):
            raise ValidationError("edge endpoint index out of range")
        if np.any(self._u == self._v):
            raise SelfLoopError(self._ids[int(self._u[self._u == self._v][0])])
        if np.any(~(self._w > 0)) or np.any(~np.isfinite(self._w)):
            raise ValidationError("all edge weights must be finite and > 0")
        self._parent = None if parent_index is None else np.asarray(parent_index, dtype=np.int64)
        self._index = {nid: i for i, nid in enumerate(self._ids)}
        if len(self._index) != n:
            raise ValidationError("duplicate node ids")
        for arr in (self._u, self._v, self._w, self._cur):
            arr.setflags(write=False)
        if self._parent is not None:
            self._parent.setflags(write=False)
        self._cache = {}

    # -- basic accessors -------------------------------------------------
    @property
    def node_ids(self) -> tuple:
        return self._ids

    @property
    def kinds(self) -> tuple:
        return self._kinds

    @property
    def order(self) -> int:
        return len(self._ids)

    @property
    def size(self) -> int:
        return len(self._u)

    @property
    def edge_u(self) -> np.ndarray:
        return self._u

    @property
    def edge_v(self) -> np.ndarray:
        return self._v

    @property
    def weights(self) -> np.ndarray:
        return self._w

    @property
    def currents(self) -> np.ndarray:
        return self._cur

    @property
    def parent_index(self):
        return self._parent

    def index(self, node) -> int:
        """Resolve a node id (or an in-range integer index) to its index."""
        if isinstance(node, (int, np.integer)) and not isinstance(node, bool):
            if 0 <= node < self.order:
                return int(node)
            raise UnknownNodeError(node)
        try:
            return self._index[str(node)]
        except KeyError:
            raise UnknownNodeError(node) from None

    def edges(self):
        """Iterate ``(id_a, id_b, weight, current_or_None)`` in insertion order."""
        for a, b, w, c in zip(self._u, self._v, self._w, self._cur):
            yield (self._ids[a], self._ids[b], float(w), None if math.isnan(c) else float(c))

    def __repr__(self):
        return f"GridGraph(order={self.order}, size={self.size})"

    def __eq__(self, other):
        if not isinstance(other, GridGraph):
            return NotImplemented
        return (
            self._ids == other._ids
            and np.array_equal(self._u, other._u)
            and np.array_equal(self._v, other._v)
            and np.array_equal(self._w, other._w)
            and np.array_equal(self._cur, other._cur, equal_nan=True)
        )

    __hash__ = None

    # -- derived structure (cached) -------------------------------------
    def degrees(self) -> np.ndarray:
        """Multigraph degree (number of incident cables); sums to ``2 * size``."""
        if "deg" not in self._cache:
            d = np.bincount(self._u, minlength=self.order) + np.bincount(self._v, minlength=self.order)
            d.setflags(write=False)
            self._cache["deg"] = d
        return self._cache["deg"]

    def weighted_degrees(self) -> np.ndarray:
        if "wdeg" not in self._cache:
            d = np.bincount(self._u, self._w, minlength=self.order) + np.bincount(
                self._v, self._w, minlength=self.order
            )
            d.setflags(write=False)
            self._cache["wdeg"] = d
        return self._cache["wdeg"]

    def neighbors(self) -> list:
        """Collapsed adjacency: ``list[dict[nbr_index, min_weight]]``."""
        if "adj" not in self._cache:
            adj = [dict() for _ in range(self.order)]
            for a, b, w in zip(self._u.tolist(), self._v.tolist(), self._w.tolist()):
                old = adj[a].get(b)
                if old is None or w < old:
                    adj[a][b] = w
                    adj[b][a] = w
            # sorted neighbour order keeps every traversal deterministic
            adj = [dict(sorted(d.items())) for d in adj]
            self._cache["adj"] = adj
        return self._cache["adj"]

    def simple_degrees(self) -> np.ndarray:
        return np.array([len(d) for d in self.neighbors()], dtype=np.int64)

    def adjacency_matrix(self, weighted: bool = False) -> sp.csr_matrix:
        """Symmetric sparse adjacency of the collapsed simple graph."""
        key = ("A", weighted)
        if key not in self._cache:
            rows, cols, vals = [], [], []
            for i, nbrs in enumerate(self.neighbors()):
                for j, w in nbrs.items():
                    rows.append(i)
                    cols.append(j)
                    vals.append(w if weighted else 1.0)
            n = self.order
            self._cache[key] = sp.csr_matrix((vals, (rows, cols)), shape=(n, n))
        return self._cache[key]

    def component_labels(self):
        if "labels" not in self._cache:
            if self.order == 0:
                self._cache["labels"] = (0, np.zeros(0, dtype=np.int64))
            else:
                ncomp, labels = _cc_labels(self.adjacency_matrix(), directed=False)
                self._cache["labels"] = (int(ncomp), labels)
        return self._cache["labels"]

    def is_connected(self) -> bool:
        return self.order > 0 and self.component_labels()[0] == 1

    # -- transformations -------------------------------------------------
    def subgraph(self, indices: Iterable[int]) -> "GridGraph":
        """Induced subgraph on ``indices`` (kept in ascending order)."""
        idx = np.unique(np.asarray(list(indices), dtype=np.int64))
        remap = np.full(self.order, -1, dtype=np.int64)
        remap[idx] = np.arange(len(idx))
        keep = (remap[self._u] >= 0) & (remap[self._v] >= 0)
        edges = np.stack([remap[self._u[keep]], remap[self._v[keep]]], axis=1)
        return GridGraph(
            [self._ids[i] for i in idx],
            edges,
            self._w[keep],
            currents=[None if math.isnan(c) else c for c in self._cur[keep]],
            kinds=[self._kinds[i] for i in idx],
            parent_index=idx,
        )

    def with_weights(self, weights: Sequence[float]) -> "GridGraph":
        """Same topology, different edge weights."""
        return GridGraph(
            self._ids,
            np.stack([self._u, self._v], axis=1),
            weights,
            currents=[None if math.isnan(c) else c for c in self._cur],
            kinds=self._kinds,
            parent_index=self._parent,
        )

    def to_records(self):
        """Flatten back into ``(nodes, edges)`` records.

        Edge weights are written as ``resistance_per_km=weight, length_km=1``
        except for link-weight edges, which become links again.
        """
        nodes = [NodeRecord(i, k) for i, k in zip(self._ids, self._kinds)]
        edges = []
        for a, b, w, c in self.edges():
            if w == LINK_WEIGHT:
                edges.append(EdgeRecord(a, b, None, None, True, c))
            else:
                edges.append(EdgeRecord(a, b, w, 1.0, False, c))
        return nodes, edges


def build_graph(nodes: Sequence[NodeRecord], edges: Sequence[EdgeRecord]) -> GridGraph:
    """Validate records and assemble a :class:`GridGraph`.

    Raises
    ------
    GraphConstructionError
        An edge endpoint is not among the declared node ids.
    SelfLoopError
        Both endpoints of an edge are the same node.
    ValidationError
        Negative or missing resistance/length on a non-link edge, or a
        non-positive current.
    """
    ids = [n.id for n in nodes]
    index = {}
    for i, nid in enumerate(ids):
        if nid in index:
            raise ValidationError(f"duplicate node id {nid!r}")
        index[nid] = i
    pairs, weights, currents = [], [], []
    for e in edges:
        for end in (e.endpoint_a, e.endpoint_b):
            if end not in index:
                raise GraphConstructionError(end)
        if e.endpoint_a == e.endpoint_b:
            raise SelfLoopError(e.endpoint_a)
        if e.is_link:
            w = LINK_WEIGHT
        else:
            if e.resistance_per_km is None or e.length_km is None:
                raise ValidationError(
                    f"edge {e.endpoint_a}-{e.endpoint_b}: non-link edge needs resistance and length"
                )
            if e.resistance_per_km < 0 or e.length_km < 0:
                raise ValidationError(
                    f"edge {e.endpoint_a}-{e.endpoint_b}: resistance and length must be nonnegative"
                )
            w = e.resistance_per_km * e.length_km
            if not w > 0:
                raise ValidationError(
                    f"edge {e.endpoint_a}-{e.endpoint_b}: zero resistance; mark it as a link"
                )
        if e.max_current is not None and not e.max_current > 0:
            raise ValidationError(f"edge {e.endpoint_a}-{e.endpoint_b}: max_current must be > 0")
        pairs.append((index[e.endpoint_a], index[e.endpoint_b]))
        weights.append(w)
        currents.append(e.max_current)
    return GridGraph(ids, pairs, weights, currents=currents, kinds=[n.kind for n in nodes])


def connected_components(g: GridGraph) -> list:
    """Split ``g`` into its maximal connected subgraphs.

    Components come largest first; equal orders are ordered by the smallest
    original node index they contain.  ``parent_index`` on each component maps
    back to ``g``.
    """
    if g.order == 0:
        return []
    ncomp, labels = g.component_labels()
    if ncomp == 1:
        return [g.subgraph(range(g.order))]
    groups = [np.flatnonzero(labels == c) for c in range(ncomp)]
    groups.sort(key=lambda idx: (-len(idx), int(idx[0])))
    return [g.subgraph(idx) for idx in groups]


def order_size_avg_degree(g: GridGraph):
    """Return ``(N, M, 2M/N)``."""
    if g.order == 0:
        raise EmptyGraphError("average degree of an empty graph is undefined")
    return g.order, g.size, 2.0 * g.size / g.order


def average_degree(order: int, size: int) -> float:
    if order <= 0:
        raise EmptyGraphError("order must be positive")
    return 2.0 * size / order
