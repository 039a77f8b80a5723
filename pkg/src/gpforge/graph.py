"""Directed labeled graphs with per-edge negative flags."""

from __future__ import annotations

import enum
from typing import Dict, FrozenSet, Hashable, Iterable, Mapping, Tuple

Vertex = Hashable
Edge = Tuple[Vertex, Vertex]

DEFAULT_LABEL = "_"


class GraphError(ValueError):
    """Raised for malformed graphs or invalid vertex references."""


class MatchMode(enum.Enum):
    LABELS_ONLY = "labels"
    WITH_FLAGS = "flags"


LABELS_ONLY = MatchMode.LABELS_ONLY
WITH_FLAGS = MatchMode.WITH_FLAGS


class LabeledDigraph:
    """Immutable directed graph with vertex labels, edge labels and negative flags.

    At most one edge is stored per ordered vertex pair. The negative flag is an
    annotation on top of the edge label, so matching can either respect it
    (``WITH_FLAGS``) or ignore it (``LABELS_ONLY``).

    >>> g = LabeledDigraph({1: "a", 2: "a"}, {(1, 2): "x"}, flagged=[(1, 2)])
    >>> g.is_flagged(1, 2), g.edge_label(1, 2)
    (True, 'x')
    """

    __slots__ = ("_labels", "_edges", "_flagged", "_succ", "_pred", "_cache", "_hash")

    def __init__(
        self,
        vertices: Mapping[Vertex, str] | Iterable[Vertex] = (),
        edges: Mapping[Edge, str] | Iterable = (),
        flagged: Iterable[Edge] = (),
    ):
        if isinstance(vertices, Mapping):
            labels = {v: str(lbl) for v, lbl in vertices.items()}
        else:
            labels = {v: DEFAULT_LABEL for v in vertices}
        if isinstance(edges, Mapping):
            items = [(u, v, lbl) for (u, v), lbl in edges.items()]
        else:
            items = []
            for e in edges:
                if len(e) == 2:
                    items.append((e[0], e[1], DEFAULT_LABEL))
                else:
                    items.append((e[0], e[1], e[2]))

        edge_labels: Dict[Edge, str] = {}
        for u, v, lbl in items:
            if u not in labels or v not in labels:
                raise GraphError(f"edge ({u!r}, {v!r}) references an unknown vertex")
            if u == v:
                raise GraphError(f"self-loop on vertex {u!r} is not supported")
            lbl = str(lbl)
            old = edge_labels.get((u, v))
            if old is not None and old != lbl:
                raise GraphError(f"parallel edges ({u!r}, {v!r}) with different labels")
            edge_labels[(u, v)] = lbl
        flags = frozenset(tuple(e) for e in flagged)
        for e in flags:
            if e not in edge_labels:
                raise GraphError(f"flagged edge {e!r} is not an edge of the graph")

        order = _sorted_vertices(labels)
        self._labels = {v: labels[v] for v in order}
        rank = {v: i for i, v in enumerate(order)}
        self._edges = {
            e: edge_labels[e] for e in sorted(edge_labels, key=lambda e: (rank[e[0]], rank[e[1]]))
        }
        self._flagged: FrozenSet[Edge] = flags
        succ: Dict[Vertex, Dict[Vertex, str]] = {v: {} for v in order}
        pred: Dict[Vertex, Dict[Vertex, str]] = {v: {} for v in order}
        for (u, v), lbl in self._edges.items():
            succ[u][v] = lbl
            pred[v][u] = lbl
        self._succ = succ
        self._pred = pred
        self._cache: dict = {}
        self._hash = None

    # -- basic accessors -------------------------------------------------

    @property
    def vertices(self) -> Dict[Vertex, str]:
        return self._labels

    @property
    def edges(self) -> Dict[Edge, str]:
        return self._edges

    @property
    def flagged(self) -> FrozenSet[Edge]:
        return self._flagged

    @property
    def n(self) -> int:
        return len(self._labels)

    @property
    def m(self) -> int:
        return len(self._edges)

    def label(self, v: Vertex) -> str:
        return self._labels[v]

    def edge_label(self, u: Vertex, v: Vertex) -> str:
        return self._edges[(u, v)]

    def has_edge(self, u: Vertex, v: Vertex) -> bool:
        return (u, v) in self._edges

    def is_flagged(self, u: Vertex, v: Vertex) -> bool:
        return (u, v) in self._flagged

    def succ(self, v: Vertex) -> Dict[Vertex, str]:
        return self._succ[v]

    def pred(self, v: Vertex) -> Dict[Vertex, str]:
        return self._pred[v]

    def neighbors(self, v: Vertex) -> set:
        """Vertices adjacent to ``v`` in either direction."""
        return set(self._succ[v]).union(self._pred[v])

    def incident_edges(self, v: Vertex) -> list:
        return [(v, w) for w in self._succ[v]] + [(w, v) for w in self._pred[v]]

    def __contains__(self, v) -> bool:
        return v in self._labels

    def __len__(self) -> int:
        return len(self._labels)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LabeledDigraph):
            return NotImplemented
        return (
            self._labels == other._labels
            and self._edges == other._edges
            and self._flagged == other._flagged
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(
                (
                    frozenset(self._labels.items()),
                    frozenset(self._edges.items()),
                    self._flagged,
                )
            )
        return self._hash

    def __repr__(self) -> str:
        edges = ", ".join(
            f"{u}->{v}{'*' if (u, v) in self._flagged else ''}" for u, v in self._edges
        )
        return f"LabeledDigraph(n={self.n}, m={self.m}, edges=[{edges}])"

    # -- adjacency views keyed by match mode ------------------------------

    def adjacency(self, mode: MatchMode):
        """Return ``(succ, pred)`` dicts whose edge keys depend on ``mode``.

        Keys are the edge label under ``LABELS_ONLY`` and ``(label, flag)``
        under ``WITH_FLAGS``.
        """
        key = ("adj", mode)
        adj = self._cache.get(key)
        if adj is None:
            if mode is LABELS_ONLY or not self._flagged:
                if mode is LABELS_ONLY:
                    adj = (self._succ, self._pred)
                else:
                    adj = (
                        {v: {w: (l, False) for w, l in d.items()} for v, d in self._succ.items()},
                        {v: {w: (l, False) for w, l in d.items()} for v, d in self._pred.items()},
                    )
            else:
                fl = self._flagged
                adj = (
                    {v: {w: (l, (v, w) in fl) for w, l in d.items()} for v, d in self._succ.items()},
                    {v: {w: (l, (w, v) in fl) for w, l in d.items()} for v, d in self._pred.items()},
                )
            self._cache[key] = adj
        return adj

    # -- derived graphs ----------------------------------------------------

    def induced_subgraph(self, vs: Iterable[Vertex]) -> "LabeledDigraph":
        """Restriction to ``vs`` keeping every edge with both endpoints inside."""
        keep = set(vs)
        unknown = keep.difference(self._labels)
        if unknown:
            raise GraphError(f"unknown vertex ids: {sorted(unknown, key=repr)}")
        return LabeledDigraph(
            {v: l for v, l in self._labels.items() if v in keep},
            {e: l for e, l in self._edges.items() if e[0] in keep and e[1] in keep},
            [e for e in self._flagged if e[0] in keep and e[1] in keep],
        )

    def edge_subgraph(self, edges: Iterable[Edge]) -> "LabeledDigraph":
        """Subgraph made of ``edges`` and their endpoints (labels and flags kept)."""
        es = set(edges)
        vs = {v for e in es for v in e}
        return LabeledDigraph(
            {v: self._labels[v] for v in vs},
            {e: self._edges[e] for e in es},
            [e for e in es if e in self._flagged],
        )

    def remove_vertices(self, vs: Iterable[Vertex]) -> "LabeledDigraph":
        drop = set(vs)
        return self.induced_subgraph(v for v in self._labels if v not in drop)

    def with_flags(self, flagged: Iterable[Edge]) -> "LabeledDigraph":
        """Copy of the graph whose negative flags are exactly ``flagged``."""
        return LabeledDigraph(self._labels, self._edges, flagged)

    def without_flags(self) -> "LabeledDigraph":
        if not self._flagged:
            return self
        return LabeledDigraph(self._labels, self._edges)

    def relabeled(self, mapping: Mapping[Vertex, Vertex]) -> "LabeledDigraph":
        """Isomorphic copy with vertex ids renamed through ``mapping``."""
        return LabeledDigraph(
            {mapping[v]: l for v, l in self._labels.items()},
            {(mapping[u], mapping[v]): l for (u, v), l in self._edges.items()},
            [(mapping[u], mapping[v]) for u, v in self._flagged],
        )

    def is_weakly_connected(self) -> bool:
        if not self._labels:
            return True
        start = next(iter(self._labels))
        seen = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for w in self._succ[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
            for w in self._pred[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(self._labels)


def _sorted_vertices(labels) -> list:
    try:
        return sorted(labels)
    except TypeError:
        return sorted(labels, key=repr)


def is_edge_set_connected(edges: Iterable[Edge]) -> bool:
    """True when the undirected graph spanned by ``edges`` is connected."""
    adj: Dict[Vertex, list] = {}
    for u, v in edges:
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    if not adj:
        return True
    start = next(iter(adj))
    seen = {start}
    stack = [start]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(adj)


def induced_subgraph(g: LabeledDigraph, vs: Iterable[Vertex]) -> LabeledDigraph:
    return g.induced_subgraph(vs)
