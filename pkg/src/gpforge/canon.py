"""Canonical codes for small labeled digraphs.

Colour refinement followed by individualization over every vertex of the
first non-singleton cell; the code is the lexicographically smallest leaf.
No automorphism pruning: the graphs handled here have at most a dozen or so
vertices and small symmetric cells.
"""

from __future__ import annotations

import json
from functools import lru_cache
from typing import Iterable

from gpforge.graph import LABELS_ONLY, LabeledDigraph, MatchMode


def _normal_key(g: LabeledDigraph, mode: MatchMode) -> tuple:
    """Vertex-id-free description of ``g`` (vertices renumbered in id order)."""
    idx = {v: i for i, v in enumerate(g.vertices)}
    labels = tuple(g.vertices.values())
    if mode is LABELS_ONLY:
        edges = tuple((idx[u], idx[v], l) for (u, v), l in g.edges.items())
    else:
        fl = g.flagged
        edges = tuple((idx[u], idx[v], (l, (u, v) in fl)) for (u, v), l in g.edges.items())
    return labels, edges


def canonical_form(g: LabeledDigraph, mode: MatchMode = LABELS_ONLY) -> bytes:
    """Byte code equal for two graphs iff they are isomorphic under ``mode``."""
    key = ("canon", mode)
    code = g._cache.get(key)
    if code is None:
        code = _canonical_from_key(_normal_key(g, mode))
        g._cache[key] = code
    return code


def canonical_graph(g: LabeledDigraph, mode: MatchMode = LABELS_ONLY) -> LabeledDigraph:
    """Isomorphic copy of ``g`` on vertices ``0..n-1`` in canonical order."""
    code = json.loads(canonical_form(g, mode))
    labels, edges = code
    flagged = []
    emap = {}
    for u, v, k in edges:
        if mode is LABELS_ONLY:
            emap[(u, v)] = k
        else:
            emap[(u, v)] = k[0]
            if k[1]:
                flagged.append((u, v))
    return LabeledDigraph(dict(enumerate(labels)), emap, flagged)


@lru_cache(maxsize=500_000)
def _canonical_from_key(key: tuple) -> bytes:
    labels, edges = key
    n = len(labels)
    succ = [[] for _ in range(n)]
    pred = [[] for _ in range(n)]
    for u, v, k in edges:
        succ[u].append((v, k))
        pred[v].append((u, k))
    ranks = {l: i for i, l in enumerate(sorted(set(labels)))}
    colors = [ranks[l] for l in labels]
    best = None
    for leaf in _search(colors, succ, pred):
        pos = leaf
        code_edges = sorted((pos[u], pos[v], k) for u, v, k in edges)
        inv = [0] * n
        for v in range(n):
            inv[pos[v]] = v
        code = (tuple(labels[inv[i]] for i in range(n)), tuple(code_edges))
        if best is None or _order_key(code) < _order_key(best):
            best = code
    if best is None:
        best = ((), ())
    return json.dumps(
        [list(best[0]), [list(e) for e in best[1]]], separators=(",", ":"), ensure_ascii=False
    ).encode()


def _order_key(code):
    return code[0], code[1]


def _refine(colors, succ, pred):
    n = len(colors)
    ncolors = len(set(colors))
    while True:
        sigs = [
            (
                colors[v],
                tuple(sorted((k, colors[w]) for w, k in succ[v])),
                tuple(sorted((k, colors[w]) for w, k in pred[v])),
            )
            for v in range(n)
        ]
        rank = {s: i for i, s in enumerate(sorted(set(sigs)))}
        colors = [rank[s] for s in sigs]
        if len(rank) == ncolors:
            return colors
        ncolors = len(rank)


def _search(colors, succ, pred) -> Iterable[list]:
    colors = _refine(colors, succ, pred)
    n = len(colors)
    if len(set(colors)) == n:
        yield colors
        return
    counts = {}
    for c in colors:
        counts[c] = counts.get(c, 0) + 1
    target = min(c for c, cnt in counts.items() if cnt > 1)
    for v in range(n):
        if colors[v] != target:
            continue
        child = [2 * c + (1 if c == target and w != v else 0) for w, c in enumerate(colors)]
        yield from _search(child, succ, pred)


def sort_by_code(graphs: Iterable[LabeledDigraph], mode: MatchMode = LABELS_ONLY) -> list:
    return sorted(graphs, key=lambda g: canonical_form(g, mode))


def dedupe(graphs: Iterable[LabeledDigraph], mode: MatchMode = LABELS_ONLY) -> list:
    """One representative per isomorphism class, ordered by canonical code."""
    out = {}
    for g in graphs:
        out.setdefault(canonical_form(g, mode), g)
    return [out[c] for c in sorted(out)]
