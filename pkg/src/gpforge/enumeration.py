"""Connected-subgraph enumeration by edge-at-a-time growth."""

from __future__ import annotations

import math
from typing import Iterable, Optional

import numpy as np

from gpforge.canon import canonical_form
from gpforge.graph import WITH_FLAGS, Edge, LabeledDigraph


def _sort_edges(edges):
    try:
        return sorted(edges)
    except TypeError:
        return sorted(edges, key=repr)


def grow_edge_sets(
    g: LabeledDigraph,
    max_vertices: int,
    seed_edges: Iterable[Edge],
    sample_frac: float = 1.0,
    rng: Optional[np.random.Generator] = None,
) -> list:
    """Concrete connected edge sets of ``g`` containing a seed edge.

    Growth proceeds in rounds; round ``r`` holds sets with ``r + 1`` edges.
    With ``sample_frac < 1`` only ``ceil(frac * n)`` of each round's newly
    grown sets (chosen with ``rng``) are kept and expanded further; the seed
    round is always kept whole.
    """
    if max_vertices < 2:
        raise ValueError("max_vertices must be at least 2")
    if not 0.0 < sample_frac <= 1.0:
        raise ValueError("sample_frac must lie in (0, 1]")
    seeds = _sort_edges({tuple(e) for e in seed_edges})
    for e in seeds:
        if e not in g.edges:
            raise ValueError(f"seed edge {e!r} is not an edge of the graph")
    if sample_frac < 1.0 and rng is None:
        rng = np.random.default_rng(0)

    frontier = [frozenset([e]) for e in seeds]
    seen = set(frontier)
    kept = list(frontier)
    while frontier:
        grown = []
        for es in frontier:
            verts = {v for e in es for v in e}
            full = len(verts) >= max_vertices
            for v in verts:
                for e in g.incident_edges(v):
                    if e in es:
                        continue
                    if full and (e[0] not in verts or e[1] not in verts):
                        continue
                    child = es | {e}
                    if child not in seen:
                        seen.add(child)
                        grown.append(child)
        if sample_frac < 1.0 and grown:
            grown.sort(key=lambda s: _sort_edges(s))
            keep = math.ceil(sample_frac * len(grown))
            picks = rng.choice(len(grown), size=keep, replace=False)
            grown = [grown[i] for i in sorted(picks)]
        kept.extend(grown)
        frontier = grown
    return kept


def enumerate_connected_subgraphs(
    g: LabeledDigraph,
    max_vertices: int,
    seed_edges: Iterable[Edge],
    sample_frac: float = 1.0,
    rng: Optional[np.random.Generator] = None,
) -> list:
    """Connected subgraphs with at most ``max_vertices`` vertices holding a seed edge.

    One representative per ``WITH_FLAGS`` isomorphism class, ordered by
    canonical code. See :func:`grow_edge_sets` for the sampling behaviour.
    """
    shapes = {}
    for es in grow_edge_sets(g, max_vertices, seed_edges, sample_frac, rng):
        sub = g.edge_subgraph(es)
        shapes.setdefault(canonical_form(sub, WITH_FLAGS), sub)
    return [shapes[c] for c in sorted(shapes)]
