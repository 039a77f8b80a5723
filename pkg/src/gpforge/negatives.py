"""Negative edges and negative examples derived from user-selected positives."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Sequence

import numpy as np

from gpforge.canon import canonical_form
from gpforge.enumeration import enumerate_connected_subgraphs
from gpforge.graph import LABELS_ONLY, WITH_FLAGS, GraphError, LabeledDigraph
from gpforge.matching import is_subgraph


@dataclass
class ExampleSet:
    """User positives (as vertex sets into the host) and the derived negatives."""

    host: LabeledDigraph
    positive_sets: List[frozenset]
    negatives: list = field(default_factory=list)

    @property
    def positives(self) -> list:
        return [self.host.induced_subgraph(vs) for vs in self.positive_sets]


def check_positive_sets(g: LabeledDigraph, positives: Iterable[Iterable]) -> List[frozenset]:
    """Validate positive vertex sets: known ids, non-empty, pairwise disjoint."""
    sets = [frozenset(p) for p in positives]
    seen = {}
    for i, vs in enumerate(sets):
        if not vs:
            raise GraphError(f"positive example {i} is empty")
        unknown = [v for v in vs if v not in g]
        if unknown:
            raise GraphError(f"positive example {i} has unknown vertices {sorted(unknown, key=repr)}")
        for v in vs:
            if v in seen:
                raise GraphError(f"positive examples {seen[v]} and {i} overlap at vertex {v!r}")
            seen[v] = i
    return sets


def negative_edges(g: LabeledDigraph, positives: Iterable[Iterable]):
    """Edges with exactly one endpoint in some positive vertex set.

    Returns ``(edges, flagged_graph)`` where ``flagged_graph`` is a copy of
    ``g`` whose negative flags are exactly those edges.
    """
    sets = check_positive_sets(g, positives)
    owner = {v: i for i, vs in enumerate(sets) for v in vs}
    edges = set()
    for (u, v) in g.edges:
        ou, ov = owner.get(u), owner.get(v)
        if ou is None and ov is None:
            continue
        if ou != ov:
            edges.add((u, v))
    return edges, g.with_flags(edges)


def true_negative_edges(g: LabeledDigraph, truth: Iterable[Iterable]) -> set:
    """Edges not contained in any ground-truth GP."""
    owner = {v: i for i, vs in enumerate(truth) for v in vs}
    return {
        (u, v) for (u, v) in g.edges
        if owner.get(u) is None or owner.get(u) != owner.get(v)
    }


def candidate_pool(
    flagged: LabeledDigraph,
    k: int,
    sample_frac: float = 1.0,
    rng: Optional[np.random.Generator] = None,
) -> list:
    """All connected subgraphs of at most ``k`` vertices holding a flagged edge."""
    return enumerate_connected_subgraphs(flagged, k, flagged.flagged, sample_frac, rng)


def filter_negatives(pool: Sequence[LabeledDigraph], positives: Sequence[LabeledDigraph]) -> list:
    """Drop candidates containing a positive, then keep only maximal candidates.

    A candidate is dropped when any positive embeds into it with flags
    ignored. Among the rest, a candidate embedding into another one with
    flags respected is dropped in favour of the larger. Isomorphic copies
    collapse to the representative with the smallest canonical code.
    """
    by_code = {}
    for p in pool:
        by_code.setdefault(canonical_form(p, WITH_FLAGS), p)
    survivors = []
    pos = [q.without_flags() for q in positives]
    for code in sorted(by_code):
        p = by_code[code]
        if any(is_subgraph(q, p, LABELS_ONLY) for q in pos):
            continue
        survivors.append((code, p))

    # larger first: a candidate can only be subsumed by one with more vertices or edges
    survivors.sort(key=lambda cp: (-cp[1].n, -cp[1].m, cp[0]))
    kept = []
    for code, p in survivors:
        dominated = False
        for _, q in kept:
            if (q.n, q.m) == (p.n, p.m):
                continue
            if is_subgraph(p, q, WITH_FLAGS):
                dominated = True
                break
        if not dominated:
            kept.append((code, p))
    kept.sort(key=lambda cp: cp[0])
    return [p for _, p in kept]


def extract_negative_examples(
    g: LabeledDigraph,
    positives: Iterable[Iterable],
    k: int = 4,
    sample_frac: float = 1.0,
    rng: Optional[np.random.Generator] = None,
    seed_edges: Optional[Iterable] = None,
) -> list:
    """Negative examples for the positive vertex sets ``positives``.

    ``seed_edges`` overrides the negative edge set (used to build the
    negatives implied by the true GPs); by default it is the union of the
    positives' edge neighbourhoods. Each returned graph carries its negative
    flags and has at most ``k`` vertices.
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    sets = check_positive_sets(g, positives)
    if seed_edges is None:
        edges, flagged = negative_edges(g, sets)
    else:
        edges = set(seed_edges)
        flagged = g.with_flags(edges)
    if not edges:
        return []
    pool = candidate_pool(flagged, k, sample_frac, rng)
    return filter_negatives(pool, [g.induced_subgraph(vs) for vs in sets])


def dump_negatives(negatives: Sequence[LabeledDigraph]) -> str:
    """Text dump of negatives: graph text format, ``neg`` after flagged edges."""
    from gpforge.io import format_graph

    blocks = []
    for i, g in enumerate(negatives):
        blocks.append(f"# negative {i}\n" + format_graph(g, with_flags=True))
    return "\n".join(blocks)
