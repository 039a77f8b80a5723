"""Generalized-pattern mining with the natural expansion rule."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, List, NamedTuple, Optional, Sequence

import numpy as np

from gpforge.canon import canonical_form
from gpforge.graph import LABELS_ONLY, WITH_FLAGS, GraphError, LabeledDigraph
from gpforge.matching import find_embedding, is_subgraph
from gpforge.negatives import (
    candidate_pool,
    extract_negative_examples,
    filter_negatives,
    true_negative_edges,
)


@dataclass(frozen=True)
class GpResult:
    vertex_set: frozenset
    graph: LabeledDigraph
    core: LabeledDigraph
    seed_embedding: Dict

    @property
    def core_code(self) -> bytes:
        return canonical_form(self.core)

    def to_record(self) -> dict:
        return {
            "vertex_set": sorted(self.vertex_set),
            "core_code": self.core_code.decode(),
            "core_vertices": [[v, l] for v, l in self.core.vertices.items()],
            "core_edges": [[u, v, l] for (u, v), l in self.core.edges.items()],
        }


def _check_core(core: LabeledDigraph) -> None:
    if core.n < 2:
        raise GraphError("cores need at least two vertices for natural expansion")


def is_natural_expansion(core: LabeledDigraph, host: LabeledDigraph, current, v) -> bool:
    """``core`` embeds in ``host`` using ``v`` plus ``|V(core)| - 1`` vertices of ``current``."""
    lbl = host.label(v)
    hout, hin = len(host.succ(v)), len(host.pred(v))
    for u in core.vertices:
        if core.label(u) != lbl:
            continue
        if len(core.succ(u)) > hout or len(core.pred(u)) > hin:
            continue
        if find_embedding(core, host, LABELS_ONLY, fixed={u: v}, allowed=current) is not None:
            return True
    return False


def _frontier(core, host, current, alive):
    if core.is_weakly_connected():
        cand = set()
        for v in current:
            cand.update(host.succ(v))
            cand.update(host.pred(v))
    else:
        cand = set(host.vertices)
    cand.difference_update(current)
    if alive is not None:
        cand.intersection_update(alive)
    return [v for v in host.vertices if v in cand]


def natural_expansions(
    core: LabeledDigraph, host: LabeledDigraph, current: Iterable, alive=None
) -> set:
    """Vertices that the natural expansion rule of ``core`` can add to ``current``.

    ``v`` qualifies when ``core`` is a subgraph of the subgraph induced by
    ``v`` and some ``m - 1`` vertices of ``current`` (``m = |V(core)|``).
    ``alive`` optionally restricts the host vertices considered.
    """
    _check_core(core)
    current = set(current)
    return {
        v for v in _frontier(core, host, current, alive)
        if is_natural_expansion(core, host, current, v)
    }


def grow_gp(
    seed: Dict,
    core: LabeledDigraph,
    host: LabeledDigraph,
    alive=None,
    rng: Optional[np.random.Generator] = None,
) -> GpResult:
    """Expand a core embedding to its unique maximal GP.

    Without ``rng`` every qualifying vertex of a round is added at once; with
    ``rng`` one qualifying vertex is drawn per step, which exercises
    arbitrary expansion orders.
    """
    _check_core(core)
    current = set(seed.values())
    while True:
        if rng is None:
            new = natural_expansions(core, host, current, alive)
            if not new:
                break
            current |= new
        else:
            options = sorted(natural_expansions(core, host, current, alive), key=repr)
            if not options:
                break
            current.add(options[int(rng.integers(len(options)))])
    vs = frozenset(current)
    return GpResult(vs, host.induced_subgraph(vs), core, dict(seed))


def core_order(cores: Iterable[LabeledDigraph], k: Optional[int] = None) -> list:
    """Larger cores first, canonical code breaking ties.

    With ``k`` given, cores of at most ``k`` vertices (the ones the negative
    examples can actually vet) all come before the larger ones.
    """
    def key(c):
        unvetted = k is not None and c.n > k
        return (unvetted, -c.n, canonical_form(c))

    return sorted(cores, key=key)


def mine_gps(
    host: LabeledDigraph, cores: Iterable[LabeledDigraph], k: Optional[int] = None
) -> List[GpResult]:
    """Find GPs one embedding at a time, removing each GP before the next search.

    Removal covers the GP's vertices and every incident edge, so emitted GPs
    are pairwise vertex-disjoint. ``k`` is passed to :func:`core_order`.
    """
    cores = core_order(cores, k)
    for c in cores:
        _check_core(c)
    host = host.without_flags()
    alive = set(host.vertices)
    results = []
    for core in cores:
        while True:
            emb = find_embedding(core, host, LABELS_ONLY, allowed=alive)
            if emb is None:
                break
            gp = grow_gp(emb, core, host, alive=alive)
            results.append(gp)
            alive.difference_update(gp.vertex_set)
    return results


class TheoremReport(NamedTuple):
    negatives_agree: bool
    no_positive_in_negatives: bool
    cores_within_k: bool

    @property
    def all(self) -> bool:
        return self.negatives_agree and self.no_positive_in_negatives and self.cores_within_k


def check_theorem1_conditions(
    host: LabeledDigraph,
    positives: Sequence,
    truth: Sequence,
    cores: Sequence[LabeledDigraph],
    k: int,
    negatives: Optional[Sequence[LabeledDigraph]] = None,
    pool_condition: bool = True,
) -> TheoremReport:
    """Evaluate the three preconditions of the soundness guarantee.

    1. The negatives built from the user positives equal, up to flag-aware
       isomorphism, those built from the true negative edges (every edge not
       inside a true GP).
    2. No user positive is a subgraph of any candidate negative subgraph,
       i.e. of any connected subgraph with at most ``k`` vertices holding a
       true negative edge (checked before the positive filter removes them).
       With ``pool_condition=False`` the check runs against the filtered
       negatives instead, where it holds by construction.
    3. Every core has at most ``k`` vertices.
    """
    if negatives is None:
        negatives = extract_negative_examples(host, positives, k)
    truth_edges = true_negative_edges(host, truth)
    pos_graphs = [host.induced_subgraph(p).without_flags() for p in positives]
    if truth_edges:
        pool = candidate_pool(host.with_flags(truth_edges), k)
        neg_truth = filter_negatives(pool, pos_graphs)
    else:
        pool = []
        neg_truth = []
    codes_user = {canonical_form(g, WITH_FLAGS) for g in negatives}
    codes_truth = {canonical_form(g, WITH_FLAGS) for g in neg_truth}
    cond1 = codes_user == codes_truth
    against = pool if pool_condition else negatives
    cond2 = not any(is_subgraph(p, q, LABELS_ONLY) for q in against for p in pos_graphs)
    cond3 = all(c.n <= k for c in cores)
    return TheoremReport(cond1, cond2, cond3)
