"""Subgraph isomorphism (monomorphism) and graph isomorphism by backtracking."""

from __future__ import annotations

from collections import Counter
from typing import Dict, Iterator, Mapping, Optional

from gpforge.graph import LABELS_ONLY, LabeledDigraph, MatchMode, Vertex

Embedding = Dict[Vertex, Vertex]


def _plan(pattern: LabeledDigraph, mode: MatchMode, fixed: tuple):
    """Vertex order plus per-position adjacency constraints for the search."""
    key = ("plan", mode, fixed)
    plan = pattern._cache.get(key)
    if plan is not None:
        return plan
    psucc, ppred = pattern.adjacency(mode)
    verts = list(pattern.vertices)
    pos = {v: i for i, v in enumerate(verts)}
    order = list(fixed)
    placed = set(order)
    remaining = [v for v in verts if v not in placed]
    while remaining:
        best = max(
            remaining,
            key=lambda v: (
                sum(1 for w in psucc[v] if w in placed) + sum(1 for w in ppred[v] if w in placed),
                len(psucc[v]) + len(ppred[v]),
                -pos[v],
            ),
        )
        remaining.remove(best)
        order.append(best)
        placed.add(best)
    index = {v: i for i, v in enumerate(order)}
    steps = []
    for i, v in enumerate(order):
        outs = [(index[w], k) for w, k in psucc[v].items() if index[w] < i]
        ins = [(index[w], k) for w, k in ppred[v].items() if index[w] < i]
        steps.append(
            (v, pattern.label(v), len(psucc[v]), len(ppred[v]), tuple(outs), tuple(ins))
        )
    plan = (tuple(order), tuple(steps))
    pattern._cache[key] = plan
    return plan


def subgraph_match(
    pattern: LabeledDigraph,
    host: LabeledDigraph,
    mode: MatchMode = LABELS_ONLY,
    *,
    fixed: Optional[Mapping[Vertex, Vertex]] = None,
    allowed=None,
) -> Iterator[Embedding]:
    """Yield every embedding of ``pattern`` into ``host`` exactly once.

    An embedding is an injective, label-preserving vertex map under which
    each pattern edge lands on a host edge with the same key (label, plus the
    negative flag in ``WITH_FLAGS`` mode). Host edges need not be covered, so
    this is the non-induced subgraph relation.

    ``fixed`` pre-assigns some pattern vertices. ``allowed`` restricts the
    host vertices available to the *unfixed* pattern vertices.
    """
    fixed = dict(fixed or {})
    if len(set(fixed.values())) != len(fixed):
        return
    for p, h in fixed.items():
        if p not in pattern or h not in host or pattern.label(p) != host.label(h):
            return
    if pattern.n > host.n or pattern.m > host.m:
        return

    order, steps = _plan(pattern, mode, tuple(fixed))
    hsucc, hpred = host.adjacency(mode)
    hlabels = host.vertices
    nf = len(fixed)
    n = len(order)
    img: list = [None] * n
    used = set()

    for i, p in enumerate(order[:nf]):
        _, lbl, dout, din, outs, ins = steps[i]
        h = fixed[p]
        if len(hsucc[h]) < dout or len(hpred[h]) < din:
            return
        hs, hp = hsucc[h], hpred[h]
        for j, k in outs:
            if hs.get(img[j]) != k:
                return
        for j, k in ins:
            if hp.get(img[j]) != k:
                return
        img[i] = h
        used.add(h)

    if nf == n:
        yield dict(fixed)
        return

    all_hosts = list(hlabels) if allowed is None else [h for h in hlabels if h in allowed]

    def candidates(i):
        _, lbl, dout, din, outs, ins = steps[i]
        if outs:
            j, _ = outs[0]
            pool = hpred[img[j]]
        elif ins:
            j, _ = ins[0]
            pool = hsucc[img[j]]
        else:
            pool = all_hosts
        for h in pool:
            if h in used or hlabels[h] != lbl:
                continue
            if allowed is not None and h not in allowed:
                continue
            hs, hp = hsucc[h], hpred[h]
            if len(hs) < dout or len(hp) < din:
                continue
            ok = True
            for j, k in outs:
                if hs.get(img[j]) != k:
                    ok = False
                    break
            if ok:
                for j, k in ins:
                    if hp.get(img[j]) != k:
                        ok = False
                        break
            if ok:
                yield h

    def extend(i):
        if i == n:
            yield {order[t]: img[t] for t in range(n)}
            return
        for h in candidates(i):
            img[i] = h
            used.add(h)
            yield from extend(i + 1)
            used.discard(h)
        img[i] = None

    yield from extend(nf)


def find_embedding(pattern, host, mode=LABELS_ONLY, **kw) -> Optional[Embedding]:
    return next(subgraph_match(pattern, host, mode, **kw), None)


def is_subgraph(pattern: LabeledDigraph, host: LabeledDigraph, mode=LABELS_ONLY) -> bool:
    """``pattern`` matches ``host``: some embedding exists."""
    if pattern.n > host.n or pattern.m > host.m:
        return False
    if mode is not LABELS_ONLY and len(pattern.flagged) > len(host.flagged):
        return False
    return find_embedding(pattern, host, mode) is not None


def _profile(g: LabeledDigraph, mode: MatchMode):
    key = ("profile", mode)
    prof = g._cache.get(key)
    if prof is None:
        succ, pred = g.adjacency(mode)
        vertex_sig = Counter(
            (g.label(v), tuple(sorted(Counter(succ[v].values()).items())),
             tuple(sorted(Counter(pred[v].values()).items())))
            for v in g.vertices
        )
        prof = (g.n, g.m, len(g.flagged) if mode is not LABELS_ONLY else 0, vertex_sig)
        g._cache[key] = prof
    return prof


def is_isomorphic(a: LabeledDigraph, b: LabeledDigraph, mode: MatchMode = LABELS_ONLY) -> bool:
    """Bijective, label- and edge-preserving (both ways) vertex map exists.

    With equal vertex and edge counts a monomorphism is a bijection on both
    vertices and edges, so a single embedding search decides isomorphism.
    """
    if _profile(a, mode) != _profile(b, mode):
        return False
    return find_embedding(a, b, mode) is not None
