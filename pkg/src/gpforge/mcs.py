"""Maximum common subgraphs of two labeled digraphs.

Common subgraphs are arbitrary (not necessarily induced or connected) and
compared by vertex count first, then edge count. Every non-isomorphic common
subgraph reaching the optimum is returned.
"""

from __future__ import annotations

from collections import Counter

from gpforge.canon import canonical_form, dedupe
from gpforge.graph import LABELS_ONLY, LabeledDigraph
from gpforge.matching import is_subgraph


def common_vertex_bound(a: LabeledDigraph, b: LabeledDigraph) -> int:
    ca = Counter(a.vertices.values())
    cb = Counter(b.vertices.values())
    return sum(min(c, cb[l]) for l, c in ca.items())


def maximal_common_subgraphs(a: LabeledDigraph, b: LabeledDigraph) -> list:
    """All maximum common subgraphs of ``a`` and ``b`` (flags ignored).

    Returns an empty list when the graphs share no vertex label. Results are
    concrete subgraphs of the smaller input with flags dropped, deduplicated
    and ordered by canonical code.
    """
    a = a.without_flags()
    b = b.without_flags()
    target = common_vertex_bound(a, b)
    if target == 0:
        return []
    if a.n == target and is_subgraph(a, b):
        return [a]
    if b.n == target and is_subgraph(b, a):
        return [b]
    if a.n > b.n:
        a, b = b, a

    # order a's vertices so that edges close early (tighter bound)
    verts = list(a.vertices)
    order = []
    placed = set()
    while len(order) < len(verts):
        best = max(
            (v for v in verts if v not in placed),
            key=lambda v: (len(a.neighbors(v) & placed), len(a.neighbors(v))),
        )
        order.append(best)
        placed.add(best)
    index = {v: i for i, v in enumerate(order)}
    n = len(order)
    # back[i]: edges from vertex i to earlier vertices, as (j, out?, label)
    back = []
    for i, v in enumerate(order):
        row = []
        for w, l in a.succ(v).items():
            if index[w] < i:
                row.append((index[w], True, l, (v, w)))
        for w, l in a.pred(v).items():
            if index[w] < i:
                row.append((index[w], False, l, (w, v)))
        back.append(row)
    remaining_edges = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        remaining_edges[i] = remaining_edges[i + 1] + len(back[i])

    alabel = [a.label(v) for v in order]
    bverts = list(b.vertices)
    bsucc = {v: b.succ(v) for v in bverts}
    # per label: how many a-vertices at positions >= i carry it
    suffix = [Counter() for _ in range(n + 1)]
    for i in range(n - 1, -1, -1):
        suffix[i] = suffix[i + 1].copy()
        suffix[i][alabel[i]] += 1
    bfree = Counter(b.vertices.values())

    img = [None] * n
    used = set()
    best = [-1]
    solutions = set()

    def reachable(i, mapped):
        return mapped + sum(min(c, bfree[l]) for l, c in suffix[i].items()) >= target

    def rec(i, mapped, common, chosen):
        if common + remaining_edges[i] < best[0]:
            return
        if i == n:
            if mapped != target:
                return
            if common > best[0]:
                best[0] = common
                solutions.clear()
            solutions.add((frozenset(order[t] for t in range(n) if img[t] is not None),
                           frozenset(chosen)))
            return
        lbl = alabel[i]
        for h in bverts:
            if h in used or b.label(h) != lbl:
                continue
            gained = []
            for j, out, l, e in back[i]:
                hj = img[j]
                if hj is None:
                    continue
                if out:
                    if bsucc[h].get(hj) == l:
                        gained.append(e)
                elif bsucc[hj].get(h) == l:
                    gained.append(e)
            img[i] = h
            used.add(h)
            bfree[lbl] -= 1
            rec(i + 1, mapped + 1, common + len(gained), chosen + gained)
            bfree[lbl] += 1
            used.discard(h)
            img[i] = None
        # leave a's vertex unmapped
        if reachable(i + 1, mapped):
            rec(i + 1, mapped, common, chosen)

    rec(0, 0, 0, [])
    graphs = []
    for vs, es in solutions:
        graphs.append(
            LabeledDigraph({v: a.label(v) for v in vs}, {e: a.edge_label(*e) for e in es})
        )
    return dedupe(graphs, LABELS_ONLY)


def mcs_codes(a: LabeledDigraph, b: LabeledDigraph) -> list:
    return [canonical_form(g) for g in maximal_common_subgraphs(a, b)]
