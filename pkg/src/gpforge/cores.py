"""Core induction: positive hypothesis lattice, strong matching and relaxation."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, List, Sequence, Tuple

from gpforge.canon import canonical_form, dedupe
from gpforge.graph import LABELS_ONLY, LabeledDigraph, is_edge_set_connected
from gpforge.matching import find_embedding, is_subgraph
from gpforge.mcs import maximal_common_subgraphs


@dataclass(frozen=True)
class Hypothesis:
    graph: LabeledDigraph
    level: int
    parents: Tuple[bytes, ...] = ()

    @property
    def code(self) -> bytes:
        return canonical_form(self.graph)


def strong_match(candidate: LabeledDigraph, negative: LabeledDigraph) -> bool:
    """Some embedding of ``candidate`` into ``negative`` covers a flagged edge."""
    if candidate.m == 0 or candidate.n > negative.n or candidate.m > negative.m:
        return False
    for (x, y) in negative.flagged:
        lbl = negative.edge_label(x, y)
        lx, ly = negative.label(x), negative.label(y)
        for (u, v), l in candidate.edges.items():
            if l != lbl or candidate.label(u) != lx or candidate.label(v) != ly:
                continue
            if find_embedding(candidate, negative, LABELS_ONLY, fixed={u: x, v: y}) is not None:
                return True
    return False


def strongly_matches_any(candidate: LabeledDigraph, negatives: Iterable[LabeledDigraph]) -> bool:
    return any(strong_match(candidate, neg) for neg in negatives)


@dataclass
class Lattice:
    """Surviving lattice elements by canonical code plus the rejected codes."""

    elements: dict = field(default_factory=dict)
    rejected: set = field(default_factory=set)
    depth: int = 0

    def to_records(self) -> list:
        out = []
        for code in sorted(self.elements):
            h = self.elements[code]
            out.append(
                {
                    "level": h.level,
                    "canonical_code": code.decode(),
                    "vertices": [[v, l] for v, l in h.graph.vertices.items()],
                    "edges": [[u, v, l] for (u, v), l in h.graph.edges.items()],
                    "parents": [p.decode() for p in h.parents],
                }
            )
        return out


def grow_lattice(positives: Sequence[LabeledDigraph], negatives: Sequence[LabeledDigraph]) -> Lattice:
    """Levelwise maximum-common-subgraph lattice filtered by strong matching.

    Level 0 holds the deduplicated positives; level ``i + 1`` holds the common
    subgraphs of every pair of distinct level-``i`` elements that strongly
    match no negative. Growth stops once a level contributes no new code.
    """
    if not positives:
        raise ValueError("at least one positive example is required")
    lattice = Lattice()
    current = []
    for g in dedupe([p.without_flags() for p in positives]):
        code = canonical_form(g)
        if strongly_matches_any(g, negatives):
            lattice.rejected.add(code)
            continue
        h = Hypothesis(g, 0)
        lattice.elements[code] = h
        current.append(h)

    level = 0
    while len(current) >= 2:
        level += 1
        nxt = {}
        for i in range(len(current)):
            for j in range(i + 1, len(current)):
                a, b = current[i], current[j]
                # nothing in common: the empty graph is their only generalization
                common = maximal_common_subgraphs(a.graph, b.graph) or [LabeledDigraph()]
                for g in common:
                    code = canonical_form(g)
                    if code in lattice.rejected:
                        continue
                    if code in nxt:
                        h = nxt[code]
                        parents = tuple(sorted(set(h.parents) | {a.code, b.code}))
                        nxt[code] = Hypothesis(h.graph, h.level, parents)
                        continue
                    if code not in lattice.elements and strongly_matches_any(g, negatives):
                        lattice.rejected.add(code)
                        continue
                    nxt[code] = Hypothesis(g, level, tuple(sorted({a.code, b.code})))
        new = [c for c in nxt if c not in lattice.elements]
        if not new:
            break
        for c in new:
            lattice.elements[c] = nxt[c]
        current = [nxt[c] for c in sorted(nxt)]
    lattice.depth = level
    return lattice


def most_general(lattice: Lattice) -> List[Hypothesis]:
    """Surviving elements with no other surviving element strictly below them.

    Edgeless elements take part in the comparison but are never returned.
    """
    items = [lattice.elements[c] for c in sorted(lattice.elements)]
    out = []
    for h in items:
        below = False
        for o in items:
            if o is h or o.graph.n > h.graph.n or o.graph.m > h.graph.m:
                continue
            if is_subgraph(o.graph, h.graph):
                below = True
                break
        if not below and h.graph.m > 0:
            out.append(h)
    return out


def build_positive_lattice(
    positives: Sequence[LabeledDigraph], negatives: Sequence[LabeledDigraph]
) -> List[Hypothesis]:
    """Positive hypotheses: the most general surviving lattice elements."""
    return most_general(grow_lattice(positives, negatives))


def relax_hypothesis(h, negatives: Sequence[LabeledDigraph]) -> List[LabeledDigraph]:
    """Minimal connected edge-bearing subgraphs of ``h`` that avoid strong matches.

    A subgraph qualifies when it strongly matches no negative while every
    connected edge-bearing proper subgraph of it does. Shapes are grown one
    edge at a time; a shape is only grown further while it is itself unsafe
    and all its one-edge-smaller connected subgraphs are unsafe, since any
    other shape already disqualifies all of its supersets.
    """
    g = h.graph if isinstance(h, Hypothesis) else h
    g = g.without_flags()
    if g.m == 0:
        return []

    # code -> (concrete edge sets, safe, all smaller connected subgraphs unsafe)
    current = {}
    for e in g.edges:
        es = frozenset([e])
        code = canonical_form(g.edge_subgraph(es))
        if code in current:
            current[code][0].append(es)
        else:
            sub = g.edge_subgraph(es)
            current[code] = ([es], not strongly_matches_any(sub, negatives), True)

    found = {}
    while current:
        for code, (sets, safe, below) in current.items():
            if safe and below:
                found[code] = g.edge_subgraph(sets[0])
        candidates = {}
        seen = set()
        for code, (sets, safe, below) in current.items():
            if safe or not below:
                continue
            for es in sets:
                verts = {v for e in es for v in e}
                for v in verts:
                    for e in g.incident_edges(v):
                        if e in es:
                            continue
                        child = es | {e}
                        if child in seen:
                            continue
                        seen.add(child)
                        candidates.setdefault(canonical_form(g.edge_subgraph(child)), []).append(child)
        nxt = {}
        for code, sets in candidates.items():
            es = sets[0]
            below = True
            for e in es:
                rest = es - {e}
                if not is_edge_set_connected(rest):
                    continue
                rec = current.get(canonical_form(g.edge_subgraph(rest)))
                if rec is None or rec[1] or not rec[2]:
                    below = False
                    break
            if below:
                sub = g.edge_subgraph(es)
                nxt[code] = (sets, not strongly_matches_any(sub, negatives), True)
            else:
                nxt[code] = (sets, None, False)
        current = nxt

    if not found:
        return [g]
    return [found[c] for c in sorted(found)]


@dataclass
class CoreInduction:
    lattice: Lattice
    hypotheses: List[Hypothesis]
    cores: List[LabeledDigraph]


def induce_cores(
    positives: Sequence[LabeledDigraph], negatives: Sequence[LabeledDigraph]
) -> CoreInduction:
    lattice = grow_lattice(positives, negatives)
    hypotheses = most_general(lattice)
    relaxed = []
    for h in hypotheses:
        relaxed.extend(relax_hypothesis(h, negatives))
    return CoreInduction(lattice, hypotheses, dedupe(relaxed, LABELS_ONLY))


def generate_cores(
    positives: Sequence[LabeledDigraph], negatives: Sequence[LabeledDigraph]
) -> List[LabeledDigraph]:
    """Union of the relaxations of all positive hypotheses, one per shape."""
    if not positives:
        raise ValueError("at least one positive example is required")
    return induce_cores(positives, negatives).cores
