"""Benchmark core patterns, their generalization rules and the planted-GP generator."""

from __future__ import annotations

import enum
import json
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Tuple

import numpy as np

from gpforge.graph import DEFAULT_LABEL, GraphError, LabeledDigraph
from gpforge.io import read_graph, read_vertex_sets, write_graph, write_vertex_sets
from gpforge.matching import subgraph_match
from gpforge.mining import is_natural_expansion


class CorePattern(enum.Enum):
    WP1 = "wp1"
    WP2 = "wp2"
    BP1 = "bp1"
    BP2 = "bp2"

    @property
    def is_web(self) -> bool:
        return self in (CorePattern.WP1, CorePattern.WP2)


class GenRuleKind(enum.Enum):
    STRONG = "strong"
    WEAK = "weak"
    CHAIN = "chain"


# base edges per pattern; vertex 0 is the index page for the web patterns
_BASE_EDGES: Dict[CorePattern, List[Tuple[int, int]]] = {
    # index page with two content pages, pages chained forward
    CorePattern.WP1: [(0, 1), (0, 2), (1, 2)],
    # index page and one content page linked both ways
    CorePattern.WP2: [(0, 1), (1, 0)],
    # feed-forward loop X->Y, X->Z, Y->Z
    CorePattern.BP1: [(0, 1), (0, 2), (1, 2)],
    # bi-fan X1,X2 -> Y1,Y2
    CorePattern.BP2: [(0, 2), (0, 3), (1, 2), (1, 3)],
}

_BASE_SIZE = {CorePattern.WP1: 3, CorePattern.WP2: 2, CorePattern.BP1: 3, CorePattern.BP2: 4}

# extra vertices on top of the base: web patterns up to +6, biological up to +3
DEFAULT_EXTRA = {CorePattern.WP1: 6, CorePattern.WP2: 6, CorePattern.BP1: 3, CorePattern.BP2: 3}

DEFAULT_RULE = {
    CorePattern.WP1: GenRuleKind.CHAIN,
    CorePattern.WP2: GenRuleKind.CHAIN,
    CorePattern.BP1: GenRuleKind.STRONG,
    CorePattern.BP2: GenRuleKind.STRONG,
}


def base_graph(pattern: CorePattern) -> LabeledDigraph:
    pattern = CorePattern(pattern)
    return LabeledDigraph(range(_BASE_SIZE[pattern]), _BASE_EDGES[pattern])


def role_orbits(core: LabeledDigraph) -> List[frozenset]:
    """Automorphism orbits of the core's vertices, ordered by smallest member.

    Automorphisms are the self-embeddings: with equal vertex and edge counts
    every embedding of a graph into itself is bijective on edges.
    """
    parent = {v: v for v in core.vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for auto in subgraph_match(core, core):
        for v, w in auto.items():
            rv, rw = find(v), find(w)
            if rv != rw:
                parent[rw] = rv
    groups: Dict = {}
    for v in core.vertices:
        groups.setdefault(find(v), set()).add(v)
    orbits = [frozenset(g) for g in groups.values()]
    order = {v: i for i, v in enumerate(core.vertices)}
    return sorted(orbits, key=lambda o: min(order[v] for v in o))


@dataclass
class _Growing:
    """A GP under construction: edge set plus the base role of each vertex."""

    edges: set
    role: Dict[int, int]
    steps: List[int] = field(default_factory=list)

    @property
    def n(self) -> int:
        return len(self.role)

    def graph(self) -> LabeledDigraph:
        return LabeledDigraph(range(self.n), self.edges)


def _duplicate(state: _Growing, orbits, rng, weak: bool, base: Optional[LabeledDigraph] = None) -> None:
    orbit = orbits[int(rng.integers(len(orbits)))]
    role = min(orbit)
    members = [v for v in range(state.n) if state.role[v] in orbit]
    src = members[int(rng.integers(len(members)))]
    new = state.n
    incident = [(new, w) for (u, w) in sorted(state.edges) if u == src]
    incident += [(u, new) for (u, w) in sorted(state.edges) if w == src]
    if weak and incident:
        incident = _weak_subset(state, incident, new, rng, base)
    state.role[new] = role
    state.edges.update(incident)
    state.steps.append(src)


def _weak_subset(state, incident, new, rng, base, tries: int = 1000) -> list:
    """Uniform nonempty subset of ``incident`` through which ``new`` still completes a base copy."""
    old = set(range(state.n))
    for _ in range(tries):
        mask = rng.random(len(incident)) < 0.5
        if not mask.any():
            continue
        keep = [e for e, k in zip(incident, mask) if k]
        if base is None:
            return keep
        g = LabeledDigraph(range(new + 1), state.edges | set(keep))
        if is_natural_expansion(base, g, old, new):
            return keep
    return incident


def _append_page(state: _Growing, pattern: CorePattern) -> None:
    last = state.n - 1
    new = state.n
    if pattern is CorePattern.WP1:
        state.edges.update([(0, new), (last, new)])
    else:
        state.edges.update([(last, new), (new, last)])
    state.role[new] = 1
    state.steps.append(last)


def instantiate_gp(
    pattern: CorePattern,
    rule: GenRuleKind,
    target_vertices: int,
    rng: np.random.Generator,
) -> LabeledDigraph:
    """Grow the base pattern one vertex at a time up to ``target_vertices``.

    Vertices are numbered ``0..target_vertices-1`` in order of creation.
    """
    return _instantiate(CorePattern(pattern), GenRuleKind(rule), target_vertices, rng).graph()


def _instantiate(pattern, rule, target_vertices, rng) -> _Growing:
    base = _BASE_SIZE[pattern]
    if target_vertices < base:
        raise GraphError(f"{pattern.value} needs at least {base} vertices, got {target_vertices}")
    if rule is GenRuleKind.CHAIN and not pattern.is_web:
        raise GraphError(f"the chain rule only applies to web patterns, not {pattern.value}")
    state = _Growing(set(_BASE_EDGES[pattern]), {v: v for v in range(base)})
    orbits = role_orbits(base_graph(pattern))
    while state.n < target_vertices:
        if rule is GenRuleKind.CHAIN:
            _append_page(state, pattern)
        else:
            _duplicate(state, orbits, rng, rule is GenRuleKind.WEAK, base_graph(pattern))
    return state


@dataclass
class InstanceConfig:
    pattern: str = "bp1"
    rule: Optional[str] = None
    num_gps: int = 20
    random_links: int = 50
    seed: int = 0
    min_size: Optional[int] = None
    max_size: Optional[int] = None

    def resolved(self) -> "InstanceConfig":
        pattern = CorePattern(self.pattern)
        rule = GenRuleKind(self.rule) if self.rule else DEFAULT_RULE[pattern]
        lo = self.min_size if self.min_size is not None else _BASE_SIZE[pattern]
        hi = self.max_size if self.max_size is not None else lo + DEFAULT_EXTRA[pattern]
        return InstanceConfig(
            pattern.value, rule.value, self.num_gps, self.random_links, int(self.seed), lo, hi
        )

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass
class Instance:
    graph: LabeledDigraph
    truth: List[frozenset]
    config: InstanceConfig

    def save(self, directory) -> None:
        d = Path(directory)
        d.mkdir(parents=True, exist_ok=True)
        write_graph(self.graph, d / "graph.txt")
        write_vertex_sets(self.truth, d / "truth.json")
        (d / "config.json").write_text(
            json.dumps(self.config.to_dict(), indent=2, sort_keys=True) + "\n", encoding="utf-8"
        )

    @classmethod
    def load(cls, directory) -> "Instance":
        d = Path(directory)
        cfg = json.loads((d / "config.json").read_text(encoding="utf-8"))
        return cls(
            read_graph(d / "graph.txt"),
            [frozenset(s) for s in read_vertex_sets(d / "truth.json")],
            InstanceConfig(**cfg),
        )


def generate_instance(config: InstanceConfig) -> Instance:
    """Disjoint union of planted GPs plus random links between different GPs."""
    cfg = config.resolved()
    if cfg.num_gps < 1:
        raise GraphError("num_gps must be at least 1")
    if cfg.random_links < 0:
        raise GraphError("random_links must be non-negative")
    pattern, rule = CorePattern(cfg.pattern), GenRuleKind(cfg.rule)
    if cfg.min_size > cfg.max_size:
        raise GraphError("min_size exceeds max_size")
    rng = np.random.default_rng(cfg.seed)

    edges = []
    truth = []
    owner = []
    offset = 0
    for i in range(cfg.num_gps):
        size = int(rng.integers(cfg.min_size, cfg.max_size + 1))
        state = _instantiate(pattern, rule, size, rng)
        edges.extend((u + offset, v + offset) for u, v in sorted(state.edges))
        truth.append(frozenset(range(offset, offset + size)))
        owner.extend([i] * size)
        offset += size
    n = offset

    sizes = [len(t) for t in truth]
    available = n * n - sum(s * s for s in sizes)
    if cfg.random_links > available:
        raise GraphError(
            f"{cfg.random_links} random links requested but only {available} cross-GP pairs exist"
        )
    links = []
    if cfg.random_links * 2 > available:
        pairs = [(u, v) for u in range(n) for v in range(n) if owner[u] != owner[v]]
        picks = rng.choice(len(pairs), size=cfg.random_links, replace=False)
        links = [pairs[i] for i in sorted(picks)]
    else:
        chosen = set()
        while len(links) < cfg.random_links:
            u, v = (int(x) for x in rng.integers(0, n, size=2))
            if owner[u] == owner[v] or (u, v) in chosen:
                continue
            chosen.add((u, v))
            links.append((u, v))
    graph = LabeledDigraph({v: DEFAULT_LABEL for v in range(n)}, {e: DEFAULT_LABEL for e in edges + links})
    return Instance(graph, truth, cfg)
