import sys
from pathlib import Path

import numpy as np
import pytest
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from gpforge.graph import LabeledDigraph  # noqa: E402

F1_EDGES = [(1, 2), (1, 3), (2, 3), (4, 5), (4, 6), (5, 6), (3, 4)]


def make_f1() -> LabeledDigraph:
    return LabeledDigraph(range(1, 7), F1_EDGES)


@pytest.fixture
def f1():
    return make_f1()


def random_digraph(rng, n, p=0.3, vlabels="a", elabels="x", flag_p=0.0) -> LabeledDigraph:
    """Seeded random digraph with vertices ``0..n-1``."""
    verts = {v: vlabels[int(rng.integers(len(vlabels)))] for v in range(n)}
    edges, flagged = {}, []
    for u in range(n):
        for v in range(n):
            if u != v and rng.random() < p:
                edges[(u, v)] = elabels[int(rng.integers(len(elabels)))]
                if rng.random() < flag_p:
                    flagged.append((u, v))
    return LabeledDigraph(verts, edges, flagged)


@st.composite
def digraphs(draw, min_n=1, max_n=6, vlabels="ab", elabels="xy", flags=False):
    n = draw(st.integers(min_n, max_n))
    verts = {v: draw(st.sampled_from(vlabels)) for v in range(n)}
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs))) if pairs else []
    edges = {e: draw(st.sampled_from(elabels)) for e in chosen}
    flagged = [e for e in chosen if flags and draw(st.booleans())]
    return LabeledDigraph(verts, edges, flagged)


def rng(seed=0):
    return np.random.default_rng(seed)


def pytest_terminal_summary(terminalreporter):
    from _report import LINES

    if LINES:
        terminalreporter.section("acceptance criteria")
        for n in sorted(LINES):
            terminalreporter.write_line(LINES[n])
