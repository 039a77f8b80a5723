import numpy as np
import pytest

from conftest import random_digraph
from gpforge.canon import canonical_form
from gpforge.graph import LABELS_ONLY, WITH_FLAGS, GraphError, LabeledDigraph
from gpforge.matching import is_isomorphic, is_subgraph
from gpforge.negatives import (
    candidate_pool,
    check_positive_sets,
    extract_negative_examples,
    filter_negatives,
    negative_edges,
    true_negative_edges,
)
from oracles import oracle_negatives, same_classes

IN_PATH = LabeledDigraph(range(3), [(0, 1), (1, 2)], flagged=[(1, 2)])
OUT_PATH = LabeledDigraph(range(3), [(0, 1), (1, 2)], flagged=[(0, 1)])
FLAGGED_EDGE = LabeledDigraph(range(2), [(0, 1)], flagged=[(0, 1)])


def test_negative_edges_f1(f1):
    edges, flagged = negative_edges(f1, [{1, 2, 3}, {4, 5, 6}])
    assert edges == {(3, 4)}
    assert flagged.flagged == frozenset({(3, 4)})


def test_negative_edges_single_positive(f1):
    edges, _ = negative_edges(f1, [{1, 2, 3}])
    assert edges == {(3, 4)}


def test_true_negative_edges(f1):
    assert true_negative_edges(f1, [{1, 2, 3}, {4, 5, 6}]) == {(3, 4)}
    assert true_negative_edges(f1, [{1, 2, 3}]) == {(3, 4), (4, 5), (4, 6), (5, 6)}


def test_f1_k3(f1):
    negs = extract_negative_examples(f1, [{1, 2, 3}, {4, 5, 6}], k=3)
    assert len(negs) == 2
    assert same_classes(negs, [IN_PATH, OUT_PATH], flags=True)


def test_f1_k2(f1):
    negs = extract_negative_examples(f1, [{1, 2, 3}, {4, 5, 6}], k=2)
    assert len(negs) == 1 and is_isomorphic(negs[0], FLAGGED_EDGE, WITH_FLAGS)


def test_every_negative_has_a_flag(f1):
    for k in (2, 3, 4):
        for g in extract_negative_examples(f1, [{1, 2, 3}], k):
            assert g.flagged and g.n <= k


def test_no_negative_edges():
    g = LabeledDigraph(range(4), [(0, 1), (2, 3)])
    assert extract_negative_examples(g, [{0, 1}, {2, 3}], 3) == []


@pytest.mark.parametrize("sets", [[set()], [{1, 99}], [{1, 2}, {2, 3}]])
def test_invalid_positive_sets(f1, sets):
    with pytest.raises(GraphError):
        check_positive_sets(f1, sets)


def test_k_below_two(f1):
    with pytest.raises(ValueError):
        extract_negative_examples(f1, [{1, 2, 3}], k=1)


def test_filter_drops_candidates_containing_a_positive():
    pos = LabeledDigraph(range(2), [(0, 1)])
    assert filter_negatives([IN_PATH, OUT_PATH], [pos]) == []


def test_filter_keeps_larger_of_nested_pair():
    big = LabeledDigraph(range(3), [(0, 1), (1, 2)], flagged=[(1, 2)])
    pos = LabeledDigraph(range(3), [(0, 1), (0, 2), (1, 2)])
    out = filter_negatives([FLAGGED_EDGE, big], [pos])
    assert len(out) == 1 and is_isomorphic(out[0], big, WITH_FLAGS)


@pytest.mark.parametrize("seed", range(25))
def test_output_properties(seed):
    r = np.random.default_rng(seed)
    g = random_digraph(r, 9, 0.25)
    vs = list(g.vertices)
    positives = [set(vs[:3]), set(vs[5:7])]
    negs = extract_negative_examples(g, positives, 4)
    codes = [canonical_form(x, WITH_FLAGS) for x in negs]
    assert len(set(codes)) == len(codes)
    pos_graphs = [g.induced_subgraph(p) for p in positives]
    for a in negs:
        assert not any(is_subgraph(p, a, LABELS_ONLY) for p in pos_graphs)
        for b in negs:
            if a is not b:
                assert not is_subgraph(a, b, WITH_FLAGS)


@pytest.mark.parametrize("seed", range(10))
def test_monotone_pools(seed):
    r = np.random.default_rng(100 + seed)
    g = random_digraph(r, 8, 0.3)
    _, flagged = negative_edges(g, [{0, 1, 2}])
    if not flagged.flagged:
        return
    small = candidate_pool(flagged, 3)
    big = {canonical_form(x, WITH_FLAGS) for x in candidate_pool(flagged, 4)}
    assert {canonical_form(x, WITH_FLAGS) for x in small} <= big


@pytest.mark.parametrize("seed", range(12))
def test_matches_subset_oracle(seed):
    r = np.random.default_rng(1000 + seed)
    n = int(r.integers(5, 10))
    g = random_digraph(r, n, 0.25, vlabels="ab")
    positives = [set(range(0, 2)), set(range(3, 5))]
    k = int(r.integers(2, 5))
    got = extract_negative_examples(g, positives, k)
    want = oracle_negatives(g, positives, k)
    assert same_classes(got, want, flags=True)


def test_sampling_is_deterministic(f1):
    a = extract_negative_examples(f1, [{1, 2, 3}], 4, 0.5, np.random.default_rng(3))
    b = extract_negative_examples(f1, [{1, 2, 3}], 4, 0.5, np.random.default_rng(3))
    assert [canonical_form(x, WITH_FLAGS) for x in a] == [canonical_form(x, WITH_FLAGS) for x in b]
