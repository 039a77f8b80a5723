import numpy as np
import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from conftest import digraphs, make_f1, random_digraph
from gpforge.canon import canonical_form, dedupe
from gpforge.enumeration import enumerate_connected_subgraphs
from gpforge.graph import LABELS_ONLY, WITH_FLAGS, GraphError, LabeledDigraph, induced_subgraph
from gpforge.matching import find_embedding, is_isomorphic, is_subgraph, subgraph_match
from gpforge.mcs import maximal_common_subgraphs
from oracles import (
    all_embeddings,
    oracle_connected_subgraphs,
    oracle_is_isomorphic,
    oracle_mcs,
    same_classes,
)

FFL = LabeledDigraph(range(3), [(0, 1), (0, 2), (1, 2)])
EDGE = LabeledDigraph(range(2), [(0, 1)])
IN_PATH = LabeledDigraph(range(3), [(0, 1), (1, 2)], flagged=[(1, 2)])
OUT_PATH = LabeledDigraph(range(3), [(0, 1), (1, 2)], flagged=[(0, 1)])


def _shuffled(g, seed):
    perm = np.random.default_rng(seed).permutation(g.n)
    return g.relabeled({v: int(perm[i]) + 100 for i, v in enumerate(g.vertices)})


class TestLabeledDigraph:
    def test_basic_accessors(self, f1):
        assert f1.n == 6 and f1.m == 7
        assert f1.has_edge(3, 4) and not f1.has_edge(4, 3)
        assert set(f1.succ(1)) == {2, 3}
        assert set(f1.pred(4)) == {3}
        assert f1.label(1) == "_"

    def test_flags_are_an_annotation(self):
        g = LabeledDigraph({1: "a", 2: "b"}, {(1, 2): "x"}, flagged=[(1, 2)])
        assert g.is_flagged(1, 2) and g.edge_label(1, 2) == "x"
        assert not g.without_flags().is_flagged(1, 2)
        assert g.without_flags().edge_label(1, 2) == "x"

    @pytest.mark.parametrize(
        "vertices,edges,flagged",
        [
            ([1], [(1, 2)], []),
            ([1, 2], [(1, 1)], []),
            ([1, 2], [(1, 2, "x"), (1, 2, "y")], []),
            ([1, 2], [(1, 2)], [(2, 1)]),
        ],
    )
    def test_invalid_graphs_rejected(self, vertices, edges, flagged):
        with pytest.raises(GraphError):
            LabeledDigraph(vertices, edges, flagged)

    def test_induced_subgraph(self, f1):
        sub = induced_subgraph(f1, {1, 2, 3})
        assert set(sub.edges) == {(1, 2), (1, 3), (2, 3)}
        assert f1.induced_subgraph(f1.vertices) == f1
        assert f1.induced_subgraph(set()).n == 0

    def test_induced_subgraph_keeps_flags(self, f1):
        g = f1.with_flags([(3, 4)])
        assert g.induced_subgraph({3, 4}).is_flagged(3, 4)

    def test_induced_subgraph_unknown_vertex(self, f1):
        with pytest.raises(GraphError):
            f1.induced_subgraph({1, 99})

    def test_equality_and_hash(self, f1):
        assert make_f1() == f1 and hash(make_f1()) == hash(f1)
        assert f1.with_flags([(3, 4)]) != f1


class TestSubgraphMatch:
    def test_single_edge_into_f1(self, f1):
        assert len(list(subgraph_match(EDGE, f1))) == 7

    def test_ffl_into_f1(self, f1):
        images = {frozenset(e.values()) for e in subgraph_match(FFL, f1)}
        assert images == {frozenset({1, 2, 3}), frozenset({4, 5, 6})}
        assert len(list(subgraph_match(FFL, f1))) == 2

    def test_identity_embedding_present(self, f1):
        assert {v: v for v in f1.vertices} in list(subgraph_match(f1, f1))

    def test_empty_pattern(self, f1):
        assert list(subgraph_match(LabeledDigraph(), f1)) == [{}]

    def test_flag_modes(self):
        plain = IN_PATH.without_flags()
        assert is_subgraph(plain, IN_PATH, LABELS_ONLY)
        assert not is_subgraph(plain, IN_PATH, WITH_FLAGS)

    def test_fixed_and_allowed(self, f1):
        emb = find_embedding(EDGE, f1, fixed={0: 3})
        assert emb == {0: 3, 1: 4}
        assert find_embedding(FFL, f1, allowed={4, 5, 6}) is not None
        assert find_embedding(FFL, f1, allowed={1, 2, 4}) is None

    @settings(max_examples=150, deadline=None, suppress_health_check=[HealthCheck.too_slow])
    @given(digraphs(max_n=4, flags=True), digraphs(max_n=6, flags=True), st.booleans())
    def test_matches_all_injections_oracle(self, pattern, host, flags):
        mode = WITH_FLAGS if flags else LABELS_ONLY
        got = list(subgraph_match(pattern, host, mode))
        want = all_embeddings(pattern, host, flags)
        key = lambda f: sorted(f.items())  # noqa: E731
        assert sorted(map(key, got)) == sorted(map(key, want))
        assert len({tuple(key(f)) for f in got}) == len(got)

    @settings(max_examples=60, deadline=None)
    @given(digraphs(max_n=4), digraphs(max_n=5), digraphs(max_n=6))
    def test_transitivity(self, a, b, c):
        if is_subgraph(a, b) and is_subgraph(b, c):
            assert is_subgraph(a, c)


class TestIsomorphism:
    def test_paths_differ_with_flags(self):
        assert not is_isomorphic(IN_PATH, OUT_PATH, WITH_FLAGS)
        assert is_isomorphic(IN_PATH, OUT_PATH, LABELS_ONLY)

    def test_flags_only_difference(self):
        a = FFL
        b = FFL.with_flags([(0, 1)])
        assert is_isomorphic(a, b, LABELS_ONLY)
        assert not is_isomorphic(a, b, WITH_FLAGS)

    @settings(max_examples=150, deadline=None)
    @given(digraphs(max_n=6, flags=True), digraphs(max_n=6, flags=True), st.booleans())
    def test_matches_permutation_oracle(self, a, b, flags):
        mode = WITH_FLAGS if flags else LABELS_ONLY
        assert is_isomorphic(a, b, mode) == oracle_is_isomorphic(a, b, flags)


class TestCanonicalForm:
    def test_relabelled_ffl(self):
        assert canonical_form(FFL) == canonical_form(_shuffled(FFL, 3))

    def test_paths_with_flags(self):
        assert canonical_form(IN_PATH, WITH_FLAGS) != canonical_form(OUT_PATH, WITH_FLAGS)
        assert canonical_form(IN_PATH) == canonical_form(OUT_PATH)

    def test_stable_bytes(self, f1):
        assert canonical_form(f1) == canonical_form(make_f1())
        assert isinstance(canonical_form(f1), bytes)

    @settings(max_examples=150, deadline=None)
    @given(digraphs(max_n=7, flags=True), st.integers(0, 1000), st.booleans())
    def test_invariant_under_relabelling(self, g, seed, flags):
        mode = WITH_FLAGS if flags else LABELS_ONLY
        assert canonical_form(g, mode) == canonical_form(_shuffled(g, seed), mode)

    @settings(max_examples=150, deadline=None)
    @given(digraphs(max_n=6, vlabels="a", elabels="x"), digraphs(max_n=6, vlabels="a", elabels="x"))
    def test_equal_codes_iff_isomorphic(self, a, b):
        assert (canonical_form(a) == canonical_form(b)) == oracle_is_isomorphic(a, b)

    def test_regular_graphs(self):
        # vertex-transitive graphs need individualization beyond refinement
        c6 = LabeledDigraph(range(6), [(i, (i + 1) % 6) for i in range(6)])
        two_c3 = LabeledDigraph(range(6), [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)])
        assert canonical_form(c6) != canonical_form(two_c3)
        assert canonical_form(c6) == canonical_form(_shuffled(c6, 9))

    def test_dedupe(self):
        graphs = [FFL, _shuffled(FFL, 1), EDGE]
        assert len(dedupe(graphs)) == 2


class TestMaximalCommonSubgraphs:
    def test_self(self):
        out = maximal_common_subgraphs(FFL, FFL)
        assert len(out) == 1 and is_isomorphic(out[0], FFL)

    def test_ffl_and_edge(self):
        out = maximal_common_subgraphs(FFL, EDGE)
        assert len(out) == 1 and is_isomorphic(out[0], EDGE)

    def test_disjoint_labels(self):
        a = LabeledDigraph({0: "a", 1: "a"}, [(0, 1)])
        b = LabeledDigraph({0: "b", 1: "b"}, [(0, 1)])
        assert maximal_common_subgraphs(a, b) == []

    def test_ties_are_kept(self):
        a = LabeledDigraph(range(3), {(0, 1): "x", (1, 2): "y"})
        b = LabeledDigraph(range(4), {(0, 1): "x", (2, 3): "y"})
        out = maximal_common_subgraphs(a, b)
        assert sorted(tuple(g.edges.values()) for g in out) == [("x",), ("y",)]
        assert all(g.n == 3 for g in out)

    @settings(max_examples=80, deadline=None, suppress_health_check=[HealthCheck.too_slow])
    @given(digraphs(max_n=5, vlabels="ab", elabels="x"), digraphs(max_n=5, vlabels="ab", elabels="x"))
    def test_matches_oracle(self, a, b):
        got = maximal_common_subgraphs(a, b)
        want = oracle_mcs(a, b)
        if not want or want[0].n == 0:
            assert got == []
            return
        for g in got:
            assert is_subgraph(g, a) and is_subgraph(g, b)
        assert same_classes(got, want)


class TestEnumeration:
    def test_f1_seed_edge(self, f1):
        out = enumerate_connected_subgraphs(f1.with_flags([(3, 4)]), 3, [(3, 4)])
        assert len(out) == 3
        want = [
            LabeledDigraph([3, 4], [(3, 4)]),
            LabeledDigraph([2, 3, 4], [(2, 3), (3, 4)]),
            LabeledDigraph([3, 4, 5], [(3, 4), (4, 5)]),
        ]
        assert same_classes([g.without_flags() for g in out], want)

    def test_two_vertices_only_seed(self, f1):
        out = enumerate_connected_subgraphs(f1, 2, [(3, 4)])
        assert [sorted(g.edges) for g in out] == [[(3, 4)]]

    def test_no_seeds(self, f1):
        assert enumerate_connected_subgraphs(f1, 4, []) == []

    @pytest.mark.parametrize("bad", [dict(max_vertices=1), dict(sample_frac=0.0), dict(sample_frac=1.5)])
    def test_bad_arguments(self, f1, bad):
        kw = dict(max_vertices=3, sample_frac=1.0)
        kw.update(bad)
        with pytest.raises(ValueError):
            enumerate_connected_subgraphs(f1, kw["max_vertices"], [(3, 4)], kw["sample_frac"])

    def test_non_edge_seed(self, f1):
        with pytest.raises(ValueError):
            enumerate_connected_subgraphs(f1, 3, [(4, 3)])

    def test_deterministic(self, f1):
        a = enumerate_connected_subgraphs(f1, 4, list(f1.edges))
        b = enumerate_connected_subgraphs(f1, 4, list(f1.edges))
        assert [canonical_form(g, WITH_FLAGS) for g in a] == [canonical_form(g, WITH_FLAGS) for g in b]

    def test_sampling_is_seeded_subset(self):
        g = random_digraph(np.random.default_rng(5), 9, 0.3)
        seeds = list(g.edges)[:3]
        full = {canonical_form(x, WITH_FLAGS) for x in enumerate_connected_subgraphs(g, 4, seeds)}
        s1 = enumerate_connected_subgraphs(g, 4, seeds, 0.3, np.random.default_rng(1))
        s2 = enumerate_connected_subgraphs(g, 4, seeds, 0.3, np.random.default_rng(1))
        codes = [canonical_form(x, WITH_FLAGS) for x in s1]
        assert codes == [canonical_form(x, WITH_FLAGS) for x in s2]
        assert set(codes) <= full

    @pytest.mark.parametrize("seed", range(15))
    def test_matches_oracle(self, seed):
        r = np.random.default_rng(seed)
        g = random_digraph(r, int(r.integers(3, 8)), 0.3, vlabels="ab", flag_p=0.4)
        k = int(r.integers(2, 5))
        seeds = sorted(g.flagged) or list(g.edges)[:1]
        got = enumerate_connected_subgraphs(g, k, seeds)
        want = oracle_connected_subgraphs(g, k, seeds)
        assert same_classes(got, want, flags=True)
        assert len(got) == len(dedupe(got, WITH_FLAGS))
