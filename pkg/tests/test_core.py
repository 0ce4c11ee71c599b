"""Structure layer: edges, signs, components, deletions, cycles, forests."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from shg.core import (
    Edge,
    SignedHypergraph,
    connected_components,
    cyclomatic,
    degree,
    degrees,
    edge_sign,
    hyperneighbors,
    incident_edges,
    induced_subhypergraph,
    is_acyclic,
    is_tree_like,
    lies_on_cycle,
    spanning_hyperforest,
    weak_delete,
)


def edge(*pairs):
    return Edge(tuple(pairs))


def h_of(n, *edge_specs):
    return SignedHypergraph(n, tuple(edge(*spec) for spec in edge_specs))


@st.composite
def hypergraphs(draw, max_n=9, max_m=8):
    n = draw(st.integers(min_value=1, max_value=max_n))
    m = draw(st.integers(min_value=0, max_value=max_m))
    edges = []
    seen = set()
    for _ in range(m):
        size = draw(st.integers(min_value=1, max_value=min(4, n)))
        vs = draw(st.permutations(range(1, n + 1)))[:size]
        incs = tuple(
            (v, draw(st.sampled_from((1, -1)))) for v in sorted(vs))
        if incs in seen:
            continue
        seen.add(incs)
        edges.append(Edge(incs))
    return SignedHypergraph(n, tuple(edges))


class TestEdge:
    def test_duplicate_vertex_rejected(self):
        with pytest.raises(ValueError, match="duplicate vertex"):
            edge((1, 1), (1, -1))

    def test_bad_sign_rejected(self):
        with pytest.raises(ValueError, match="sign"):
            Edge(((1, 2),))

    def test_vertices_keep_incidence_order(self):
        e = edge((3, 1), (1, -1), (2, 1))
        assert e.vertices == (3, 1, 2)
        assert e.size == 3

    def test_sign_lookup(self):
        e = edge((4, -1), (2, 1))
        assert e.sign_of(4) == -1
        assert e.sign_of(2) == 1

    def test_edge_sign_parity(self):
        # (-1)^(size-1) times the incidence product
        assert edge_sign(edge((1, 1), (2, 1))) == -1
        assert edge_sign(edge((1, 1), (2, -1))) == 1
        assert edge_sign(edge((1, 1), (2, 1), (3, 1))) == 1
        assert edge_sign(edge((1, 1), (2, 1), (3, -1))) == -1
        assert edge_sign(edge((1, 1))) == 1


class TestHypergraph:
    def test_vertex_out_of_range(self):
        with pytest.raises(ValueError, match="range"):
            h_of(2, ((1, 1), (3, 1)))

    def test_duplicate_edges_kept_as_multiset(self):
        # induced subhypergraphs can create duplicate truncated edges, so
        # the family is a multiset and both copies count toward degrees
        h = h_of(3, ((1, 1), (2, 1)), ((2, 1), (1, 1)))
        assert h.m == 2
        assert degree(h, 1) == 2

    def test_same_vertices_different_signs_allowed(self):
        h = h_of(2, ((1, 1), (2, 1)), ((1, 1), (2, -1)))
        assert h.m == 2

    def test_empty_edge_rejected_by_default(self):
        with pytest.raises(ValueError, match="empty edge"):
            SignedHypergraph(2, (Edge(()),))

    def test_degrees_count_incident_edges(self):
        h = h_of(3, ((1, 1), (2, 1)), ((1, -1), (3, 1)), ((1, 1),))
        assert degree(h, 1) == 3
        assert degrees(h) == [0, 3, 1, 1]

    def test_hyperneighbors(self):
        h = h_of(4, ((1, 1), (2, 1), (3, -1)))
        assert hyperneighbors(h, 1) == frozenset({2, 3})
        assert hyperneighbors(h, 4) == frozenset()

    def test_incident_edges_indexes(self):
        h = h_of(3, ((1, 1), (2, 1)), ((2, -1), (3, 1)))
        inc = incident_edges(h)
        assert inc[2] == [0, 1]
        assert inc[3] == [1]


class TestComponents:
    def test_isolated_vertices_are_components(self):
        h = h_of(4, ((1, 1), (2, 1)))
        parts = connected_components(h)
        assert sorted(sorted(b) for b in parts.blocks) == [[1, 2], [3], [4]]

    def test_blocks_partition(self):
        h = h_of(5, ((1, 1), (2, 1), (3, 1)), ((4, 1), (5, -1)))
        parts = connected_components(h)
        assert sorted(v for b in parts.blocks for v in b) == [1, 2, 3, 4, 5]
        assert len(parts) == 2

    @given(hypergraphs())
    @settings(max_examples=60, deadline=None)
    def test_components_partition_always(self, h):
        parts = connected_components(h)
        seen = sorted(v for b in parts.blocks for v in b)
        assert seen == list(range(1, h.n + 1))


class TestInducedAndDeleted:
    def test_induced_truncates_edges(self):
        h = h_of(4, ((1, 1), (2, -1), (3, 1)), ((3, 1), (4, 1)))
        rel = induced_subhypergraph(h, {1, 2, 4})
        assert rel.hypergraph.n == 3
        # only the truncated first edge survives; single-vertex remnant kept
        sizes = sorted(e.size for e in rel.hypergraph.edges)
        assert sizes == [1, 2]

    def test_relabeling_maps_forward(self):
        h = h_of(5, ((2, 1), (4, -1)))
        rel = induced_subhypergraph(h, {2, 4})
        assert rel.old_to_new == {2: 1, 4: 2}

    def test_weak_delete_keeps_edges(self):
        h = h_of(3, ((1, 1), (2, 1), (3, -1)))
        rel = weak_delete(h, 2)
        assert rel.hypergraph.n == 2
        assert rel.hypergraph.m == 1
        assert rel.hypergraph.edges[0].size == 2

    def test_weak_delete_may_leave_empty_edges(self):
        h = h_of(2, ((1, 1), (2, 1)), ((1, -1),))
        rel = weak_delete(h, 1)
        sizes = sorted(e.size for e in rel.hypergraph.edges)
        assert sizes == [0, 1]


class TestCycles:
    def test_cyclomatic_of_tree(self):
        h = h_of(4, ((1, 1), (2, 1), (3, 1)), ((3, 1), (4, 1)))
        stats = cyclomatic(h)
        assert stats.l == 0 and is_acyclic(h)

    def test_cyclomatic_counts_excess(self):
        h = h_of(3, ((1, 1), (2, 1)), ((2, 1), (3, 1)), ((1, 1), (3, 1)))
        assert cyclomatic(h).l == 1
        assert not is_acyclic(h)

    def test_parallel_edges_make_cycle(self):
        h = h_of(2, ((1, 1), (2, 1)), ((1, 1), (2, -1)))
        assert cyclomatic(h).l == 1

    def test_tree_like_on_triangle(self):
        h = h_of(4, ((1, 1), (2, 1)), ((2, 1), (3, 1)), ((1, 1), (3, 1)),
                 ((3, 1), (4, 1)))
        assert not is_tree_like(h, 1)
        assert is_tree_like(h, 4)
        assert lies_on_cycle(h, 1)
        assert not lies_on_cycle(h, 4)

    @given(hypergraphs())
    @settings(max_examples=60, deadline=None)
    def test_cyclomatic_nonnegative(self, h):
        assert cyclomatic(h).l >= 0


class TestForest:
    def test_greedy_spans_tree(self):
        h = h_of(4, ((1, 1), (2, 1), (3, 1)), ((3, 1), (4, 1)))
        idx = spanning_hyperforest(h)
        assert sorted(idx) == [0, 1]

    def test_exact_beats_or_ties_greedy(self):
        # greedy grabbing the 3-edge first blocks both 2-edges
        h = h_of(4, ((1, 1), (2, 1), (3, 1)), ((1, 1), (2, 1)), ((3, 1), (4, 1)))
        greedy = spanning_hyperforest(h, exact=False)
        exact = spanning_hyperforest(h, exact=True)
        weight = lambda ids: sum(h.edges[i].size - 1 for i in ids)
        assert weight(exact) >= weight(greedy)

    def test_exact_limit(self):
        edges = [((i, 1), (i + 1, 1)) for i in range(1, 19)]
        h = h_of(19, *edges)
        with pytest.raises(ValueError, match="exact"):
            spanning_hyperforest(h, exact=True)

    def test_selected_edges_acyclic(self):
        h = h_of(3, ((1, 1), (2, 1)), ((2, 1), (3, 1)), ((1, 1), (3, 1)))
        idx = spanning_hyperforest(h, exact=True)
        sub = SignedHypergraph(3, tuple(h.edges[i] for i in idx))
        assert is_acyclic(sub)
