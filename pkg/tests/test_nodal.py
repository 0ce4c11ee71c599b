"""Nodal domains: strong/weak decompositions, zero handling, count bounds."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from shg.core import Edge, SignedHypergraph
from shg.fixtures import (
    PRINTED_EIGENFUNCTIONS,
    TABLE1_STRONG,
    fixture_example1,
)
from shg.nodal import (
    check_bounds,
    decompose,
    domain_adjacency_graph,
    fiedler_sets,
    forest_count_diagnostic,
    l_plus,
    strong_domains,
    support_cyclomatic,
    weak_domains,
)
from shg.spectra import VertexFunction, eigendecompose, laplacian


def h_of(n, *edge_specs):
    return SignedHypergraph(n, tuple(Edge(tuple(spec)) for spec in edge_specs))


def vf(*values):
    return VertexFunction.from_values(values)


def as_sets(domains):
    return sorted(tuple(sorted(d)) for d in domains)


# 2-edges by desired pair sign: sgn(e) = -(product of the two incidence
# signs), so a mixed pair gives +1 and an equal pair gives -1.
def pair_edge(u, v, s):
    return ((u, 1), (v, -1)) if s > 0 else ((u, 1), (v, 1))


@pytest.fixture(scope="module")
def fixture():
    return fixture_example1()


@pytest.fixture(scope="module")
def printed():
    return tuple(VertexFunction.from_values(v) for v in PRINTED_EIGENFUNCTIONS)


@pytest.fixture(scope="module")
def spectrum(fixture):
    return eigendecompose(laplacian(fixture))


class TestStrongDomains:
    def test_negative_pair_links_opposite_signs(self):
        h = h_of(2, pair_edge(1, 2, -1))
        assert len(strong_domains(h, vf(1, -1))) == 1
        assert len(strong_domains(h, vf(1, 1))) == 2

    def test_positive_pair_links_equal_signs(self):
        h = h_of(2, pair_edge(1, 2, 1))
        assert len(strong_domains(h, vf(1, 1))) == 1
        assert len(strong_domains(h, vf(1, -1))) == 2

    def test_positive_triple_same_sign(self):
        h = h_of(3, ((1, 1), (2, 1), (3, 1)))
        assert as_sets(strong_domains(h, vf(1, 1, 1))) == [(1, 2, 3)]
        assert as_sets(strong_domains(h, vf(1, -1, 1))) == [(1, 3), (2,)]

    def test_zeros_never_join(self):
        h = h_of(3, ((1, 1), (2, 1), (3, 1)))
        assert as_sets(strong_domains(h, vf(1, 0, 1))) == [(1, 3)]

    def test_length_mismatch(self, fixture):
        with pytest.raises(ValueError, match="9 vertices"):
            strong_domains(fixture, vf(1, 2))


class TestStrongDomainsMatrixMode:
    def test_positive_entry_links_same_signs(self):
        a = np.array([[0.0, 1.0], [1.0, 0.0]])
        assert len(strong_domains(a, vf(1, 1))) == 1
        assert len(strong_domains(a, vf(1, -1))) == 2

    def test_asymmetric_rejected(self):
        a = np.array([[0.0, 1.0], [0.0, 0.0]])
        with pytest.raises(ValueError, match="raw matrix must be symmetric"):
            strong_domains(a, vf(1, 1))

    def test_shape_mismatch(self):
        with pytest.raises(ValueError, match="does not match"):
            strong_domains(np.eye(3), vf(1, 1))

    def test_matches_hypergraph_on_fixture(self, fixture, printed):
        from shg.spectra import adjacency
        a = adjacency(fixture)
        for f in printed:
            assert as_sets(strong_domains(a, f)) == as_sets(strong_domains(fixture, f))


class TestWeakDomains:
    def test_zero_mediated_link(self):
        # 1 - 2(zero) - 3 with matching sign product joins the nonzeros
        h = h_of(3, pair_edge(1, 2, 1), pair_edge(2, 3, 1))
        cores, closures = weak_domains(h, vf(1, 0, 1))
        assert as_sets(cores) == [(1, 3)]
        assert as_sets(closures) == [(1, 2, 3)]

    def test_sign_product_must_match(self):
        h = h_of(3, pair_edge(1, 2, 1), pair_edge(2, 3, -1))
        cores, closures = weak_domains(h, vf(1, 0, 1))
        assert as_sets(cores) == [(1,), (3,)]
        # the shared zero joins both closures
        assert as_sets(closures) == [(1, 2), (2, 3)]

    def test_all_zero_function(self):
        h = h_of(2, pair_edge(1, 2, 1))
        assert weak_domains(h, vf(0, 0)) == ((), ())

    def test_detour_through_cycle_cannot_revisit_vertex(self):
        # direct route 1-2-5 carries product -1; the odd triangle 2-3-4-2
        # would flip it only by passing through 2 twice, which no simple
        # path does, so equal-sign endpoints stay separate
        h = h_of(
            5,
            pair_edge(1, 2, 1),
            pair_edge(2, 5, -1),
            pair_edge(2, 3, 1),
            pair_edge(3, 4, 1),
            pair_edge(4, 2, -1),
        )
        cores, closures = weak_domains(h, vf(1, 0, 0, 0, 1))
        assert as_sets(cores) == [(1,), (5,)]
        assert as_sets(closures) == [(1, 2, 3, 4), (2, 3, 4, 5)]
        # flipping one endpoint makes the direct product match
        cores_flip, _ = weak_domains(h, vf(1, 0, 0, 0, -1))
        assert as_sets(cores_flip) == [(1, 5)]

    def test_unbalanced_route_cycle_links_both_signs(self):
        # routes 2-3-5 (+) and 2-4-5 (-) disagree, so either endpoint
        # sign combination is reachable
        edges = (
            pair_edge(1, 2, 1),
            pair_edge(2, 3, 1),
            pair_edge(3, 5, 1),
            pair_edge(2, 4, 1),
            pair_edge(4, 5, -1),
        )
        h = h_of(5, *edges)
        for end in (1, -1):
            cores, _ = weak_domains(h, vf(1, 0, 0, 0, end))
            assert as_sets(cores) == [(1, 5)]

    def test_balanced_route_cycle_keeps_fixed_sign(self):
        edges = (
            pair_edge(1, 2, 1),
            pair_edge(2, 3, 1),
            pair_edge(3, 5, 1),
            pair_edge(2, 4, 1),
            pair_edge(4, 5, 1),
        )
        h = h_of(5, *edges)
        cores, _ = weak_domains(h, vf(1, 0, 0, 0, 1))
        assert as_sets(cores) == [(1, 5)]
        cores, _ = weak_domains(h, vf(1, 0, 0, 0, -1))
        assert as_sets(cores) == [(1,), (5,)]

    def test_opposite_parallel_pair_is_unbalanced(self):
        edges = (
            pair_edge(1, 2, 1),
            pair_edge(1, 2, -1),
            pair_edge(2, 3, 1),
        )
        h = h_of(3, *edges)
        for end in (1, -1):
            cores, _ = weak_domains(h, vf(1, 0, end))
            assert as_sets(cores) == [(1, 3)]

    def test_interior_vertices_must_be_zeros(self):
        # 1 - 2 - 3 with 2 nonzero: no weak link between 1 and 3 even
        # though the sign product of the route matches
        h = h_of(3, pair_edge(1, 2, -1), pair_edge(2, 3, -1))
        cores, _ = weak_domains(h, vf(1, 1, 1))
        assert as_sets(cores) == [(1,), (2,), (3,)]

    def test_weak_refines_strong(self):
        h = h_of(3, pair_edge(1, 2, -1), pair_edge(2, 3, -1))
        f = vf(1, 1, 1)
        assert as_sets(weak_domains(h, f)[0]) == as_sets(strong_domains(h, f))


class TestFixtureTable:
    @pytest.mark.parametrize("row", [1, 2, 3, 7])
    def test_reproduced_strong_rows(self, fixture, printed, row):
        assert as_sets(strong_domains(fixture, printed[row - 1])) == as_sets(TABLE1_STRONG[row])

    def test_strong_counts(self, fixture, printed):
        got = [len(strong_domains(fixture, f)) for f in printed]
        assert got == [1, 2, 2, 6, 6, 6, 6, 6, 6]

    def test_weak_counts(self, fixture, printed):
        got = [decompose(fixture, f).weak_count for f in printed]
        assert got == [1, 2, 2, 2, 2, 2, 6, 6, 6]

    def test_zero_free_rows_weak_equals_strong(self, fixture, printed):
        for i in (1, 2, 7):
            d = decompose(fixture, printed[i - 1])
            assert as_sets(d.weak_cores) == as_sets(d.strong)

    def test_f3_cores_and_closures(self, fixture, printed):
        cores, closures = weak_domains(fixture, printed[2])
        assert as_sets(cores) == [(1, 6, 7), (3, 4, 9)]
        assert as_sets(closures) == [(1, 2, 5, 6, 7, 8), (2, 3, 4, 5, 8, 9)]

    def test_f3_zero_split(self, fixture, printed):
        fs = fiedler_sets(fixture, printed[2])
        assert sorted(fs.fiedler) == [5, 8]
        assert sorted(fs.other_zeros) == [2]

    def test_f8_negative_pendant_does_not_link_equal_signs(self, fixture, printed):
        # the published table groups 5 and 8 here; the sign rule forbids it
        assert as_sets(strong_domains(fixture, printed[7])) == [
            (1, 5), (3, 4), (6,), (7,), (8,), (9,)]


class TestFiedlerSets:
    def test_tree_zero_with_nonzero_neighbor_is_other(self):
        h = h_of(3, pair_edge(1, 2, 1), pair_edge(2, 3, 1))
        fs = fiedler_sets(h, vf(1, 0, 1))
        assert not fs.fiedler and fs.other_zeros == {2}

    def test_zero_on_cycle_is_fiedler(self):
        h = h_of(3, pair_edge(1, 2, 1), pair_edge(2, 3, 1), pair_edge(1, 3, 1))
        fs = fiedler_sets(h, vf(1, 0, 1))
        assert fs.fiedler == {2} and not fs.other_zeros

    def test_zero_surrounded_by_zeros_is_fiedler(self):
        h = h_of(4, pair_edge(1, 2, 1), pair_edge(2, 3, 1), pair_edge(3, 4, 1))
        fs = fiedler_sets(h, vf(1, 0, 0, 0))
        # 3 and 4 see only zeros; 2 has the nonzero neighbor 1
        assert fs.fiedler == {3, 4} and fs.other_zeros == {2}


class TestCycleCounts:
    def test_l_plus_keeps_coherent_edges_only(self, fixture, printed):
        # zero-free bottom eigenfunction: all six edges coherent, l = 1
        assert l_plus(fixture, printed[0]).l == 1
        assert l_plus(fixture, printed[0], "exists_ordering").l == 1

    def test_l_plus_variants_differ_on_negative_triples(self):
        # negative 3-edge with signs (+,-,+): no all-pairs witness, but
        # the ordering +,-,+ alternates
        h = h_of(3, ((1, 1), (2, 1), (3, -1)), pair_edge(1, 2, 1),
                 pair_edge(2, 3, 1), pair_edge(1, 3, 1))
        f = vf(1, -1, 1)

        def count(variant):
            return l_plus(h, f, variant).sum_edge_sizes_minus_one

        assert count("exists_ordering") - count("all_pairs") == 2

    def test_unknown_variant(self, fixture, printed):
        with pytest.raises(ValueError, match="unknown variant"):
            l_plus(fixture, printed[0], "median")

    def test_support_cyclomatic_drops_zero_vertices(self, fixture, printed):
        assert support_cyclomatic(fixture, printed[0]).l == 1
        assert support_cyclomatic(fixture, printed[6]).l == 1
        assert support_cyclomatic(fixture, printed[3]).l == 0


    def test_index_out_of_range(self, fixture, spectrum):
        with pytest.raises(IndexError, match="out of range"):
            check_bounds(fixture, spectrum, 10)
        with pytest.raises(IndexError, match="out of range"):
            check_bounds(fixture, spectrum, 0)

    def test_bottom_eigenfunction(self, fixture, spectrum):
        rep = check_bounds(fixture, spectrum, 1)
        assert (rep.k, rep.r, rep.c) == (1, 1, 1)
        assert rep.strong_count == 1 and rep.weak_count == 1
        assert rep.strong_lower_bound == 1
        assert rep.strong_upper_ok and rep.weak_upper_ok and rep.strong_lower_ok

    def test_middle_cluster(self, fixture, spectrum):
        rep = check_bounds(fixture, spectrum, 4)
        assert (rep.k, rep.r) == (4, 3)
        assert rep.strong_count == 6 and rep.weak_count == 2
        assert rep.fiedler_size == 3
        assert rep.strong_upper_ok and rep.weak_upper_ok and rep.strong_lower_ok

    def test_top_cluster_lower_bound_fails(self, fixture, spectrum):
        # k + r - 1 = 9 strong domains are impossible here: every member
        # of the top eigenspace peaks at 6, and the correction terms
        # (l' = 1, l_plus = 0, no relevant zeros) still leave 8
        rep = check_bounds(fixture, spectrum, 7)
        assert (rep.k, rep.r) == (7, 3)
        assert rep.strong_count == 6
        assert rep.strong_lower_bound == 8
        assert rep.strong_upper_ok and rep.weak_upper_ok
        assert not rep.strong_lower_ok

    def test_variant_choice_changes_lower_bound_only(self, fixture, spectrum):
        a = check_bounds(fixture, spectrum, 2, variant="all_pairs")
        b = check_bounds(fixture, spectrum, 2, variant="exists_ordering")
        assert (a.strong_count, a.weak_count) == (b.strong_count, b.weak_count)
        with pytest.raises(ValueError, match="unknown variant"):
            check_bounds(fixture, spectrum, 2, variant="median")


class TestDomainGraph:
    def test_fixture_f3_connected(self, fixture, printed):
        g = domain_adjacency_graph(fixture, decompose(fixture, printed[2]))
        assert g.n_nodes == 2 and g.is_connected()

    def test_disconnected_instance(self):
        h = h_of(4, pair_edge(1, 2, 1), pair_edge(3, 4, 1))
        g = domain_adjacency_graph(h, decompose(h, vf(1, 1, 1, 1)))
        assert g.n_nodes == 2 and not g.is_connected()

    def test_single_domain_trivially_connected(self, fixture, printed):
        g = domain_adjacency_graph(fixture, decompose(fixture, printed[0]))
        assert g.n_nodes == 1 and g.is_connected()


class TestForestDiagnostic:
    def test_fixture_values(self, fixture, printed):
        # formula and component count genuinely disagree on this instance
        assert forest_count_diagnostic(fixture, printed[6]) == (9, 6, False)
        assert forest_count_diagnostic(fixture, printed[0]) == (2, 1, False)

    def test_agrees_on_classical_path(self):
        h = h_of(3, pair_edge(1, 2, -1), pair_edge(2, 3, -1))
        assert forest_count_diagnostic(h, vf(1, -1, 1)) == (1, 1, True)


signed_values = st.lists(
    st.sampled_from((-2.0, -1.0, 0.0, 1.0, 2.0)), min_size=9, max_size=9)


class TestScalingInvariance:
    @given(signed_values, st.floats(min_value=0.1, max_value=100.0))
    @settings(max_examples=40, deadline=None)
    def test_positive_scaling_preserves_domains(self, values, scale):
        h = fixture_example1()
        f = VertexFunction.from_values(values)
        g = VertexFunction.from_values([scale * x for x in values])
        assert as_sets(strong_domains(h, f)) == as_sets(strong_domains(h, g))
        assert as_sets(weak_domains(h, f)[0]) == as_sets(weak_domains(h, g)[0])
