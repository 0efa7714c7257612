import itertools

import pytest
from hypothesis import given, settings

from graphca.errors import InvalidColoring, InvalidConnectionSet, InvalidGraph, SizeLimitExceeded
from graphca.graph import (
    Graph,
    ProperColoring,
    canonical_form,
    circulant,
    complete,
    cycle,
    edgeless,
    exact_chromatic_number,
    exact_coloring,
    greedy_coloring,
    is_bipartite,
    is_connected,
    is_isomorphic,
    k_coloring,
    make_graph,
    max_clique,
    path,
)
from graphca.products import product

from conftest import graphs


def brute_chi(g):
    if g.vertex_count == 0:
        return 0
    for k in range(1, g.vertex_count + 1):
        for colors in itertools.product(range(k), repeat=g.vertex_count):
            if all(colors[u] != colors[v] for u, v in g.edges):
                return k


def brute_omega(g):
    best = 0
    for r in range(1, g.vertex_count + 1):
        for sub in itertools.combinations(range(g.vertex_count), r):
            if all(g.has_edge(a, b) for a, b in itertools.combinations(sub, 2)):
                best = r
    return best


class TestGraph:
    def test_edges_are_normalised(self):
        g = Graph(3, frozenset({(1, 0), (0, 1), (2, 1)}))
        assert g.edges == {(0, 1), (1, 2)}

    def test_self_loop_rejected(self):
        with pytest.raises(InvalidGraph):
            Graph(2, frozenset({(1, 1)}))

    def test_out_of_range_rejected(self):
        with pytest.raises(InvalidGraph):
            Graph(2, frozenset({(0, 2)}))

    def test_relabel(self):
        g = path(3).relabel([2, 0, 1])
        assert g.edges == {(0, 2), (0, 1)}


class TestFamilies:
    def test_complete_3(self):
        assert complete(3).edges == {(0, 1), (0, 2), (1, 2)}

    def test_cycle_4(self):
        g = cycle(4)
        assert g.vertex_count == 4 and len(g.edges) == 4

    def test_circulant_5_is_c5(self):
        # i ~ j iff i - j = +-1 mod 5: 01, 12, 23, 34, 40
        assert circulant(5, {1, 4}).edges == {(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)}

    def test_make_graph_dispatch(self):
        assert make_graph("circulant", 5, {1, 4}).edges == cycle(5).edges
        assert make_graph("path", 4).edges == path(4).edges

    @pytest.mark.parametrize("S", [{1}, {0, 1, 4}, {2}])
    def test_circulant_bad_connection_sets(self, S):
        with pytest.raises(InvalidConnectionSet):
            circulant(5, S)

    @pytest.mark.parametrize("n,S", [(7, {1, 6}), (8, {1, 4, 7}), (9, {2, 3, 6, 7}), (6, {3})])
    def test_circulant_regular(self, n, S):
        g = circulant(n, S)
        assert all(g.degree(v) == len(S) for v in range(n))

    def test_unknown_family(self):
        with pytest.raises(InvalidGraph):
            make_graph("wheel", 5)


class TestColoring:
    def test_k4(self):
        assert greedy_coloring(complete(4)).color_count == 4

    def test_c5(self):
        assert greedy_coloring(cycle(5)).colors == (0, 1, 0, 1, 2)

    def test_edgeless(self):
        assert greedy_coloring(edgeless(6)).color_count == 1

    def test_invalid_coloring_rejected(self):
        with pytest.raises(InvalidColoring):
            ProperColoring(path(2), (0, 0))

    @given(graphs(max_vertices=8))
    @settings(max_examples=60, deadline=None)
    def test_greedy_bound(self, g):
        col = greedy_coloring(g)
        assert col.color_count <= g.max_degree() + 1
        assert all(col.colors[u] != col.colors[v] for u, v in g.edges)

    def test_greedy_is_deterministic(self):
        g = product("cartesian", [path(3), cycle(5)]).graph
        assert greedy_coloring(g).colors == greedy_coloring(g).colors


class TestExactColoring:
    def test_p3_box_c5(self):
        assert exact_chromatic_number(product("cartesian", [path(3), cycle(5)]).graph) == 3

    def test_k5(self):
        assert exact_chromatic_number(complete(5)) == 5

    def test_c7(self):
        assert brute_chi(cycle(7)) == 3
        assert exact_chromatic_number(cycle(7)) == 3

    def test_limit(self):
        with pytest.raises(SizeLimitExceeded):
            exact_chromatic_number(cycle(17))
        assert exact_chromatic_number(cycle(17), vertex_limit=17) == 3

    @given(graphs(max_vertices=7))
    @settings(max_examples=80, deadline=None)
    def test_matches_brute_force(self, g):
        chi = exact_chromatic_number(g)
        assert chi == brute_chi(g)
        assert chi <= greedy_coloring(g).color_count
        assert exact_coloring(g).color_count == chi

    def test_k_coloring(self):
        assert k_coloring(cycle(5), 2) is None
        assert k_coloring(cycle(5), 3).color_count == 3


class TestClique:
    def test_k2_strong_k3(self):
        assert max_clique(product("strong", [complete(2), complete(3)]).graph) == 6

    def test_c5(self):
        assert max_clique(cycle(5)) == 2

    def test_p2_strong_p2(self):
        assert max_clique(product("strong", [path(2), path(2)]).graph) == 4

    def test_limit(self):
        with pytest.raises(SizeLimitExceeded):
            max_clique(cycle(21))

    @given(graphs(max_vertices=8))
    @settings(max_examples=80, deadline=None)
    def test_matches_brute_force(self, g):
        omega = max_clique(g)
        assert omega == brute_omega(g)
        assert omega <= exact_chromatic_number(g)


class TestBipartite:
    def test_c4(self):
        ok, col = is_bipartite(cycle(4))
        assert ok and col.color_count == 2

    def test_c5(self):
        assert is_bipartite(cycle(5)) == (False, None)

    def test_k2_box_k2(self):
        ok, col = is_bipartite(product("cartesian", [complete(2), complete(2)]).graph)
        assert ok and col.colors == (0, 1, 1, 0)

    @given(graphs(max_vertices=8))
    @settings(max_examples=60, deadline=None)
    def test_agrees_with_chromatic_number(self, g):
        ok, _ = is_bipartite(g)
        assert ok == (brute_chi(g) <= 2)


class TestConnected:
    def test_p4(self):
        assert is_connected(path(4))

    def test_two_edges(self):
        assert not is_connected(Graph(4, frozenset({(0, 1), (2, 3)})))

    def test_k1(self):
        assert is_connected(complete(1))


class TestCanonicalForm:
    def test_relabelling_invariant(self):
        g = product("cartesian", [path(3), cycle(3)]).graph
        perm = [4, 7, 0, 2, 8, 1, 3, 6, 5]
        assert canonical_form(g) == canonical_form(g.relabel(perm))

    def test_distinguishes(self):
        assert not is_isomorphic(cycle(6), product("cartesian", [complete(2), complete(3)]).graph)
        assert is_isomorphic(cycle(4), product("cartesian", [complete(2), complete(2)]).graph)

    def test_vertex_transitive(self):
        petersen = Graph(
            10,
            frozenset(
                [(i, (i + 1) % 5) for i in range(5)]
                + [(i, i + 5) for i in range(5)]
                + [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
            ),
        )
        assert canonical_form(petersen) == canonical_form(petersen.relabel([3, 1, 4, 0, 2, 9, 6, 8, 5, 7]))
        assert not is_isomorphic(petersen, circulant(10, {1, 9, 4, 6}))

    def test_limit(self):
        with pytest.raises(SizeLimitExceeded):
            canonical_form(cycle(11))

    @given(graphs(max_vertices=6), graphs(max_vertices=6))
    @settings(max_examples=60, deadline=None)
    def test_iso_matches_permutation_search(self, a, b):
        brute = a.vertex_count == b.vertex_count and any(
            a.relabel(p).edges == b.edges for p in itertools.permutations(range(a.vertex_count))
        )
        assert is_isomorphic(a, b) == brute
