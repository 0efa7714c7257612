import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from graphca.algebra.groups import cayley_graph, cyclic, dihedral, quaternion8, symmetric
from graphca.ca import CoveringArray, generic_ca, verify_ca
from graphca.constructions import (
    auto_coloring,
    box_or_direct_concat,
    cayley_box_2color,
    cayley_box_3color,
    cayley_box_4color,
    check_neighbour_automorphism,
    coloring_construction,
    coloring_multiplier,
    construction_report,
    direct_min,
    expected_size,
    lex_concat,
    strong_concat,
)
from graphca.errors import (
    InvalidAutomorphism,
    InvalidColoring,
    InvalidInputCA,
    NotBipartite,
    PreconditionFailed,
)
from graphca.graph import circulant, complete, cycle, edgeless, exact_chromatic_number, path
from graphca.products import product

from conftest import graphs

FACTORS = [complete(2), complete(3), path(3), cycle(4), cycle(5), complete(4)]


def base_ca(graph, g):
    return generic_ca(graph.vertex_count, g).bind(graph)


def q8(names):
    q = quaternion8()
    return q, [q.index(x) for x in names]


@st.composite
def factor_lists(draw, max_factors=3):
    fs = draw(st.lists(st.sampled_from(FACTORS), min_size=2, max_size=max_factors))
    g = draw(st.integers(2, 4))
    return fs, g


class TestProductConstructions:
    @given(factor_lists())
    @settings(max_examples=30, deadline=None)
    def test_strong(self, case):
        fs, g = case
        cas = [base_ca(f, g) for f in fs]
        out = strong_concat(cas)
        assert out.cols == sum(c.cols for c in cas) - len(cas)
        assert verify_ca(out, product("strong", fs).graph).ok

    @given(factor_lists())
    @settings(max_examples=30, deadline=None)
    def test_lex(self, case):
        fs, g = case
        cas = [base_ca(f, g) for f in fs]
        out = lex_concat(cas)
        assert out.cols == sum(c.cols for c in cas) - len(cas) + 1
        assert verify_ca(out, product("lex", fs).graph).ok

    @given(factor_lists())
    @settings(max_examples=30, deadline=None)
    def test_direct_min(self, case):
        fs, g = case
        cas = [base_ca(f, g) for f in fs]
        out = direct_min(cas)
        assert out.cols == min(c.cols for c in cas)
        assert verify_ca(out, product("direct", fs).graph).ok

    @pytest.mark.parametrize("op", ["cartesian", "direct"])
    @given(case=factor_lists())
    @settings(max_examples=20, deadline=None)
    def test_box_or_direct(self, op, case):
        fs, g = case
        out = box_or_direct_concat([base_ca(f, g) for f in fs], op)
        assert verify_ca(out, product(op, fs).graph).ok

    def test_more_factors_than_symbols(self):
        fs = [complete(2)] * 4
        out = strong_concat([base_ca(f, 2) for f in fs])
        assert out.cols == 4 * 4 - 4
        assert verify_ca(out, product("strong", fs).graph).ok

    def test_isolated_vertices(self):
        # an edgeless factor has rows that need not carry every symbol
        g0 = edgeless(2)
        ca0 = CoveringArray(np.zeros((2, 4), dtype=int), 2, g0)
        out = strong_concat([ca0, base_ca(complete(2), 2)])
        assert verify_ca(out, product("strong", [g0, complete(2)]).graph).ok

    def test_bad_input_rejected(self):
        bad = CoveringArray([[0, 0, 1, 1], [0, 0, 1, 1]], 2, complete(2))
        with pytest.raises(InvalidInputCA):
            strong_concat([bad, base_ca(complete(2), 2)])

    def test_mixed_alphabets_rejected(self):
        with pytest.raises(InvalidInputCA):
            strong_concat([base_ca(complete(2), 2), base_ca(complete(2), 3)])

    def test_single_input_rejected(self):
        with pytest.raises(InvalidInputCA):
            lex_concat([base_ca(complete(2), 2)])

    def test_unbound_rejected(self):
        with pytest.raises(InvalidInputCA):
            direct_min([generic_ca(2, 2), base_ca(complete(2), 2)])

    def test_direct_min_tie_uses_first(self):
        a = base_ca(complete(3), 2)
        b = base_ca(cycle(3), 2)
        out = direct_min([a, b])
        prod = product("direct", [complete(3), cycle(3)])
        assert np.array_equal(out.matrix, a.by_vertex()[[c[0] for c in prod.coords]])


class TestReports:
    def test_expected_sizes(self):
        assert expected_size("strong", [4, 4, 6]) == 11
        assert expected_size("lex", [4, 6]) == 9
        assert expected_size("direct", [8, 4]) == 4
        assert expected_size("approx", [], g=3, u=2) == 18

    def test_report_rejects_wrong_size(self):
        out = strong_concat([base_ca(complete(3), 2), base_ca(complete(3), 2)])
        rep = construction_report("strong", [4, 4], out)
        assert rep.as_dict()["output_size"] == 6 and rep.lower_bound == 4
        with pytest.raises(Exception):
            construction_report("lex", [4, 4], out)


class TestColoringConstruction:
    @pytest.mark.parametrize("g", [2, 3, 4, 5])
    def test_p3_box_c5(self, g):
        G = product("cartesian", [path(3), cycle(5)]).graph
        out = coloring_construction(G, g)
        assert out.cols == g * g and verify_ca(out).ok

    @given(st.integers(2, 6), st.integers(2, 6))
    @settings(max_examples=15, deadline=None)
    def test_bipartite_box(self, m, n):
        G = product("cartesian", [path(m), path(n)]).graph
        out = coloring_construction(G, 3)
        assert out.cols == 9 and verify_ca(out).ok

    @given(graphs(min_vertices=2, max_vertices=8), st.integers(2, 4))
    @settings(max_examples=40, deadline=None)
    def test_any_graph(self, G, g):
        out = coloring_construction(G, g)
        assert verify_ca(out).ok
        assert out.cols == coloring_multiplier(G, g) * g * g

    def test_auto_coloring_is_optimal_when_small(self):
        G = product("cartesian", [complete(3), cycle(5)]).graph
        assert auto_coloring(G).color_count == exact_chromatic_number(G) == 3

    def test_supplied_coloring(self):
        out = coloring_construction(cycle(4), 2, [0, 1, 0, 1])
        assert out.cols == 4
        with pytest.raises(InvalidColoring):
            coloring_construction(cycle(4), 2, [0, 0, 1, 1])

    def test_k4_binary(self):
        # four colours exceed the three Bush rows for g = 2
        assert coloring_construction(complete(4), 2).cols == 8


class TestCayley2:
    shift = [1, 2, 3, 4, 0]

    @pytest.mark.parametrize("g2", [complete(2), path(4), cycle(6), cycle(4)])
    @pytest.mark.parametrize("g", [2, 3])
    def test_c5(self, g2, g):
        c5 = circulant(5, {1, 4})
        ca1 = coloring_construction(c5, g)
        out = cayley_box_2color(ca1, self.shift, g2)
        assert out.cols == ca1.cols
        assert verify_ca(out, product("cartesian", [c5, g2]).graph).ok

    def test_odd_cycle_second_factor(self):
        ca1 = coloring_construction(cycle(5), 2)
        with pytest.raises(NotBipartite):
            cayley_box_2color(ca1, self.shift, cycle(3))

    def test_bad_automorphisms(self):
        c5 = cycle(5)
        with pytest.raises(InvalidAutomorphism):
            check_neighbour_automorphism(c5, [0, 2, 3, 4, 1])
        with pytest.raises(InvalidAutomorphism):
            check_neighbour_automorphism(c5, [2, 3, 4, 0, 1])  # shift by 2 is not to a neighbour
        with pytest.raises(InvalidAutomorphism):
            check_neighbour_automorphism(path(2), [1, 1])
        check_neighbour_automorphism(c5, [4, 0, 1, 2, 3])

    def test_non_automorphism(self):
        # every vertex moves to a neighbour but an edge is broken
        c4 = cycle(4)
        with pytest.raises(InvalidAutomorphism):
            check_neighbour_automorphism(path(4), [1, 0, 3, 2][::-1])
        check_neighbour_automorphism(c4, [1, 0, 3, 2])


class TestCayley34:
    def test_q8_three_colours(self):
        q, S = q8(["i", "-i", "j", "-j", "k", "-k"])
        ca1 = coloring_construction(cayley_graph(q, S), 2)
        out = cayley_box_3color(ca1, q, S, None, cycle(5))
        assert out.cols == ca1.cols
        assert verify_ca(out, product("cartesian", [cayley_graph(q, S), cycle(5)]).graph).ok

    def test_q8_four_colours(self):
        q, S = q8(["-1", "i", "-i", "j", "-j"])
        G1 = cayley_graph(q, S)
        ca1 = coloring_construction(G1, 3)
        out = cayley_box_4color(ca1, q, S, ("-1", "i"), complete(4))
        assert out.cols == ca1.cols == 9
        assert verify_ca(out, product("cartesian", [G1, complete(4)]).graph).ok

    def test_abelian_group(self):
        z = cyclic(6)
        S = [1, 2, 4, 5]
        G1 = cayley_graph(z, S)
        ca1 = base_ca(G1, 2)
        out = cayley_box_3color(ca1, z, S, None, cycle(3))
        assert verify_ca(out, product("cartesian", [G1, cycle(3)]).graph).ok

    def test_non_generating_set(self):
        # {b^2, a, ab^2} is a Klein subgroup of D8 minus the identity: conditions hold, no generation
        d = dihedral(8)
        S = [d.index("b^2"), d.index("a"), d.index("ab^2")]
        G1 = cayley_graph(d, S)
        ca1 = base_ca(G1, 2)
        out = cayley_box_4color(ca1, d, S, None, complete(4))
        assert verify_ca(out, product("cartesian", [G1, complete(4)]).graph).ok

    def test_precondition_messages(self):
        s3 = symmetric(3)
        S = [s3.index("(0,1)"), s3.index("(1,2)")]
        ca1 = coloring_construction(cayley_graph(s3, S), 2)
        with pytest.raises(PreconditionFailed, match="condition 2"):
            cayley_box_3color(ca1, s3, S, None, cycle(5))
        q, S = q8(["i", "-i", "j", "-j", "k", "-k"])
        ca1 = coloring_construction(cayley_graph(q, S), 2)
        with pytest.raises(PreconditionFailed, match="condition 3"):
            cayley_box_3color(ca1, q, S, ("i", "-i"), cycle(5))
        z = cyclic(5)
        ca1 = coloring_construction(cayley_graph(z, [1, 4]), 2)
        with pytest.raises(PreconditionFailed, match="condition 3"):
            cayley_box_4color(ca1, z, [1, 4], None, complete(4))

    def test_too_many_colours(self):
        q, S = q8(["i", "-i", "j", "-j", "k", "-k"])
        ca1 = coloring_construction(cayley_graph(q, S), 2)
        with pytest.raises(PreconditionFailed, match="3-colourable"):
            cayley_box_3color(ca1, q, S, None, complete(4))

    def test_wrong_graph(self):
        q, S = q8(["i", "-i", "j", "-j", "k", "-k"])
        ca1 = base_ca(complete(8), 2)
        with pytest.raises(PreconditionFailed):
            cayley_box_3color(ca1, q, S, None, cycle(5))
