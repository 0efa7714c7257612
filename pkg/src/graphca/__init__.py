"""Covering arrays on graphs: product constructions, Cayley constructions and
approximation through Cartesian prime factorization."""

from graphca.approx import ApproxResult, approx_ca, ratio_certificate
from graphca.ca import (
    CoveringArray,
    generic_ca,
    qualitatively_independent,
    standardize,
    standardize_on_symbol,
    verify_ca,
)
from graphca.constructions import (
    box_or_direct_concat,
    cayley_box_2color,
    cayley_box_3color,
    cayley_box_4color,
    coloring_construction,
    direct_min,
    lex_concat,
    strong_concat,
)
from graphca.factorization import Factorization, brute_force_factor_oracle, factorize
from graphca.graph import (
    Graph,
    ProperColoring,
    exact_chromatic_number,
    greedy_coloring,
    is_bipartite,
    is_connected,
    make_graph,
    max_clique,
)
from graphca.products import ProductGraph, product, projection

__version__ = "0.1.0"
