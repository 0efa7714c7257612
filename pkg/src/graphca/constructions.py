"""Covering arrays on product graphs assembled from covering arrays on the factors.

Symbols are 0-based throughout: where a construction standardizes factor
arrays on "symbol i" for i = 1..g, here that is symbol i - 1.

Each construction re-verifies its inputs, builds the product graph it claims
to cover, and verifies its own output before returning it bound to that graph.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from graphca.algebra.groups import FiniteGroup, cayley_graph, check_connection_set
from graphca.ca import CoveringArray, concatenated_rows, standardize_on_symbol, verify_ca
from graphca.errors import (
    GraphCAError,
    InvalidAutomorphism,
    InvalidColoring,
    InvalidInputCA,
    NotBipartite,
    PreconditionFailed,
)
from graphca.graph import (
    CHI_LIMIT,
    Graph,
    ProperColoring,
    exact_coloring,
    greedy_coloring,
    is_bipartite,
    k_coloring,
    max_clique,
)
from graphca.products import product


@dataclass
class ConstructionReport:
    strategy: str
    input_sizes: list
    output_size: int
    lower_bound: int
    formula: str
    notes: list = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "strategy": self.strategy,
            "input_sizes": list(self.input_sizes),
            "output_size": self.output_size,
            "lower_bound": self.lower_bound,
            "formula": self.formula,
            "notes": list(self.notes),
        }


FORMULAS = {
    "strong": "sum(n_i) - k",
    "box": "sum(n_i) - k",
    "direct-concat": "sum(n_i) - k",
    "lex": "sum(n_i) - k + 1",
    "direct": "min(n_i)",
    "coloring": "u * g^2, u = ceil(log_s colours)",
    "cayley2": "n_1",
    "cayley3": "n_1",
    "cayley4": "n_1",
    "approx": "u * g^2, u = ceil(log_s V_1)",
}


def expected_size(strategy: str, input_sizes: Sequence[int], g: int = 2, u: int = 1) -> int:
    n, k = list(input_sizes), len(input_sizes)
    if strategy in ("strong", "box", "direct-concat"):
        return sum(n) - k
    if strategy == "lex":
        return sum(n) - k + 1
    if strategy == "direct":
        return min(n)
    if strategy in ("cayley2", "cayley3", "cayley4"):
        return n[0]
    if strategy in ("coloring", "approx"):
        return u * g * g
    raise ValueError(f"unknown strategy {strategy!r}")


def construction_report(strategy, input_sizes, output: CoveringArray, notes=(), u: int = 1) -> ConstructionReport:
    want = expected_size(strategy, input_sizes, output.g, u)
    if output.cols != want:
        raise GraphCAError(f"{strategy}: size {output.cols} differs from formula value {want}")
    return ConstructionReport(
        strategy=strategy,
        input_sizes=list(input_sizes),
        output_size=output.cols,
        lower_bound=output.g**2,
        formula=FORMULAS[strategy],
        notes=list(notes),
    )


# ---------------------------------------------------------------------------
# helpers


def _check_inputs(cas: Sequence[CoveringArray], min_count: int = 2) -> int:
    if len(cas) < min_count:
        raise InvalidInputCA(f"need at least {min_count} input arrays, got {len(cas)}")
    gs = {ca.g for ca in cas}
    if len(gs) != 1:
        raise InvalidInputCA(f"input arrays use different alphabets {sorted(gs)}")
    for i, ca in enumerate(cas):
        if ca.graph is None:
            raise InvalidInputCA(f"input {i} is not bound to a graph")
        rep = verify_ca(ca)
        if not rep.ok:
            u, v, pair = rep.failing_edges[0]
            raise InvalidInputCA(f"input {i} fails on edge ({u}, {v}), missing pair {pair}")
    return gs.pop()


def _finish(matrix, g, graph: Graph) -> CoveringArray:
    out = CoveringArray(matrix, g, graph)
    rep = verify_ca(out)
    if not rep.ok:
        raise GraphCAError(f"construction failed verification on {len(rep.failing_edges)} edges")
    return out


def _truncated(ca: CoveringArray, symbol: int) -> np.ndarray:
    """Vertex-ordered rows standardized on ``symbol`` with the constant column dropped.

    A row with a neighbour keeps every symbol after the drop.  Isolated
    vertices carry no constraint, so their rows are replaced by one that
    does (``symbol`` first, then ``j mod g``).
    """
    g = ca.g
    m = standardize_on_symbol(ca, symbol).by_vertex()
    rest = np.array(m[:, 1:])
    for v in range(ca.rows):
        if not ca.graph.adj[v] and len(np.unique(rest[v])) < g:
            if rest.shape[1] < g:
                raise InvalidInputCA(f"row for isolated vertex {v} is too short to carry every symbol")
            rest[v] = np.arange(rest.shape[1]) % g
    return rest


def _concat(cas, symbols, op) -> CoveringArray:
    g = cas[0].g
    prod = product(op, [ca.graph for ca in cas])
    coords = np.array(prod.coords, dtype=np.int64)
    blocks = [_truncated(ca, s)[coords[:, i]] for i, (ca, s) in enumerate(zip(cas, symbols))]
    return _finish(np.hstack(blocks), g, prod.graph)


# ---------------------------------------------------------------------------
# product constructions


def strong_concat(cas: Sequence[CoveringArray]) -> CoveringArray:
    """CA on the strong product of size ``sum(n_i) - k``.

    Array ``i`` is standardized on symbol ``i`` while ``i < g`` and on symbol 0
    after that, loses its constant column, and row ``(v_1, .., v_k)`` is the
    concatenation of the remaining rows ``v_i``.
    """
    g = _check_inputs(cas)
    symbols = [i if i < g else 0 for i in range(len(cas))]
    return _concat(cas, symbols, "strong")


def box_or_direct_concat(cas: Sequence[CoveringArray], op: str = "cartesian") -> CoveringArray:
    """The strong-product array restricted to the Cartesian or direct product."""
    if op in ("box", "cartesian"):
        op = "cartesian"
    elif op != "direct":
        raise ValueError(f"op must be 'cartesian' or 'direct', got {op!r}")
    g = _check_inputs(cas)
    symbols = [i if i < g else 0 for i in range(len(cas))]
    return _concat(cas, symbols, op)


def direct_min(cas: Sequence[CoveringArray]) -> CoveringArray:
    """CA on the direct product: every vertex copies its row from the smallest factor array.

    Projection onto a factor of a direct product is a homomorphism, so
    adjacent product vertices land on adjacent factor vertices.
    """
    g = _check_inputs(cas)
    j = min(range(len(cas)), key=lambda i: (cas[i].cols, i))
    prod = product("direct", [ca.graph for ca in cas])
    coords = np.array(prod.coords, dtype=np.int64)
    return _finish(cas[j].by_vertex()[coords[:, j]], g, prod.graph)


def lex_concat(cas: Sequence[CoveringArray]) -> CoveringArray:
    """CA on the lexicographic product of size ``sum(n_i) - k + 1``.

    Every input is standardized on symbol 0; the first keeps all its columns,
    the others lose the constant one.  The pair (0, 0) a later block may lack
    is supplied by the first block's constant column.
    """
    g = _check_inputs(cas)
    prod = product("lexicographic", [ca.graph for ca in cas])
    coords = np.array(prod.coords, dtype=np.int64)
    first = standardize_on_symbol(cas[0], 0).by_vertex()
    blocks = [first[coords[:, 0]]]
    for i, ca in enumerate(cas[1:], start=1):
        blocks.append(standardize_on_symbol(ca, 0).by_vertex()[:, 1:][coords[:, i]])
    return _finish(np.hstack(blocks), g, prod.graph)


# ---------------------------------------------------------------------------
# colouring construction


def auto_coloring(graph: Graph) -> ProperColoring:
    """Greedy DSATUR, replaced by an optimal colouring when it exceeds the clique
    bound on a graph within the exact-search limit."""
    col = greedy_coloring(graph)
    if graph.vertex_count <= CHI_LIMIT and col.color_count > max_clique(graph):
        col = exact_coloring(graph)
    return col


def _color_index(graph: Graph, coloring: ProperColoring) -> list:
    if coloring.graph.vertex_count != graph.vertex_count or set(coloring.graph.edges) != set(graph.edges):
        raise InvalidColoring("colouring belongs to a different graph")
    rank = {c: i for i, c in enumerate(sorted(set(coloring.colors)))}
    return [rank[c] for c in coloring.colors]


def _as_coloring(graph: Graph, coloring) -> ProperColoring:
    if isinstance(coloring, ProperColoring):
        return coloring
    return ProperColoring(graph, tuple(coloring))


def coloring_construction(graph: Graph, g: int, coloring=None) -> CoveringArray:
    """Give every vertex of colour ``c`` row ``c`` of a covering array on K_colours."""
    coloring = auto_coloring(graph) if coloring is None else _as_coloring(graph, coloring)
    idx = _color_index(graph, coloring)
    rows, _, _ = concatenated_rows(g, max(idx) + 1 if idx else 1)
    return _finish(rows[idx], g, graph)


def coloring_multiplier(graph: Graph, g: int, coloring=None) -> int:
    """Number ``u`` of OA blocks the colouring construction uses."""
    coloring = auto_coloring(graph) if coloring is None else _as_coloring(graph, coloring)
    _, _, u = concatenated_rows(g, coloring.color_count)
    return u


# ---------------------------------------------------------------------------
# Cayley constructions


def _single_input(ca1: CoveringArray) -> Graph:
    _check_inputs([ca1], min_count=1)
    return ca1.graph


def check_neighbour_automorphism(graph: Graph, phi: Sequence[int]) -> None:
    """Raise InvalidAutomorphism unless ``phi`` is an automorphism moving every vertex to a neighbour."""
    n = graph.vertex_count
    phi = [int(x) for x in phi]
    if len(phi) != n or sorted(phi) != list(range(n)):
        raise InvalidAutomorphism("phi is not a bijection on the vertices")
    for u in range(n):
        if phi[u] == u:
            raise InvalidAutomorphism(f"phi fixes vertex {u}")
        if not graph.has_edge(u, phi[u]):
            raise InvalidAutomorphism(f"phi({u}) = {phi[u]} is not a neighbour of {u}")
    for u, v in graph.edges:
        if not graph.has_edge(phi[u], phi[v]):
            raise InvalidAutomorphism(f"phi does not preserve edge ({u}, {v})")


def _translated(ca1: CoveringArray, g2: Graph, maps, colors) -> CoveringArray:
    g1 = ca1.graph
    prod = product("cartesian", [g1, g2])
    base = ca1.by_vertex()
    idx = [maps[colors[v]][u] for u, v in prod.coords]
    return _finish(base[idx], ca1.g, prod.graph)


def cayley_box_2color(ca1: CoveringArray, phi: Sequence[int], g2: Graph, coloring=None) -> CoveringArray:
    """CA on G1 x G2 (Cartesian) of the same size as ``ca1`` for bipartite G2.

    Vertex ``(u, v)`` takes row ``u`` when ``v`` has colour 0 and row
    ``phi(u)`` otherwise.
    """
    g1 = _single_input(ca1)
    check_neighbour_automorphism(g1, phi)
    if coloring is None:
        ok, coloring = is_bipartite(g2)
        if not ok:
            raise NotBipartite("second factor is not bipartite")
    colors = _color_index(g2, _as_coloring(g2, coloring))
    if max(colors, default=0) > 1:
        raise NotBipartite("supplied colouring uses more than two colours")
    return _translated(ca1, g2, [list(range(g1.vertex_count)), list(phi)], colors)


def _cayley_setup(ca1, grp: FiniteGroup, S, witness, need_inverse_product: bool):
    g1 = _single_input(ca1)
    S = frozenset(grp.index(x) for x in S)
    report = check_connection_set(grp, S)
    if not report.inverse_closed:
        raise PreconditionFailed("condition 1: S is not closed under inverses")
    if not report.conjugation_closed:
        raise PreconditionFailed("condition 2: S is not closed under conjugation by its elements")
    if witness is None:
        witness = report.pair_s1s2_and_s1s2inv if need_inverse_product else report.pair_s1s2
        if witness is None:
            raise PreconditionFailed("condition 3: no pair s1 != s2 with the required products in S")
    s1, s2 = (grp.index(x) for x in witness)
    if s1 not in S or s2 not in S:
        raise PreconditionFailed("condition 3: witness elements must belong to S")
    if s1 == s2:
        raise PreconditionFailed("condition 3: witness needs s1 != s2")
    if grp.mul(s1, s2) not in S:
        raise PreconditionFailed("condition 3: s1 s2 is not in S")
    if need_inverse_product and grp.mul(s1, grp.inv(s2)) not in S:
        raise PreconditionFailed("condition 3: s1 s2^-1 is not in S")
    expected = cayley_graph(grp, S)
    if set(expected.edges) != set(g1.edges):
        raise PreconditionFailed("input array is not bound to Cay(H, S)")
    return s1, s2


def _colors_at_most(g2: Graph, k: int, coloring) -> list:
    if coloring is None:
        coloring = k_coloring(g2, k)
        if coloring is None:
            raise PreconditionFailed(f"second factor is not {k}-colourable")
    colors = _color_index(g2, _as_coloring(g2, coloring))
    if max(colors, default=0) >= k:
        raise PreconditionFailed(f"supplied colouring uses more than {k} colours")
    return colors


def _left(grp, s):
    return [grp.mul(s, h) for h in range(grp.order)]


def cayley_box_3color(ca1, grp: FiniteGroup, S, witness, g2: Graph, coloring=None) -> CoveringArray:
    """Colour classes 0, 1, 2 of G2 use ``u``, ``s1 u`` and ``s2^-1 u`` respectively."""
    s1, s2 = _cayley_setup(ca1, grp, S, witness, need_inverse_product=False)
    colors = _colors_at_most(g2, 3, coloring)
    maps = [list(range(grp.order)), _left(grp, s1), _left(grp, grp.inv(s2))]
    return _translated(ca1, g2, maps, colors)


def cayley_box_4color(ca1, grp: FiniteGroup, S, witness, g2: Graph, coloring=None) -> CoveringArray:
    """Colour classes 0..3 of G2 use ``u``, ``s1 u``, ``s2 u`` and ``s1 s2 u``."""
    s1, s2 = _cayley_setup(ca1, grp, S, witness, need_inverse_product=True)
    colors = _colors_at_most(g2, 4, coloring)
    maps = [list(range(grp.order)), _left(grp, s1), _left(grp, s2), _left(grp, grp.mul(s1, s2))]
    return _translated(ca1, g2, maps, colors)
