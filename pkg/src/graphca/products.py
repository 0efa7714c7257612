"""Cartesian, direct, strong and lexicographic products of k >= 2 graphs.

Product vertices are numbered row-major over factor tuples, so vertex
``x`` has coordinates ``numpy.unravel_index(x, sizes)`` with the last
coordinate varying fastest.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from graphca.errors import InvalidFactor
from graphca.graph import Graph

KINDS = ("cartesian", "direct", "strong", "lexicographic")
_ALIASES = {"box": "cartesian", "lex": "lexicographic", "tensor": "direct"}


def normalize_kind(op: str) -> str:
    op = _ALIASES.get(op, op)
    if op not in KINDS:
        raise InvalidFactor(f"unknown product {op!r}; expected one of {KINDS}")
    return op


@dataclass(frozen=True)
class ProductGraph:
    graph: Graph
    factors: tuple
    coords: tuple
    op: str

    @property
    def sizes(self) -> tuple:
        return tuple(f.vertex_count for f in self.factors)

    def vertex(self, coord: Sequence[int]) -> int:
        return tuple_index(coord, self.sizes)


def tuple_index(coord: Sequence[int], sizes: Sequence[int]) -> int:
    """Row-major index of ``coord`` in the tuple space ``sizes``."""
    x = 0
    for c, size in zip(coord, sizes):
        x = x * size + c
    return x


def _related(kind, fi, a, b):
    # a == b is handled by the callers
    eq = [x == y for x, y in zip(a, b)]
    adj = [y in f.adj[x] for f, x, y in zip(fi, a, b)]
    if kind == "cartesian":
        return sum(adj) == 1 and sum(eq) == len(a) - 1
    if kind == "direct":
        return all(adj)
    if kind == "strong":
        return all(e or d for e, d in zip(eq, adj))
    for e, d in zip(eq, adj):
        if not e:
            return d
    return False


def product(op: str, factors: Sequence[Graph]) -> ProductGraph:
    """The k-ary product of ``factors`` built straight from its coordinate rule."""
    op = normalize_kind(op)
    factors = tuple(factors)
    if len(factors) < 2:
        raise InvalidFactor("a product needs at least two factors")
    for i, f in enumerate(factors):
        if f.vertex_count == 0:
            raise InvalidFactor(f"factor {i} has no vertices")
    sizes = [f.vertex_count for f in factors]
    coords = tuple(itertools.product(*(range(s) for s in sizes)))
    # neighbourhood of a coordinate within one factor, optionally including itself
    closed = [[sorted(f.adj[x] | {x}) for x in range(f.vertex_count)] for f in factors]
    opened = [[sorted(f.adj[x]) for x in range(f.vertex_count)] for f in factors]
    edges = set()
    for x, a in enumerate(coords):
        if op == "cartesian":
            for i, f in enumerate(factors):
                for y in opened[i][a[i]]:
                    b = a[:i] + (y,) + a[i + 1:]
                    edges.add((x, tuple_index(b, sizes)))
        elif op == "direct":
            for b in itertools.product(*(opened[i][c] for i, c in enumerate(a))):
                edges.add((x, tuple_index(b, sizes)))
        elif op == "strong":
            for b in itertools.product(*(closed[i][c] for i, c in enumerate(a))):
                if b != a:
                    edges.add((x, tuple_index(b, sizes)))
        else:
            for j in range(len(factors)):
                for y in opened[j][a[j]]:
                    tails = itertools.product(*(range(s) for s in sizes[j + 1:]))
                    for tail in tails:
                        b = a[:j] + (y,) + tail
                        edges.add((x, tuple_index(b, sizes)))
    graph = Graph(len(coords), frozenset(e for e in edges if e[0] != e[1]))
    return ProductGraph(graph, factors, coords, op)


def product_by_definition(op: str, factors: Sequence[Graph]) -> Graph:
    """Pairwise check of the adjacency rule over all tuple pairs (slow; a test oracle)."""
    op = normalize_kind(op)
    sizes = [f.vertex_count for f in factors]
    coords = list(itertools.product(*(range(s) for s in sizes)))
    edges = set()
    for x, a in enumerate(coords):
        for y in range(x + 1, len(coords)):
            if _related(op, factors, a, coords[y]):
                edges.add((x, y))
    return Graph(len(coords), frozenset(edges))


def projection(p: ProductGraph, i: int) -> tuple:
    """The map ``vertex -> i-th coordinate`` as a tuple indexed by product vertex."""
    if not 0 <= i < len(p.factors):
        raise IndexError(f"factor index {i} out of range for {len(p.factors)} factors")
    return tuple(c[i] for c in p.coords)


def is_homomorphism(src: Graph, dst: Graph, phi: Sequence[int], weak: bool = False) -> bool:
    for u, v in src.edges:
        a, b = phi[u], phi[v]
        if a == b:
            if not weak:
                return False
        elif not dst.has_edge(a, b):
            return False
    return True
