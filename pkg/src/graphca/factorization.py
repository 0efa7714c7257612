"""Prime factorization of connected graphs with respect to the Cartesian product.

Edges are sorted into classes with the square property: opposite edges of a
chordless 4-cycle share a class, and so do two incident edges unless they
span exactly one chordless 4-cycle.  Each class closes up into the layers of
one prime factor.  The result is always rebuilt as an explicit product and
compared edge for edge with the input before it is returned.
"""

from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass

from graphca.errors import InternalFactorizationError, NotConnected, SizeLimitExceeded
from graphca.graph import CANON_LIMIT, Graph, canonical_form, is_connected
from graphca.products import product, tuple_index

ORACLE_LIMIT = 12


@dataclass(frozen=True)
class Factorization:
    factors: tuple
    coords: tuple
    source: Graph

    @property
    def k(self) -> int:
        return len(self.factors)

    @property
    def sizes(self) -> tuple:
        return tuple(f.vertex_count for f in self.factors)


class _DSU:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def edge_classes(g: Graph) -> list:
    """Partition of ``g``'s edges by the square-property closure, as sorted lists."""
    edges = g.sorted_edges()
    eid = {e: i for i, e in enumerate(edges)}

    def key(u, v):
        return eid[(u, v) if u < v else (v, u)]

    dsu = _DSU(len(edges))
    adj = g.adj
    for x in range(g.vertex_count):
        for y, z in itertools.combinations(sorted(adj[x]), 2):
            squares = []
            if z not in adj[y]:
                squares = [w for w in adj[y] & adj[z] if w != x and w not in adj[x]]
            for w in squares:
                dsu.union(key(x, y), key(z, w))
                dsu.union(key(x, z), key(y, w))
            if len(squares) != 1:
                dsu.union(key(x, y), key(x, z))
    groups = {}
    for i, e in enumerate(edges):
        groups.setdefault(dsu.find(i), []).append(e)
    return sorted(groups.values())


def _layer_bfs(n, adj_sets, start):
    """BFS order of the component of ``start``, neighbours taken in increasing order."""
    order, seen = [start], {start}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for y in sorted(adj_sets[x]):
            if y not in seen:
                seen.add(y)
                order.append(y)
                queue.append(y)
    return order


def _components(n, adj_sets):
    comp = [-1] * n
    c = 0
    for s in range(n):
        if comp[s] >= 0:
            continue
        comp[s] = c
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in adj_sets[x]:
                if comp[y] < 0:
                    comp[y] = c
                    queue.append(y)
        c += 1
    return comp


def decompose(g: Graph, classes: list, base: int = 0) -> tuple:
    """Factor graphs and per-vertex coordinates induced by an edge partition.

    Factor ``i`` is the layer of class ``i`` through ``base``, numbered in BFS
    order.  The ``i``-th coordinate of ``x`` is the layer vertex lying in the
    same component as ``x`` once class ``i`` is deleted.  No checking is done.
    """
    n = g.vertex_count
    factors, columns = [], []
    for i, cls in enumerate(classes):
        inside = [set() for _ in range(n)]
        outside = [set() for _ in range(n)]
        for j, other in enumerate(classes):
            target = inside if j == i else outside
            for u, v in other:
                target[u].add(v)
                target[v].add(u)
        layer = _layer_bfs(n, inside, base)
        label = {v: k for k, v in enumerate(layer)}
        comp = _components(n, outside)
        comp_label = {}
        for v in layer:
            comp_label.setdefault(comp[v], label[v])
        columns.append([comp_label.get(comp[x], -1) for x in range(n)])
        fedges = {(label[u], label[v]) for u, v in cls if u in label and v in label}
        factors.append(Graph(len(layer), frozenset(fedges)))
    coords = tuple(tuple(col[x] for col in columns) for x in range(n))
    return factors, coords


def certify(g: Graph, factors, coords) -> bool:
    """True iff ``coords`` is an isomorphism from ``g`` onto the Cartesian product."""
    if len(factors) == 1:
        f = factors[0]
        return f.vertex_count == g.vertex_count and {
            tuple(sorted((coords[u][0], coords[v][0]))) for u, v in g.edges
        } == set(f.edges) and len({c[0] for c in coords}) == g.vertex_count
    sizes = [f.vertex_count for f in factors]
    if math.prod(sizes) != g.vertex_count:
        return False
    if any(c < 0 for t in coords for c in t):
        return False
    index = [tuple_index(t, sizes) for t in coords]
    if len(set(index)) != g.vertex_count:
        return False
    rebuilt = product("cartesian", factors).graph
    mapped = {tuple(sorted((index[u], index[v]))) for u, v in g.edges}
    return mapped == set(rebuilt.edges)


def _factor_key(f: Graph):
    limit = None if f.vertex_count <= 2 * CANON_LIMIT else CANON_LIMIT
    try:
        canon = canonical_form(f, limit)
    except SizeLimitExceeded:
        canon = (f.vertex_count, tuple(f.sorted_edges()))
    return (-f.vertex_count, len(f.edges), canon)


def _sorted_factorization(g, factors, coords) -> Factorization:
    order = sorted(range(len(factors)), key=lambda i: _factor_key(factors[i]))
    return Factorization(
        factors=tuple(factors[i] for i in order),
        coords=tuple(tuple(c[i] for i in order) for c in coords),
        source=g,
    )


def factorize(g: Graph) -> Factorization:
    """Cartesian prime factors of a connected graph, largest first, with coordinates."""
    if g.vertex_count == 0 or not is_connected(g):
        raise NotConnected("factorization requires a connected graph with at least one vertex")
    if not g.edges:
        return Factorization((Graph(1),), ((0,),), g)
    classes = edge_classes(g)
    factors, coords = decompose(g, classes)
    if not certify(g, factors, coords):
        raise InternalFactorizationError(
            f"edge classes of {g!r} ({len(classes)} classes) do not rebuild the graph"
        )
    return _sorted_factorization(g, factors, coords)


# ---------------------------------------------------------------------------
# brute-force oracle


def _candidate_factors(size: int):
    """All connected graphs on ``size`` vertices up to isomorphism (size <= 7)."""
    import networkx as nx

    for h in nx.graph_atlas_g():
        if h.number_of_nodes() == size and nx.is_connected(h):
            yield h


def _to_nx(g: Graph):
    import networkx as nx

    h = nx.Graph()
    h.add_nodes_from(range(g.vertex_count))
    h.add_edges_from(g.edges)
    return h


def _from_nx(h) -> Graph:
    nodes = sorted(h.nodes())
    pos = {v: i for i, v in enumerate(nodes)}
    return Graph(len(nodes), frozenset((pos[u], pos[v]) for u, v in h.edges()))


def _split(g: Graph):
    """Find ``g`` = A x B with both nontrivial: ``(A, B, coords)`` or None."""
    import networkx as nx

    n, m = g.vertex_count, len(g.edges)
    target = _to_nx(g)
    for a in range(2, n):
        if n % a or a > n // a:
            continue
        b = n // a
        for ha in _candidate_factors(a):
            rest = m - ha.number_of_edges() * b
            if rest < 0 or rest % a:
                continue
            for hb in _candidate_factors(b):
                if hb.number_of_edges() != rest // a:
                    continue
                fa, fb = _from_nx(ha), _from_nx(hb)
                prod = product("cartesian", [fa, fb])
                matcher = nx.isomorphism.GraphMatcher(target, _to_nx(prod.graph))
                if matcher.is_isomorphic():
                    return fa, fb, tuple(prod.coords[matcher.mapping[x]] for x in range(n))
    return None


def _oracle(g: Graph):
    found = _split(g)
    if found is None:
        return [g], tuple((x,) for x in range(g.vertex_count))
    fa, fb, coords = found
    fas, ca = _oracle(fa)
    fbs, cb = _oracle(fb)
    return fas + fbs, tuple(ca[a] + cb[b] for a, b in coords)


def brute_force_factor_oracle(g: Graph) -> Factorization:
    """Exhaustive factorization for graphs of at most 12 vertices.

    Tries every split ``|V| = a * b`` and every pair of connected candidate
    factors (taken from the networkx atlas of small graphs), testing the
    product for isomorphism with VF2.  Shares nothing with ``factorize``
    beyond the product builder.
    """
    if g.vertex_count > ORACLE_LIMIT:
        raise SizeLimitExceeded(f"oracle limited to {ORACLE_LIMIT} vertices")
    if g.vertex_count == 0 or not is_connected(g):
        raise NotConnected("oracle requires a connected graph")
    if g.vertex_count == 1:
        return Factorization((Graph(1),), ((0,),), g)
    factors, coords = _oracle(g)
    return _sorted_factorization(g, factors, coords)
