"""Simple undirected graphs, standard families and small-scale structure.

Vertices are the integers ``0..n-1``.  Everything here is pure: a ``Graph``
is immutable once built, and every function returns fresh values.

Exact chromatic number and maximum clique are exponential searches, guarded by
explicit vertex limits (16 and 20 by default).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional, Sequence

from graphca.errors import InvalidColoring, InvalidConnectionSet, InvalidGraph, SizeLimitExceeded

CHI_LIMIT = 16
CLIQUE_LIMIT = 20
CANON_LIMIT = 10


@dataclass(frozen=True)
class Graph:
    """A labelled simple graph on vertices ``0..vertex_count-1``.

    ``edges`` is normalised to a frozenset of ``(u, v)`` pairs with ``u < v``.
    """

    vertex_count: int
    edges: frozenset = field(default_factory=frozenset)
    vertex_labels: Optional[tuple] = None

    def __post_init__(self):
        n = self.vertex_count
        if not isinstance(n, int) or n < 0:
            raise InvalidGraph(f"vertex_count must be a non-negative integer, got {n!r}")
        normalised = set()
        for e in self.edges:
            u, v = e
            if u == v:
                raise InvalidGraph(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidGraph(f"edge ({u}, {v}) out of range for {n} vertices")
            normalised.add((u, v) if u < v else (v, u))
        object.__setattr__(self, "edges", frozenset(normalised))
        if self.vertex_labels is not None:
            labels = tuple(str(x) for x in self.vertex_labels)
            if len(labels) != n:
                raise InvalidGraph("vertex_labels must have one entry per vertex")
            object.__setattr__(self, "vertex_labels", labels)

    @property
    def n(self) -> int:
        return self.vertex_count

    @cached_property
    def adj(self) -> tuple:
        nbrs = [set() for _ in range(self.vertex_count)]
        for u, v in self.edges:
            nbrs[u].add(v)
            nbrs[v].add(u)
        return tuple(frozenset(s) for s in nbrs)

    @cached_property
    def adj_masks(self) -> tuple:
        masks = [0] * self.vertex_count
        for u, v in self.edges:
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        return tuple(masks)

    def sorted_edges(self) -> list:
        return sorted(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def max_degree(self) -> int:
        return max((len(a) for a in self.adj), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def label(self, v: int) -> str:
        return self.vertex_labels[v] if self.vertex_labels is not None else str(v)

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Return the graph with vertex ``v`` renamed to ``perm[v]``."""
        return Graph(self.vertex_count, frozenset((perm[u], perm[v]) for u, v in self.edges))

    def __repr__(self):
        return f"Graph(n={self.vertex_count}, m={len(self.edges)})"


# ---------------------------------------------------------------------------
# families


def path(m: int) -> Graph:
    """Path with ``m`` vertices (``m - 1`` edges)."""
    if m < 1:
        raise InvalidGraph("path needs at least one vertex")
    return Graph(m, frozenset((i, i + 1) for i in range(m - 1)))


def cycle(n: int) -> Graph:
    if n < 3:
        raise InvalidGraph("cycle needs at least three vertices")
    return Graph(n, frozenset((i, (i + 1) % n) for i in range(n)))


def complete(k: int) -> Graph:
    if k < 1:
        raise InvalidGraph("complete graph needs at least one vertex")
    return Graph(k, frozenset((i, j) for i in range(k) for j in range(i + 1, k)))


def edgeless(n: int) -> Graph:
    if n < 1:
        raise InvalidGraph("edgeless graph needs at least one vertex")
    return Graph(n)


def circulant(n: int, connection: Iterable[int]) -> Graph:
    """Circulant graph on Z_n: ``i ~ j`` iff ``(i - j) mod n`` lies in the connection set."""
    if n < 1:
        raise InvalidGraph("circulant needs n >= 1")
    S = set(connection)
    if any(not isinstance(s, int) or not 0 <= s < n for s in S):
        raise InvalidConnectionSet(f"connection set must lie in Z_{n}")
    if 0 in S:
        raise InvalidConnectionSet("0 must not belong to the connection set")
    if any((-s) % n not in S for s in S):
        raise InvalidConnectionSet("connection set is not closed under negation")
    return Graph(n, frozenset((i, (i + s) % n) for i in range(n) for s in S))


FAMILIES = {"path": path, "cycle": cycle, "complete": complete, "edgeless": edgeless, "circulant": circulant}


def make_graph(family: str, *params) -> Graph:
    """Build a named family, e.g. ``make_graph("circulant", 5, {1, 4})``."""
    try:
        builder = FAMILIES[family]
    except KeyError:
        raise InvalidGraph(f"unknown family {family!r}; expected one of {sorted(FAMILIES)}") from None
    return builder(*params)


# ---------------------------------------------------------------------------
# connectivity


def is_connected(g: Graph) -> bool:
    if g.vertex_count <= 1:
        return True
    return len(_component(g, 0)) == g.vertex_count


def _component(g: Graph, start: int) -> set:
    seen = {start}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for y in g.adj[x]:
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


def connected_components(g: Graph) -> list:
    seen, comps = set(), []
    for v in range(g.vertex_count):
        if v not in seen:
            comp = _component(g, v)
            seen |= comp
            comps.append(sorted(comp))
    return comps


# ---------------------------------------------------------------------------
# colouring


@dataclass(frozen=True)
class ProperColoring:
    graph: Graph
    colors: tuple

    def __post_init__(self):
        colors = tuple(int(c) for c in self.colors)
        object.__setattr__(self, "colors", colors)
        if len(colors) != self.graph.vertex_count:
            raise InvalidColoring("one colour per vertex required")
        if any(c < 0 for c in colors):
            raise InvalidColoring("colours must be non-negative")
        for u, v in self.graph.edges:
            if colors[u] == colors[v]:
                raise InvalidColoring(f"edge ({u}, {v}) is monochromatic (colour {colors[u]})")

    @property
    def color_count(self) -> int:
        return len(set(self.colors))

    def classes(self) -> dict:
        out = {}
        for v, c in enumerate(self.colors):
            out.setdefault(c, []).append(v)
        return out


def greedy_coloring(g: Graph) -> ProperColoring:
    """DSATUR: colour the most saturated vertex next, ties by degree then lowest index.

    Each vertex takes the smallest colour absent from its neighbours.
    """
    n = g.vertex_count
    colors = [-1] * n
    seen = [set() for _ in range(n)]
    for _ in range(n):
        v = max(
            (x for x in range(n) if colors[x] < 0),
            key=lambda x: (len(seen[x]), len(g.adj[x]), -x),
        )
        c = 0
        while c in seen[v]:
            c += 1
        colors[v] = c
        for w in g.adj[v]:
            seen[w].add(c)
    return ProperColoring(g, tuple(colors))


def _check_limit(g: Graph, limit: Optional[int], what: str) -> None:
    if limit is not None and g.vertex_count > limit:
        raise SizeLimitExceeded(f"{what} limited to {limit} vertices, graph has {g.vertex_count}")


def _k_coloring(g: Graph, k: int) -> Optional[list]:
    """Backtracking search for a k-colouring in DSATUR order; None if none exists."""
    n = g.vertex_count
    adj = g.adj
    colors = [-1] * n

    def pick():
        best, best_key = -1, None
        for x in range(n):
            if colors[x] < 0:
                sat = len({colors[y] for y in adj[x] if colors[y] >= 0})
                key = (sat, len(adj[x]), -x)
                if best_key is None or key > best_key:
                    best, best_key = x, key
        return best

    def extend(done, used):
        if done == n:
            return True
        v = pick()
        taken = {colors[y] for y in adj[v]}
        # a fresh colour is only ever tried once: colours are interchangeable
        for c in range(min(used + 1, k)):
            if c in taken:
                continue
            colors[v] = c
            if extend(done + 1, max(used, c + 1)):
                return True
        colors[v] = -1
        return False

    return colors if extend(0, 0) else None


def exact_coloring(g: Graph, vertex_limit: Optional[int] = CHI_LIMIT) -> ProperColoring:
    """A colouring with exactly chi(g) colours, by exhaustive search."""
    _check_limit(g, vertex_limit, "exact chromatic number")
    best = greedy_coloring(g)
    if g.vertex_count == 0:
        return best
    lower = max(1 if not g.edges else 2, _greedy_clique_size(g))
    for k in range(lower, best.color_count):
        found = _k_coloring(g, k)
        if found is not None:
            return ProperColoring(g, tuple(found))
    return best


def exact_chromatic_number(g: Graph, vertex_limit: Optional[int] = CHI_LIMIT) -> int:
    return exact_coloring(g, vertex_limit).color_count


def k_coloring(g: Graph, k: int, vertex_limit: Optional[int] = CHI_LIMIT) -> Optional[ProperColoring]:
    """Some proper colouring with at most k colours, or None.

    Greedy is tried first so large easy graphs stay cheap; the exhaustive
    search (and its vertex limit) only applies when greedy needs too many.
    """
    greedy = greedy_coloring(g)
    if greedy.color_count <= k:
        return greedy
    _check_limit(g, vertex_limit, "k-colouring search")
    found = _k_coloring(g, k)
    return None if found is None else ProperColoring(g, tuple(found))


def _greedy_clique_size(g: Graph) -> int:
    best = 0
    for v in range(g.vertex_count):
        clique = [v]
        for w in sorted(g.adj[v], key=lambda x: -len(g.adj[x])):
            if all(w in g.adj[c] for c in clique):
                clique.append(w)
        best = max(best, len(clique))
    return best


def max_clique(g: Graph, vertex_limit: Optional[int] = CLIQUE_LIMIT) -> int:
    """Clique number by Bron-Kerbosch with pivoting over bitmasks."""
    _check_limit(g, vertex_limit, "maximum clique")
    masks = g.adj_masks
    best = 0

    def expand(size, cand, excl):
        nonlocal best
        if not cand and not excl:
            best = max(best, size)
            return
        if size + bin(cand).count("1") <= best:
            return
        pivot_pool = cand | excl
        pivot = max(_bits(pivot_pool), key=lambda u: bin(cand & masks[u]).count("1"))
        for v in _bits(cand & ~masks[pivot]):
            expand(size + 1, cand & masks[v], excl & masks[v])
            cand &= ~(1 << v)
            excl |= 1 << v

    expand(0, (1 << g.vertex_count) - 1, 0)
    return best


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def is_bipartite(g: Graph) -> tuple:
    """Return ``(True, coloring)`` with a 2-colouring, or ``(False, None)``."""
    colors = [-1] * g.vertex_count
    for s in range(g.vertex_count):
        if colors[s] >= 0:
            continue
        colors[s] = 0
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in g.adj[x]:
                if colors[y] < 0:
                    colors[y] = 1 - colors[x]
                    queue.append(y)
                elif colors[y] == colors[x]:
                    return False, None
    return True, ProperColoring(g, tuple(colors))


# ---------------------------------------------------------------------------
# canonical form


def canonical_labeling(g: Graph, vertex_limit: Optional[int] = CANON_LIMIT) -> tuple:
    """Return ``(certificate, perm)`` where ``g.relabel(perm)`` has edge set ``certificate``.

    Individualisation-refinement over equitable ordered partitions; twins in a
    target cell are explored once since swapping them is an automorphism.
    """
    _check_limit(g, vertex_limit, "canonical form")
    n = g.vertex_count
    adj = g.adj
    best_cert, best_perm = None, None

    def refine(cells):
        cells = [list(c) for c in cells]
        changed = True
        while changed:
            changed = False
            for splitter in list(cells):
                sset = set(splitter)
                out = []
                for cell in cells:
                    if len(cell) == 1:
                        out.append(cell)
                        continue
                    groups = {}
                    for v in cell:
                        groups.setdefault(len(adj[v] & sset), []).append(v)
                    if len(groups) > 1:
                        changed = True
                    out.extend(groups[key] for key in sorted(groups))
                cells = out
                if changed:
                    break
        return cells

    def search(cells):
        nonlocal best_cert, best_perm
        cells = refine(cells)
        target = next((i for i, c in enumerate(cells) if len(c) > 1), None)
        if target is None:
            perm = [0] * n
            for pos, c in enumerate(cells):
                perm[c[0]] = pos
            cert = tuple(sorted(tuple(sorted((perm[u], perm[v]))) for u, v in g.edges))
            if best_cert is None or cert < best_cert:
                best_cert, best_perm = cert, perm
            return
        cell = cells[target]
        tried = []
        for v in sorted(cell):
            if any(adj[v] - {w} == adj[w] - {v} for w in tried):
                continue
            tried.append(v)
            rest = [x for x in cell if x != v]
            search(cells[:target] + [[v], rest] + cells[target + 1:])

    if n == 0:
        return (), []
    search([list(range(n))])
    return best_cert, best_perm


def canonical_form(g: Graph, vertex_limit: Optional[int] = CANON_LIMIT) -> tuple:
    """Isomorphism-invariant key ``(n, sorted relabelled edges)``."""
    cert, _ = canonical_labeling(g, vertex_limit)
    return (g.vertex_count, cert)


def is_isomorphic(a: Graph, b: Graph, vertex_limit: Optional[int] = CANON_LIMIT) -> bool:
    if a.vertex_count != b.vertex_count or len(a.edges) != len(b.edges):
        return False
    if sorted(map(len, a.adj)) != sorted(map(len, b.adj)):
        return False
    return canonical_form(a, vertex_limit) == canonical_form(b, vertex_limit)
