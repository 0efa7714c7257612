"""Covering arrays on graphs and the qualitative-independence verifier.

A ``CoveringArray`` is a ``k x n`` matrix over ``Z_g``.  Once bound to a
graph, row ``r`` belongs to vertex ``binding[r]``; arrays built by this
package are bound with the identity, so row ``v`` is vertex ``v``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace
from typing import Iterable, Optional

import numpy as np

from graphca.algebra.oa import bush_oa
from graphca.errors import InvalidAlphabet, NotBound
from graphca.graph import Graph


@dataclass(frozen=True)
class CoveringArray:
    matrix: np.ndarray
    g: int
    graph: Optional[Graph] = field(default=None, compare=False)
    binding: Optional[tuple] = None

    def __post_init__(self):
        m = np.array(self.matrix, dtype=np.int64, copy=True)
        if m.ndim == 1:
            m = m.reshape(1, -1)
        if m.ndim != 2:
            raise ValueError("covering array must be two-dimensional")
        if self.g < 1:
            raise InvalidAlphabet(f"alphabet size must be positive, got {self.g}")
        if m.size and (m.min() < 0 or m.max() >= self.g):
            raise ValueError(f"entries must lie in Z_{self.g}")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)
        if self.graph is not None and self.binding is None:
            object.__setattr__(self, "binding", tuple(range(m.shape[0])))
        if self.binding is not None:
            binding = tuple(int(v) for v in self.binding)
            if len(binding) != m.shape[0] or len(set(binding)) != len(binding):
                raise NotBound("binding must assign a distinct vertex to every row")
            if self.graph is not None:
                if self.graph.vertex_count != len(binding) or not all(0 <= v < len(binding) for v in binding):
                    raise NotBound("binding must be a bijection onto the graph's vertices")
            object.__setattr__(self, "binding", binding)

    @property
    def rows(self) -> int:
        return self.matrix.shape[0]

    @property
    def cols(self) -> int:
        return self.matrix.shape[1]

    size = cols

    @property
    def is_bound(self) -> bool:
        return self.binding is not None

    def bind(self, graph: Graph, binding: Optional[Iterable[int]] = None) -> "CoveringArray":
        return replace(self, graph=graph, binding=tuple(binding) if binding is not None else None)

    def row_of(self, vertex: int) -> np.ndarray:
        return self.matrix[self._row_index()[vertex]]

    def _row_index(self) -> dict:
        if self.binding is None:
            raise NotBound("covering array is not bound to a graph")
        return {v: r for r, v in enumerate(self.binding)}

    def by_vertex(self) -> np.ndarray:
        """Matrix with rows reordered so that row ``v`` belongs to vertex ``v``."""
        if self.binding is None:
            raise NotBound("covering array is not bound to a graph")
        out = np.empty_like(self.matrix)
        out[list(self.binding)] = self.matrix
        return out

    def labels(self) -> list:
        if self.binding is None:
            return [str(r) for r in range(self.rows)]
        if self.graph is not None:
            return [self.graph.label(v) for v in self.binding]
        return [str(v) for v in self.binding]


def missing_pairs(x, y, g: int) -> list:
    """Ordered pairs over ``Z_g`` that never occur in the columns of ``(x, y)``."""
    x, y = np.asarray(x), np.asarray(y)
    if x.shape != y.shape:
        raise ValueError(f"rows of unequal length {x.shape} and {y.shape}")
    seen = np.zeros(g * g, dtype=bool)
    seen[x * g + y] = True
    return [divmod(int(c), g) for c in np.flatnonzero(~seen)]


def qualitatively_independent(x, y, g: int) -> bool:
    return not missing_pairs(x, y, g)


@dataclass(frozen=True)
class VerificationReport:
    ok: bool
    failing_edges: tuple  # (u, v, first missing pair)
    checked_edges: int

    def as_dict(self) -> dict:
        return {
            "ok": self.ok,
            "checked_edges": self.checked_edges,
            "failing_edges": [{"edge": [u, v], "missing": list(p)} for u, v, p in self.failing_edges],
        }


def verify_ca(ca: CoveringArray, graph: Optional[Graph] = None) -> VerificationReport:
    """Check every edge's row pair for qualitative independence."""
    graph = graph if graph is not None else ca.graph
    if ca.binding is None or graph is None:
        raise NotBound("covering array is not bound to a graph")
    if graph.vertex_count != ca.rows:
        raise NotBound(f"array has {ca.rows} rows but the graph has {graph.vertex_count} vertices")
    m = ca.by_vertex()
    g = ca.g
    edges = np.array(graph.sorted_edges(), dtype=np.int64).reshape(-1, 2)
    if len(edges) == 0:
        return VerificationReport(True, (), 0)
    codes = m[edges[:, 0]] * g + m[edges[:, 1]]
    covered = np.zeros((len(edges), g * g), dtype=bool)
    covered[np.arange(len(edges))[:, None], codes] = True
    bad = np.flatnonzero(~covered.all(axis=1))
    failing = tuple(
        (int(edges[i, 0]), int(edges[i, 1]), divmod(int(np.argmin(covered[i])), g)) for i in bad
    )
    return VerificationReport(not failing, failing, len(edges))


def standardize_on_symbol(ca: CoveringArray, v: int = 0, rows: Optional[Iterable[int]] = None) -> CoveringArray:
    """Swap symbols within each selected row so that its first entry becomes ``v``.

    A per-row transposition is a bijection on ordered pairs, so qualitative
    independence of any two rows is unaffected.
    """
    if not 0 <= v < ca.g:
        raise InvalidAlphabet(f"symbol {v} is not in Z_{ca.g}")
    if ca.cols == 0:
        raise ValueError("cannot standardize an array with no columns")
    m = np.array(ca.matrix)
    selected = range(ca.rows) if rows is None else rows
    for r in selected:
        first = m[r, 0]
        if first != v:
            row = m[r].copy()
            m[r, row == first] = v
            m[r, row == v] = first
    return replace(ca, matrix=m)


def standardize(ca: CoveringArray) -> CoveringArray:
    return standardize_on_symbol(ca, 0)


def tuple_count(s: int, k: int) -> int:
    """Least ``u >= 1`` with ``s**u >= k``."""
    u = 1
    while s**u < k:
        u += 1
    return u


def concatenated_rows(g: int, k: int) -> tuple:
    """First ``k`` lexicographic concatenations of ``u`` rows of ``bush_oa(g)``.

    Returns ``(matrix, s, u)``.  Two distinct tuples differ in some block, and
    there the two OA rows already cover every ordered pair.
    """
    oa = bush_oa(g).matrix
    s = oa.shape[0]
    u = tuple_count(s, k)
    picks = itertools.islice(itertools.product(range(s), repeat=u), k)
    matrix = np.array([np.concatenate([oa[i] for i in t]) for t in picks], dtype=np.int64)
    return matrix.reshape(k, u * g * g), s, u


def generic_ca(k: int, g: int) -> CoveringArray:
    """A CA(u g^2, k, g) with ``u = ceil(log_s k)`` (at least 1), s the Bush row count."""
    if k < 1:
        raise ValueError("need at least one row")
    if g < 2:
        raise InvalidAlphabet(f"alphabet size must be at least 2, got {g}")
    matrix, _, _ = concatenated_rows(g, k)
    return CoveringArray(matrix, g)
