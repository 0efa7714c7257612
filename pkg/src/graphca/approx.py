"""Covering arrays on graphs through their Cartesian prime factors.

The largest prime factor (``V_1`` vertices) gets ``V_1`` pairwise
qualitatively independent rows, each a concatenation of ``u`` rows of a Bush
orthogonal array with ``s`` rows.  A vertex with factor labels
``(u_1, .., u_k)`` takes row ``(u_1 + .. + u_k) mod V_1``: adjacent vertices
differ in a single label by less than ``V_1``, so their rows are distinct.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from graphca.algebra.oa import bush_rows
from graphca.ca import CoveringArray, concatenated_rows, qualitatively_independent, verify_ca
from graphca.errors import GraphCAError, InvalidAlphabet, NotConnected
from graphca.factorization import Factorization, factorize
from graphca.graph import Graph, is_connected

log = logging.getLogger(__name__)


@dataclass
class ApproxResult:
    ca: CoveringArray
    g: int
    s: int
    u: int
    v1: int
    k: int
    vertex_count: int
    ratio_bound: int
    factorization: Factorization = field(repr=False)
    warnings: list = field(default_factory=list)

    @property
    def achieved_multiplier(self) -> int:
        return self.u

    def as_dict(self) -> dict:
        return {
            "g": self.g,
            "s": self.s,
            "u": self.u,
            "v1": self.v1,
            "k": self.k,
            "vertex_count": self.vertex_count,
            "factor_sizes": list(self.factorization.sizes),
            "size": self.ca.cols,
            "ratio_bound": self.ratio_bound,
            "achieved_multiplier": self.achieved_multiplier,
            "warnings": list(self.warnings),
        }


def ceil_log(s: int, x_num: int, x_den: int = 1) -> int:
    """``ceil(log_s(x_num / x_den))`` in exact integer arithmetic, never below 0."""
    u = 0
    while s**u * x_den < x_num:
        u += 1
    return u


def ratio_bound(s: int, vertex_count: int, k: int) -> int:
    return ceil_log(s, vertex_count, 2 ** (k - 1))


def approx_ca(graph: Graph, g: int) -> ApproxResult:
    if g < 2:
        raise InvalidAlphabet(f"alphabet size must be at least 2, got {g}")
    if graph.vertex_count < 2 or not graph.edges or not is_connected(graph):
        raise NotConnected("input must be a connected graph with at least one edge")
    s = bush_rows(g)
    fz = factorize(graph)
    v1 = fz.sizes[0]
    warnings = []
    if fz.k == 1:
        msg = "graph is prime for the Cartesian product; the largest factor is the whole graph"
        log.warning(msg)
        warnings.append(msg)
    c1, s_used, u = concatenated_rows(g, v1)
    assert s_used == s
    labels = np.array(fz.coords, dtype=np.int64).sum(axis=1) % v1
    ca = CoveringArray(c1[labels], g, graph)
    rep = verify_ca(ca)
    if not rep.ok:
        raise GraphCAError(f"approximation output fails on {len(rep.failing_edges)} edges")
    return ApproxResult(
        ca=ca,
        g=g,
        s=s,
        u=u,
        v1=v1,
        k=fz.k,
        vertex_count=graph.vertex_count,
        ratio_bound=ratio_bound(s, graph.vertex_count, fz.k),
        factorization=fz,
        warnings=warnings,
    )


def factor_rows(res: ApproxResult) -> np.ndarray:
    """The ``V_1`` concatenated rows the result draws from."""
    rows, _, _ = concatenated_rows(res.g, res.v1)
    return rows


def ratio_certificate(res: ApproxResult) -> dict:
    """Size relative to the g^2 lower bound, against ``ceil(log_s(V / 2^(k-1)))``."""
    multiplier = res.ca.cols // (res.g * res.g)
    rows = factor_rows(res)
    distinct_rows_qi = all(
        qualitatively_independent(rows[i], rows[j], res.g)
        for i in range(len(rows))
        for j in range(i + 1, len(rows))
    )
    out = {
        "size": res.ca.cols,
        "lower_bound": res.g * res.g,
        "multiplier": multiplier,
        "bound": res.ratio_bound,
        "within_bound": multiplier <= res.ratio_bound,
        "tight": multiplier == res.ratio_bound,
        "factor_rows_pairwise_qi": distinct_rows_qi,
        "warnings": list(res.warnings),
    }
    if not out["within_bound"]:
        raise GraphCAError(f"multiplier {multiplier} exceeds bound {res.ratio_bound}")
    return out
