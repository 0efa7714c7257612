"""Strength-2, index-1 orthogonal arrays over Z_g."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from graphca.algebra.field import build_field, prime_factors, prime_power
from graphca.errors import InvalidAlphabet


@dataclass(frozen=True)
class OrthogonalArray:
    symbols: int
    matrix: np.ndarray

    @property
    def rows(self) -> int:
        return self.matrix.shape[0]

    @property
    def g(self) -> int:
        return self.symbols


def oa_defects(matrix: np.ndarray, g: int) -> list:
    """Row pairs that do not cover each ordered pair exactly once."""
    matrix = np.asarray(matrix)
    bad = []
    if matrix.shape[1] != g * g:
        return [(i, j) for i, j in itertools.combinations(range(matrix.shape[0]), 2)]
    for i, j in itertools.combinations(range(matrix.shape[0]), 2):
        counts = np.bincount(matrix[i] * g + matrix[j], minlength=g * g)
        if counts.size != g * g or not np.all(counts == 1):
            bad.append((i, j))
    return bad


def is_orthogonal_array(matrix: np.ndarray, g: int) -> bool:
    m = np.asarray(matrix)
    if m.ndim != 2 or m.size and (m.min() < 0 or m.max() >= g):
        return False
    return not oa_defects(m, g)


def _checked(matrix, g):
    if not is_orthogonal_array(matrix, g):
        raise AssertionError(f"construction produced a non-orthogonal array for g={g}")
    matrix.setflags(write=False)
    return OrthogonalArray(g, matrix)


@lru_cache(maxsize=None)
def oa_prime_power(q: int) -> OrthogonalArray:
    """OA(q+1, q): column (a, b) holds ``a*m + b`` in the row of slope m, and ``a`` last."""
    field = build_field(q)
    a = np.repeat(np.arange(q), q)
    b = np.tile(np.arange(q), q)
    rows = [field.add_table[field.mul_table[a, m], b] for m in range(q)]
    rows.append(a)
    return _checked(np.array(rows, dtype=np.int64), q)


def prime_power_components(g: int) -> list:
    """The prime-power parts of ``g``, ascending."""
    return sorted(p**e for p, e in prime_factors(g).items())


def bush_rows(g: int) -> int:
    """Row count ``1 + max(2, r)`` with r the least prime-power component of g."""
    if g < 2:
        raise InvalidAlphabet(f"alphabet size must be at least 2, got {g}")
    return 1 + max(2, prime_power_components(g)[0])


@lru_cache(maxsize=None)
def bush_oa(g: int) -> OrthogonalArray:
    """OA(1 + max(2, r), g) composed from prime-power orthogonal arrays.

    Components are taken in ascending order; the first is the most significant
    digit both of the column index and of the symbol.
    """
    s = bush_rows(g)
    parts = prime_power_components(g)
    matrix = np.asarray(oa_prime_power(parts[0]).matrix[:s])
    for q in parts[1:]:
        nxt = np.asarray(oa_prime_power(q).matrix[:s])
        matrix = (matrix[:, :, None] * q + nxt[:, None, :]).reshape(s, -1)
    return _checked(np.array(matrix, dtype=np.int64), g)

