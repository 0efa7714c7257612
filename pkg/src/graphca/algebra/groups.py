"""Finite groups as multiplication tables, connection sets and Cayley graphs.

Built-in element orders:

* ``cyclic m``: ``"0" .. "m-1"`` under addition mod m.
* ``dihedral 2m``: ``a^e b^i`` at index ``e*m + i`` with ``b`` of order m,
  ``a`` an involution and ``a b a = b^-1``; names ``1, b, b^2, .., a, ab, ..``.
* ``quaternion8``: ``1, -1, i, -i, j, -j, k, -k``.
* ``symmetric m`` (m <= 4): permutations of ``0..m-1`` in lexicographic
  one-line order, named in cycle notation; ``(st)(x) = s(t(x))``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from graphca.errors import InvalidConnectionSet, NotAGroup
from graphca.graph import Graph

GROUP_LIMIT = 64
SYMMETRIC_LIMIT = 4


@dataclass(frozen=True)
class FiniteGroup:
    table: tuple
    names: tuple
    identity: int
    inverse: tuple

    @property
    def order(self) -> int:
        return len(self.table)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def index(self, name) -> int:
        """Element index from a name or an integer index."""
        if isinstance(name, int):
            if not 0 <= name < self.order:
                raise NotAGroup(f"element index {name} out of range")
            return name
        try:
            return self.names.index(str(name))
        except ValueError:
            raise NotAGroup(f"unknown element {name!r}") from None

    def name(self, a: int) -> str:
        return self.names[a]

    def is_abelian(self) -> bool:
        t = self.table
        return all(t[a][b] == t[b][a] for a in range(self.order) for b in range(a))

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity:
            x = self.table[a][x]
            k += 1
        return k


def group_from_table(table: Sequence[Sequence[int]], names: Optional[Sequence[str]] = None) -> FiniteGroup:
    """Validate a multiplication table (Latin square, identity, inverses, associativity)."""
    m = len(table)
    if m == 0:
        raise NotAGroup("empty table")
    if m > GROUP_LIMIT:
        raise NotAGroup(f"groups are limited to order {GROUP_LIMIT}")
    t = tuple(tuple(int(x) for x in row) for row in table)
    full = set(range(m))
    for r, row in enumerate(t):
        if len(row) != m:
            raise NotAGroup(f"row {r} has length {len(row)}, expected {m}")
        if set(row) != full:
            raise NotAGroup(f"row {r} is not a permutation of the elements")
    for c in range(m):
        if {t[r][c] for r in range(m)} != full:
            raise NotAGroup(f"column {c} is not a permutation of the elements")
    ids = [e for e in range(m) if all(t[e][x] == x and t[x][e] == x for x in range(m))]
    if not ids:
        raise NotAGroup("no identity element")
    e = ids[0]
    inverse = tuple(t[a].index(e) for a in range(m))
    for a in range(m):
        if t[inverse[a]][a] != e:
            raise NotAGroup(f"element {a} has no two-sided inverse")
    for a, b, c in itertools.product(range(m), repeat=3):
        if t[t[a][b]][c] != t[a][t[b][c]]:
            raise NotAGroup(f"not associative at ({a}, {b}, {c})")
    if names is None:
        names = [str(i) for i in range(m)]
    names = tuple(str(x) for x in names)
    if len(names) != m or len(set(names)) != m:
        raise NotAGroup("element names must be distinct, one per element")
    return FiniteGroup(t, names, e, inverse)


def cyclic(m: int) -> FiniteGroup:
    return group_from_table([[(a + b) % m for b in range(m)] for a in range(m)])


def dihedral(order: int) -> FiniteGroup:
    if order < 2 or order % 2:
        raise NotAGroup("dihedral group order must be even and positive")
    m = order // 2

    def mul(x, y):
        e1, i1 = divmod(x, m)
        e2, i2 = divmod(y, m)
        # b^i a = a b^-i
        i = (-i1 if e2 else i1) + i2
        return ((e1 + e2) % 2) * m + i % m

    def name(x):
        e, i = divmod(x, m)
        rot = "" if i == 0 else ("b" if i == 1 else f"b^{i}")
        return ("a" + rot) if e else (rot or "1")

    n = 2 * m
    return group_from_table([[mul(x, y) for y in range(n)] for x in range(n)], [name(x) for x in range(n)])


_UNIT = {  # unit quaternion products: (sign, unit) for unit order 1, i, j, k
    (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
    (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
    (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
    (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
}


def quaternion8() -> FiniteGroup:
    def mul(x, y):
        ux, nx = divmod(x, 2)
        uy, ny = divmod(y, 2)
        sign, u = _UNIT[(ux, uy)]
        negative = (sign < 0) ^ bool(nx) ^ bool(ny)
        return 2 * u + int(negative)

    names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
    return group_from_table([[mul(x, y) for y in range(8)] for x in range(8)], names)


def cycle_notation(perm: Sequence[int]) -> str:
    seen, parts = set(), []
    for start in range(len(perm)):
        if start in seen or perm[start] == start:
            continue
        cyc, x = [], start
        while x not in seen:
            seen.add(x)
            cyc.append(x)
            x = perm[x]
        parts.append("(" + ",".join(map(str, cyc)) + ")")
    return "".join(parts) or "()"


def symmetric_permutations(m: int) -> list:
    return list(itertools.permutations(range(m)))


def symmetric(m: int) -> FiniteGroup:
    if not 1 <= m <= SYMMETRIC_LIMIT:
        raise NotAGroup(f"symmetric groups are limited to degree {SYMMETRIC_LIMIT}")
    perms = symmetric_permutations(m)
    pos = {p: i for i, p in enumerate(perms)}
    table = [[pos[tuple(s[t[x]] for x in range(m))] for t in perms] for s in perms]
    return group_from_table(table, [cycle_notation(p) for p in perms])


def even_cycles(m: int) -> frozenset:
    """Indices in ``symmetric(m)`` of the single cycles of even length."""
    out = set()
    for idx, p in enumerate(symmetric_permutations(m)):
        moved = [x for x in range(m) if p[x] != x]
        if not moved or len(moved) % 2:
            continue
        x, length = moved[0], 0
        while True:
            x = p[x]
            length += 1
            if x == moved[0]:
                break
        if length == len(moved):
            out.add(idx)
    return frozenset(out)


def build_group(kind: str, m: Optional[int] = None, table=None, names=None) -> FiniteGroup:
    """``build_group("cyclic", 5)``, ``build_group("dihedral", 8)``, ``build_group("quaternion8")``,
    ``build_group("symmetric", 3)`` or ``build_group("table", table=..., names=...)``."""
    if kind == "cyclic":
        if m is None or not 1 <= m <= GROUP_LIMIT:
            raise NotAGroup(f"cyclic group order must be in 1..{GROUP_LIMIT}")
        return cyclic(m)
    if kind == "dihedral":
        if m is None or m > GROUP_LIMIT:
            raise NotAGroup(f"dihedral group order must be at most {GROUP_LIMIT}")
        return dihedral(m)
    if kind in ("quaternion8", "quaternion", "Q8"):
        return quaternion8()
    if kind == "symmetric":
        return symmetric(m if m is not None else 0)
    if kind in ("table", "explicit"):
        return group_from_table(table, names)
    raise NotAGroup(f"unknown group family {kind!r}")


def parse_group_spec(text: str) -> FiniteGroup:
    """Parse ``cyclic:6``, ``dihedral:8``, ``quaternion8`` or ``symmetric:3``."""
    kind, _, arg = text.partition(":")
    return build_group(kind, int(arg) if arg else None)


# ---------------------------------------------------------------------------
# connection sets


@dataclass(frozen=True)
class ConnectionSet:
    group: FiniteGroup
    S: frozenset

    def __post_init__(self):
        S = frozenset(self.group.index(x) for x in self.S)
        object.__setattr__(self, "S", S)
        if self.group.identity in S:
            raise InvalidConnectionSet("the identity must not belong to the connection set")
        if any(self.group.inv(s) not in S for s in S):
            raise InvalidConnectionSet("connection set is not closed under inverses")

    def __iter__(self):
        return iter(sorted(self.S))

    def __len__(self):
        return len(self.S)


@dataclass(frozen=True)
class ConnectionSetReport:
    inverse_closed: bool
    generates: bool
    conjugation_closed: bool
    pair_s1s2: Optional[tuple]
    pair_s1s2_and_s1s2inv: Optional[tuple]

    def as_dict(self, group: Optional[FiniteGroup] = None) -> dict:
        def named(w):
            if w is None or group is None:
                return w
            return [group.name(x) for x in w]

        return {
            "inverse_closed": self.inverse_closed,
            "generates": self.generates,
            "conjugation_closed": self.conjugation_closed,
            "pair_s1s2": named(self.pair_s1s2),
            "pair_s1s2_and_s1s2inv": named(self.pair_s1s2_and_s1s2inv),
        }


def generated_subgroup(grp: FiniteGroup, gens: Iterable[int]) -> set:
    gens = list(gens)
    seen = {grp.identity}
    frontier = [grp.identity]
    while frontier:
        x = frontier.pop()
        for s in gens:
            y = grp.mul(s, x)
            if y not in seen:
                seen.add(y)
                frontier.append(y)
    return seen


def check_connection_set(grp: FiniteGroup, S: Iterable) -> ConnectionSetReport:
    """Evaluate the conditions used by the Cayley constructions.

    Witnesses are the first qualifying ``(s1, s2)`` in element-index order.
    """
    S = frozenset(grp.index(x) for x in S)
    if grp.identity in S:
        raise InvalidConnectionSet("the identity must not belong to the connection set")
    members = sorted(S)
    conj = all(grp.mul(grp.mul(s, t), grp.inv(s)) in S for s in members for t in members)
    pair, pair_inv = None, None
    for s1, s2 in itertools.permutations(members, 2):
        if grp.mul(s1, s2) not in S:
            continue
        if pair is None:
            pair = (s1, s2)
        if pair_inv is None and grp.mul(s1, grp.inv(s2)) in S:
            pair_inv = (s1, s2)
        if pair_inv is not None:
            break
    return ConnectionSetReport(
        inverse_closed=all(grp.inv(s) in S for s in members),
        generates=len(generated_subgroup(grp, members)) == grp.order,
        conjugation_closed=conj,
        pair_s1s2=pair,
        pair_s1s2_and_s1s2inv=pair_inv,
    )


def cayley_graph(grp: FiniteGroup, S) -> Graph:
    """Cay(H, S): ``x ~ s x`` for each ``s`` in S; vertex labels are element names."""
    if not isinstance(S, ConnectionSet):
        S = ConnectionSet(grp, frozenset(S))
    edges = frozenset((x, grp.mul(s, x)) for x in range(grp.order) for s in S.S)
    return Graph(grp.order, edges, grp.names)


def left_translation(grp: FiniteGroup, s: int) -> tuple:
    """The permutation ``h -> s h``."""
    return tuple(grp.mul(s, h) for h in range(grp.order))
