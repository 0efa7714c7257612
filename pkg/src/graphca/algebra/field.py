"""Finite fields GF(p^n) with elements encoded as integers 0..q-1.

The integer ``a`` stands for the polynomial whose coefficient of ``x^i`` is
the ``i``-th base-``p`` digit of ``a``; so in GF(4), ``2`` is ``x`` and ``3``
is ``x + 1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from graphca.errors import NotPrimePower

FIELD_LIMIT = 1024


def prime_factors(n: int) -> dict:
    """``{p: exponent}`` by trial division."""
    out, d = {}, 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def prime_power(q: int) -> tuple:
    """``(p, n)`` with ``q == p**n``, or raise NotPrimePower."""
    if not isinstance(q, (int, np.integer)) or q < 2:
        raise NotPrimePower(f"{q!r} is not a prime power")
    f = prime_factors(int(q))
    if len(f) != 1:
        raise NotPrimePower(f"{q} is not a prime power")
    ((p, n),) = f.items()
    return p, n


def is_prime_power(q: int) -> bool:
    try:
        prime_power(q)
    except NotPrimePower:
        return False
    return True


# polynomials over Z_p as coefficient lists, lowest degree first


def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _polymod(a, m, p):
    a = list(a)
    inv_lead = pow(m[-1], p - 2, p)
    while len(_trim(a)) >= len(m):
        shift = len(a) - len(m)
        c = a[-1] * inv_lead % p
        for i, mc in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mc) % p
    return a


def _monic(degree, tail, p):
    """Monic polynomial of ``degree`` whose lower coefficients are the digits of ``tail``."""
    coeffs = []
    for _ in range(degree):
        coeffs.append(tail % p)
        tail //= p
    return coeffs + [1]


def is_irreducible(poly, p: int) -> bool:
    """Exhaustive check: no monic factor of degree 1..deg//2."""
    deg = len(poly) - 1
    for d in range(1, deg // 2 + 1):
        for tail in range(p**d):
            if not _polymod(poly, _monic(d, tail, p), p):
                return False
    return True


def smallest_irreducible(p: int, n: int) -> tuple:
    """Monic irreducible of degree ``n`` with the least value of ``poly(p)``."""
    for tail in range(p**n):
        poly = _monic(n, tail, p)
        if is_irreducible(poly, p):
            return tuple(poly)
    raise AssertionError("an irreducible polynomial exists for every degree")


@dataclass(frozen=True)
class FiniteField:
    p: int
    n: int
    reduction_polynomial: tuple
    add_table: np.ndarray = field(repr=False, compare=False)
    mul_table: np.ndarray = field(repr=False, compare=False)

    @property
    def q(self) -> int:
        return self.p**self.n

    @property
    def order(self) -> int:
        return self.q

    def add(self, a: int, b: int) -> int:
        return int(self.add_table[a, b])

    def mul(self, a: int, b: int) -> int:
        return int(self.mul_table[a, b])

    def neg(self, a: int) -> int:
        return int(np.flatnonzero(self.add_table[a] == 0)[0])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return int(np.flatnonzero(self.mul_table[a] == 1)[0])

    def poly(self, a: int) -> list:
        """Coefficient list (lowest degree first) encoded by element ``a``."""
        return [(a // self.p**i) % self.p for i in range(self.n)]


def _encode(coeffs, p):
    return sum(int(c) * p**i for i, c in enumerate(coeffs))


def _scalar_mul(a, b, p, n, modulus):
    pa = [(a // p**i) % p for i in range(n)]
    pb = [(b // p**i) % p for i in range(n)]
    prod = [0] * (2 * n - 1)
    for i, x in enumerate(pa):
        if x:
            for j, y in enumerate(pb):
                prod[i + j] = (prod[i + j] + x * y) % p
    return _encode(_polymod(prod, modulus, p), p)


@lru_cache(maxsize=None)
def build_field(q: int) -> FiniteField:
    """GF(q) for a prime power ``q <= 1024``."""
    p, n = prime_power(q)
    if q > FIELD_LIMIT:
        raise NotPrimePower(f"fields are limited to order {FIELD_LIMIT}")
    elems = np.arange(q)
    if n == 1:
        add = (elems[:, None] + elems[None, :]) % p
        mul = (elems[:, None] * elems[None, :]) % p
        return FiniteField(p, 1, (0, 1), _frozen(add), _frozen(mul))

    modulus = smallest_irreducible(p, n)
    weights = p ** np.arange(n)
    digits = (elems[:, None] // weights) % p
    add = (((digits[:, None, :] + digits[None, :, :]) % p) * weights).sum(axis=2)

    # discrete logarithms from a primitive element
    exp = None
    for gen in range(2, q):
        powers, x = [1], gen
        while x != 1:
            powers.append(x)
            x = _scalar_mul(x, gen, p, n, modulus)
        if len(powers) == q - 1:
            exp = np.array(powers + powers)
            break
    log = np.zeros(q, dtype=np.int64)
    log[exp[: q - 1]] = np.arange(q - 1)
    mul = exp[log[:, None] + log[None, :]]
    mul[0, :] = 0
    mul[:, 0] = 0
    return FiniteField(p, n, modulus, _frozen(add), _frozen(mul))


def _frozen(a):
    a.setflags(write=False)
    return a
