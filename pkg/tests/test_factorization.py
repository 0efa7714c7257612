import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from graphca.errors import NotConnected, SizeLimitExceeded
from graphca.factorization import brute_force_factor_oracle, certify, factorize
from graphca.graph import Graph, canonical_form, circulant, complete, cycle, is_connected, path
from graphca.products import product


def multiset(factors):
    return sorted(canonical_form(f) for f in factors)


def petersen():
    return Graph(
        10,
        frozenset(
            [(i, (i + 1) % 5) for i in range(5)]
            + [(i, i + 5) for i in range(5)]
            + [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
        ),
    )


@pytest.mark.parametrize("g", [cycle(5), cycle(6), cycle(7), complete(4), path(4), petersen()])
def test_primes_return_themselves(g):
    fz = factorize(g)
    assert fz.k == 1
    assert canonical_form(fz.factors[0]) == canonical_form(g)


def test_hypercube():
    q3 = product("cartesian", [complete(2)] * 3).graph
    fz = factorize(q3)
    assert fz.sizes == (2, 2, 2)


def test_rook_graph_scrambled():
    g = product("cartesian", [complete(3), cycle(4)]).graph
    perm = list(range(12))
    random.Random(3).shuffle(perm)
    fz = factorize(g.relabel(perm))
    # C4 is itself K2 x K2
    assert fz.sizes == (3, 2, 2)
    assert multiset(fz.factors) == multiset([complete(3), complete(2), complete(2)])


def test_coords_certify():
    g = product("cartesian", [path(3), cycle(5), complete(2)]).graph
    fz = factorize(g)
    assert certify(g, fz.factors, fz.coords)
    assert len(set(fz.coords)) == g.vertex_count


def test_factors_sorted_largest_first():
    fz = factorize(product("cartesian", [complete(2), cycle(5), path(3)]).graph)
    assert fz.sizes == (5, 3, 2)


def test_c6_is_prime_but_k2_box_k3_is_not():
    assert factorize(cycle(6)).k == 1
    assert factorize(product("cartesian", [complete(2), complete(3)]).graph).k == 2


def test_k1():
    fz = factorize(Graph(1))
    assert fz.sizes == (1,)


def test_disconnected():
    with pytest.raises(NotConnected):
        factorize(Graph(4, frozenset({(0, 1), (2, 3)})))
    with pytest.raises(NotConnected):
        factorize(Graph(0))


def test_oracle_limit():
    with pytest.raises(SizeLimitExceeded):
        brute_force_factor_oracle(cycle(13))


def test_oracle_on_k2_box_c4():
    fz = brute_force_factor_oracle(product("cartesian", [complete(2), cycle(4)]).graph)
    assert fz.sizes == (2, 2, 2)


@st.composite
def small_products(draw):
    pool = [complete(2), complete(3), path(3), path(4), cycle(4), cycle(5), circulant(6, {1, 2, 4, 5})]
    fs = draw(st.lists(st.sampled_from(pool), min_size=1, max_size=3))
    g = fs[0] if len(fs) == 1 else product("cartesian", fs).graph
    perm = draw(st.permutations(range(g.vertex_count)))
    return fs, g.relabel(perm)


@given(small_products())
@settings(max_examples=60, deadline=None)
def test_recovers_factor_multiset(case):
    fs, g = case
    fz = factorize(g)
    assert certify(g, fz.factors, fz.coords)
    # every listed factor is itself a product of primes; compare against the primes of each
    want = sorted(itertools.chain.from_iterable(multiset(factorize(f).factors) for f in fs))
    assert multiset(fz.factors) == want


@given(st.integers(0, 10**6), st.integers(4, 10))
@settings(max_examples=60, deadline=None)
def test_agrees_with_oracle_on_random_graphs(seed, n):
    rng = random.Random(seed)
    edges = {(u, v) for u, v in itertools.combinations(range(n), 2) if rng.random() < 0.35}
    g = Graph(n, frozenset(edges))
    if not is_connected(g):
        return
    assert multiset(factorize(g).factors) == multiset(brute_force_factor_oracle(g).factors)
