import logging
import math

import pytest
from hypothesis import given, settings, strategies as st

from graphca.approx import approx_ca, ceil_log, ratio_bound, ratio_certificate
from graphca.ca import verify_ca
from graphca.errors import InvalidAlphabet, NotConnected
from graphca.graph import Graph, complete, cycle, edgeless, path
from graphca.products import product


def box(*fs):
    return product("cartesian", list(fs)).graph


def test_ceil_log_exact():
    assert ceil_log(3, 9) == 2
    assert ceil_log(3, 10) == 3
    assert ceil_log(3, 1) == 0
    assert ceil_log(3, 3, 4) == 0  # below 1 clamps to 0
    assert ceil_log(2, 12, 2) == 3


@given(st.integers(2, 8), st.integers(1, 5000), st.integers(1, 64))
@settings(max_examples=100, deadline=None)
def test_ceil_log_against_float(s, num, den):
    x = num / den
    want = max(0, math.ceil(math.log(x, s) - 1e-12)) if x > 1 else 0
    # floats are only trusted away from exact powers
    if abs(math.log(x, s) - round(math.log(x, s))) > 1e-9:
        assert ceil_log(s, num, den) == want


def test_ratio_bound():
    # C4 x K3 = K2 x K2 x K3: V = 12, k = 3, s = 3 -> ceil(log_3 3) = 1
    assert ratio_bound(3, 12, 3) == 1


def test_c4_box_k3_meets_lower_bound():
    res = approx_ca(box(cycle(4), complete(3)), 2)
    assert (res.s, res.v1, res.k, res.u) == (3, 3, 3, 1)
    assert res.ca.cols == 4
    cert = ratio_certificate(res)
    assert cert["tight"] and cert["within_bound"] and cert["factor_rows_pairwise_qi"]


@pytest.mark.parametrize("g", [2, 3, 4, 6])
@pytest.mark.parametrize(
    "G", [box(complete(5), complete(2)), box(path(3), cycle(5)), box(complete(2), complete(2), complete(3))]
)
def test_valid_and_within_bound(G, g):
    res = approx_ca(G, g)
    assert verify_ca(res.ca).ok
    assert res.ca.cols == res.u * g * g
    assert res.s**res.u >= res.v1 and (res.u == 1 or res.s ** (res.u - 1) < res.v1)
    assert res.u <= res.ratio_bound


def test_prime_graph_warns(caplog):
    with caplog.at_level(logging.WARNING):
        res = approx_ca(cycle(7), 2)
    assert res.k == 1 and res.warnings
    assert "prime" in caplog.text
    assert verify_ca(res.ca).ok


def test_rejects():
    with pytest.raises(InvalidAlphabet):
        approx_ca(cycle(4), 1)
    with pytest.raises(NotConnected):
        approx_ca(Graph(4, frozenset({(0, 1), (2, 3)})), 2)
    with pytest.raises(NotConnected):
        approx_ca(edgeless(1), 2)


def test_as_dict():
    d = approx_ca(box(complete(5), complete(2)), 2).as_dict()
    assert d["factor_sizes"] == [5, 2] and d["size"] == 8 and d["ratio_bound"] == 2
