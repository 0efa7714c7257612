import itertools

import pytest
from hypothesis import strategies as st

from graphca.graph import Graph


@st.composite
def graphs(draw, min_vertices=1, max_vertices=7):
    n = draw(st.integers(min_vertices, max_vertices))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph(n, frozenset(chosen))


@pytest.fixture
def criterion(request):
    """Record one acceptance line: ``criterion(number, ok, detail)`` then assert."""
    results = request.config.stash.setdefault(_RESULTS, {})

    def record(number, ok, detail=""):
        prev = results.get(number, (True, ""))
        results[number] = (prev[0] and ok, detail or prev[1])
        assert ok, f"criterion {number}: {detail}"

    return record


_RESULTS = pytest.StashKey[dict]()


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    results = config.stash.get(_RESULTS, None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        ok, detail = results[number]
        terminalreporter.write_line(f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}")
