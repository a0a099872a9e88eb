import itertools

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from src.core.cache_manager import clear_cache
from src.graphs.graph import Graph

PROPERTY_SETTINGS = settings(
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run long exhaustive searches")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture(autouse=True)
def fresh_cache():
    clear_cache()
    yield
    clear_cache()


@st.composite
def graphs(draw, min_n: int = 1, max_n: int = 9) -> Graph:
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    pairs = list(itertools.combinations(range(n), 2))
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, (pair for pair, keep in zip(pairs, mask) if keep))


@st.composite
def relabeled(draw, min_n: int = 1, max_n: int = 9):
    graph = draw(graphs(min_n, max_n))
    perm = draw(st.permutations(list(range(graph.n))))
    return graph, graph.relabel(perm)
