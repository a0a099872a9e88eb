import itertools

import networkx as nx
import pytest
from hypothesis import given

from conftest import PROPERTY_SETTINGS, graphs, relabeled
from src.graphs.canonical import are_isomorphic, canonical_code, canonical_form, canonical_graph, edge_orbit
from src.graphs.graph import Graph, cycle_graph, path_graph


def all_labeled_graphs(n):
    pairs = list(itertools.combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield Graph.from_edges(n, (pair for i, pair in enumerate(pairs) if mask >> i & 1))


def collapse_count(graphs_list):
    """Isomorphism classes counted with networkx only."""
    buckets = {}
    for graph in graphs_list:
        nx_graph = graph.to_networkx()
        key = nx.weisfeiler_lehman_graph_hash(nx_graph)
        reps = buckets.setdefault(key, [])
        if not any(nx.is_isomorphic(nx_graph, rep) for rep in reps):
            reps.append(nx_graph)
    return sum(len(reps) for reps in buckets.values())


@pytest.mark.parametrize("n", [3, 4, 5])
def test_code_count_matches_networkx_collapse(n):
    labeled = list(all_labeled_graphs(n))
    codes = {canonical_code(graph) for graph in labeled}
    assert len(codes) == collapse_count(labeled)


def test_class_counts_small_orders():
    assert len({canonical_code(g) for g in all_labeled_graphs(4)}) == 11
    assert len({canonical_code(g) for g in all_labeled_graphs(5)}) == 34


@PROPERTY_SETTINGS
@given(relabeled())
def test_code_is_invariant_under_relabeling(pair):
    graph, image = pair
    assert canonical_code(graph) == canonical_code(image)
    assert canonical_graph(graph) == canonical_graph(image)


@PROPERTY_SETTINGS
@given(graphs(max_n=7), graphs(max_n=7))
def test_are_isomorphic_agrees_with_networkx(first, second):
    expected = first.n == second.n and nx.is_isomorphic(first.to_networkx(), second.to_networkx())
    assert are_isomorphic(first, second) == expected


@PROPERTY_SETTINGS
@given(graphs(max_n=8))
def test_generators_are_automorphisms(graph):
    form = canonical_form(graph)
    assert form.code.exact
    for perm in form.generators:
        assert graph.relabel(perm) == graph


def test_marked_edges_distinguish_edge_orbits():
    c4 = cycle_graph(4)
    assert canonical_form(c4, [1, 1, 0, 0]).code == canonical_form(c4, [0, 1, 1, 0]).code

    p4 = path_graph(4)
    assert canonical_form(p4, [1, 1, 0, 0]).code != canonical_form(p4, [0, 1, 1, 0]).code


def test_edge_orbit_stays_inside_edge_set():
    c6 = cycle_graph(6)
    form = canonical_form(c6)
    orbit = edge_orbit((0, 1), form.generators)
    assert (0, 1) in orbit
    assert orbit <= set(c6.edges())


def test_colour_count_must_match():
    with pytest.raises(ValueError):
        canonical_form(cycle_graph(4), [0, 1])
