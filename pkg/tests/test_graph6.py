import networkx as nx
import pytest
from hypothesis import given

from conftest import PROPERTY_SETTINGS, graphs
from src.graphs.graph import Graph, complete_graph, empty_graph
from src.graphs.graph6 import emit_graph6, parse_graph6, parse_graph6_lines


def test_known_strings():
    assert emit_graph6(complete_graph(6)) == "E~~w"
    assert emit_graph6(empty_graph(1)) == "@"
    assert emit_graph6(empty_graph(2)) == "A?"
    assert emit_graph6(Graph.from_edges(2, [(0, 1)])) == "A_"


@PROPERTY_SETTINGS
@given(graphs(max_n=12))
def test_emit_matches_networkx(graph):
    expected = nx.to_graph6_bytes(graph.to_networkx(), header=False).decode("ascii").strip()
    assert emit_graph6(graph) == expected


@PROPERTY_SETTINGS
@given(graphs(max_n=12))
def test_parse_matches_networkx(graph):
    text = nx.to_graph6_bytes(graph.to_networkx(), header=False).strip()
    parsed = parse_graph6(text.decode("ascii"))
    assert parsed == graph
    assert {tuple(sorted(e)) for e in nx.from_graph6_bytes(text).edges()} == set(graph.edges())


def test_header_is_accepted():
    assert parse_graph6(">>graph6<<E~~w") == complete_graph(6)


@pytest.mark.parametrize("text", ["", "@@@", "E~~", "E~~x", "E~~w~", "E\x7f~w", "~??"])
def test_malformed_strings_raise(text):
    with pytest.raises(ValueError):
        parse_graph6(text)


def test_parse_lines_skips_blanks():
    graphs_read = parse_graph6_lines("E~~w\n\n@\n")
    assert [g.n for g in graphs_read] == [6, 1]
