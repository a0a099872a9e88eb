"""
Graph input resolution shared by the tools
"""

import logging
from typing import Optional, Tuple

from src.graphs.constructions import construct
from src.graphs.graph import Graph
from src.graphs.graph6 import parse_graph6
from src.utils.utils import sanitize_input

logger = logging.getLogger(__name__)


def resolve_graph(g6: Optional[str] = None, construction: Optional[str] = None) -> Tuple[Graph, str]:
    """Graph and a display label from exactly one of a graph6 string or a construction name."""
    if (g6 is None) == (construction is None):
        logger.error("Provide exactly one of a graph6 string or a construction name")
        raise ValueError("Provide exactly one of a graph6 string or a construction name")

    if construction is not None:
        built = construct(construction)
        return built.graph, built.name

    graph = parse_graph6(sanitize_input(g6))
    return graph, f"graph6:n{graph.n}e{graph.edge_count}"
