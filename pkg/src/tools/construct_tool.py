"""
Construction builder tool
"""

import asyncio
import logging
from typing import Any, Dict

from src.analysis.pattern import K33, MultipartitePattern
from src.analysis.saturation import is_saturated
from src.graphs.constructions import LabeledConstruction, construct
from src.graphs.graph6 import emit_graph6
from src.utils.utils import error_payload, safe_json_response

logger = logging.getLogger(__name__)


def target_pattern(construction: LabeledConstruction) -> MultipartitePattern:
    """Pattern a construction is built to saturate."""
    if construction.name.startswith("ehm:"):
        k = int(construction.name.split(",")[1])
        return MultipartitePattern.clique(k + 1)
    return K33


def build(name: str, verify: bool = False) -> Dict[str, Any]:
    """
    Build a named construction.

    Args:
        name: "gn:N", "ehm:N,K", "edge-join-cycle:N" or "small:N"
        verify: Also check saturation against the construction's target pattern

    Returns:
        Payload with graph6, edge counts and the vertex label map
    """
    try:
        built = construct(name)
        payload: Dict[str, Any] = {
            "name": built.name,
            "n": built.n,
            "edges": built.graph.edge_count,
            "claimed_edges": built.claimed_edges,
            "graph6": emit_graph6(built.graph),
            "labels": built.labels,
            "pattern": str(target_pattern(built)),
            "saturated": None,
        }
        if verify:
            payload["saturated"] = is_saturated(built.graph, target_pattern(built))
        return payload

    except ValueError as e:
        logger.warning(f"Input validation failed: {e}")
        return error_payload("Invalid input", str(e), "validation_error")

    except Exception as e:
        logger.error(f"Unexpected error building '{name}': {e}", exc_info=True)
        return error_payload("Internal error", str(e), "internal_error")


async def build_construction(name: str, verify: bool = True) -> str:
    payload = await asyncio.to_thread(build, name, verify)
    return safe_json_response(payload)
