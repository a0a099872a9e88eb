"""
Partition and charge analysis tool
"""

import asyncio
import logging
from typing import Any, Dict, Optional

from src.analysis.report import analysis_report
from src.tools.inputs import resolve_graph
from src.utils.utils import error_payload, safe_json_response

logger = logging.getLogger(__name__)


def analyze(g6: Optional[str] = None, construction: Optional[str] = None,
            vertex: Optional[int] = None) -> Dict[str, Any]:
    """
    Minimum-degree partition, charge ledgers, edge identities and audits.

    Args:
        g6: Graph in graph6 format (exclusive with ``construction``)
        construction: Construction name such as "gn:12"
        vertex: Root vertex a of minimum degree; None picks the tie-break vertex

    Returns:
        Analyzer report; "identities_hold" is False only if the bookkeeping is broken
    """
    try:
        graph, label = resolve_graph(g6, construction)
        logger.info(f"Analyzing {label}")
        report = analysis_report(graph, vertex)
        report["source"] = label
        return report

    except ValueError as e:
        logger.warning(f"Input validation failed: {e}")
        return error_payload("Invalid input", str(e), "validation_error")

    except Exception as e:
        logger.error(f"Unexpected error during analysis: {e}", exc_info=True)
        return error_payload("Internal error", str(e), "internal_error")


async def analyze_partition(g6: Optional[str] = None, construction: Optional[str] = None,
                            vertex: Optional[int] = None) -> str:
    payload = await asyncio.to_thread(analyze, g6, construction, vertex)
    return safe_json_response(payload)
