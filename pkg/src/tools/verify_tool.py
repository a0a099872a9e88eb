"""
Saturation verification tool with certificate output
"""

import asyncio
import logging
import re
import time
from pathlib import Path
from typing import Any, Dict, Optional

from src.analysis.pattern import MultipartitePattern
from src.analysis.saturation import ContainsPattern, MissingEdgeFails, Saturated, check_saturated, write_certificate
from src.graphs.graph6 import emit_graph6
from src.tools.inputs import resolve_graph
from src.utils.utils import error_payload, safe_json_response

logger = logging.getLogger(__name__)


def _certificate_name(label: str, pattern: MultipartitePattern) -> str:
    stem = re.sub(r"[^A-Za-z0-9]+", "-", f"{label}_{pattern}").strip("-")
    return f"{stem}.cert"


def verify(
    g6: Optional[str] = None,
    construction: Optional[str] = None,
    pattern: str = "3,3",
    threads: int = 1,
    certificate_dir: Optional[Path] = None,
) -> Dict[str, Any]:
    """
    Decide whether a graph is saturated for a complete multipartite pattern.

    Args:
        g6: Graph in graph6 format (exclusive with ``construction``)
        construction: Construction name such as "gn:12" or "small:9"
        pattern: Part sizes, e.g. "3,3"
        threads: Worker processes for the per-non-edge checks
        certificate_dir: Where to write the certificate of a saturated graph (None: skip)

    Returns:
        Payload with the verdict, a witness or failing edge, and the certificate path
    """
    start_time = time.time()

    try:
        target = MultipartitePattern.parse(pattern)
        graph, label = resolve_graph(g6, construction)
        logger.info(f"Verifying {label} against {target.label}")

        verdict = check_saturated(graph, target, threads=threads)
        payload: Dict[str, Any] = {
            "source": label,
            "graph6": emit_graph6(graph),
            "n": graph.n,
            "edges": graph.edge_count,
            "pattern": str(target),
            "verdict": verdict.kind,
            "saturated": verdict.is_saturated,
            "witness": None,
            "edge": None,
            "certificate_path": None,
        }

        if isinstance(verdict, Saturated):
            payload["certificate_entries"] = len(verdict.certificate)
            if certificate_dir is not None:
                path = Path(certificate_dir) / _certificate_name(label, target)
                payload["certificate_path"] = str(write_certificate(path, graph, target, verdict))
            payload["message"] = f"saturated, {graph.edge_count} edges"
        elif isinstance(verdict, ContainsPattern):
            payload["witness"] = verdict.witness.to_lists()
            payload["message"] = f"contains {target.label}: {verdict.witness.format()}"
        elif isinstance(verdict, MissingEdgeFails):
            payload["edge"] = list(verdict.edge)
            u, v = verdict.edge
            payload["message"] = f"not saturated: adding {u} {v} creates no {target.label}"

        logger.info(f"Verification finished in {time.time() - start_time:.2f}s: {payload['message']}")
        return payload

    except ValueError as e:
        logger.warning(f"Input validation failed: {e}")
        return error_payload("Invalid input", str(e), "validation_error")

    except Exception as e:
        logger.error(f"Unexpected error during verification: {e}", exc_info=True)
        return error_payload("Internal error", str(e), "internal_error")


async def verify_saturation(g6: Optional[str] = None, construction: Optional[str] = None,
                            pattern: str = "3,3", threads: int = 1) -> str:
    """JSON text variant of :func:`verify` for the server; never writes certificates."""
    payload = await asyncio.to_thread(verify, g6, construction, pattern, threads, None)
    return safe_json_response(payload)
