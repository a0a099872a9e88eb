"""
Full analyzer report: partition, ledgers, identities and the saturation audits.
"""

import logging
from typing import Any, Dict, Optional

from src.analysis.audit import audit_prop31
from src.analysis.discharging import (
    build_partition,
    charge_bound_report,
    charge_summary,
    minimum_degree_vertices,
    prop32_check,
    resolve_root,
    tiebreak_vertices,
)
from src.analysis.pattern import K33
from src.analysis.saturation import is_saturated
from src.graphs.graph import Graph
from src.graphs.graph6 import emit_graph6

logger = logging.getLogger(__name__)


def analysis_report(graph: Graph, a: Optional[int] = None) -> Dict[str, Any]:
    """Everything the analyzer knows about ``graph`` rooted at ``a``.

    The saturation-dependent sections are None when the graph is not
    K_{3,3}-saturated; the identities are reported either way.
    """
    root = resolve_root(graph, a)
    partition = build_partition(graph, root)
    saturated = is_saturated(graph, K33)
    logger.info(f"Analyzing n={graph.n}, e={graph.edge_count} around a={root} (saturated={saturated})")

    report: Dict[str, Any] = {
        "graph6": emit_graph6(graph),
        "n": graph.n,
        "edges": graph.edge_count,
        "min_degree": graph.min_degree,
        "minimum_degree_vertices": minimum_degree_vertices(graph),
        "tiebreak_vertices": tiebreak_vertices(graph),
        "saturated": saturated,
        "partition": partition.to_dict(),
        **charge_summary(graph, partition),
        "prop31": None,
        "prop32": None,
        "charge_bound": None,
    }
    if saturated:
        report["prop31"] = audit_prop31(graph, root).to_dict()
        report["prop32"] = prop32_check(graph, partition).to_dict()
        report["charge_bound"] = charge_bound_report(graph, partition)
    return report
