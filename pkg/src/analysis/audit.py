"""
Structural audit of a K_{3,3}-saturated graph around a minimum-degree vertex.

Three families of facts are checked independently of the saturation witnesses:

  (i)   every non-edge xy has disjoint pairs X in N(x), Y in N(y) with X ~ Y;
  (ii)  no x outside V1 has three common neighbours with two vertices of N(a);
  (iii) V4 vertices see exactly two common neighbours of some a_i, a_j, V3
        vertices see V2, and when G[V1 - a] has no K_{1,2} every vertex outside
        V1 has two V2 neighbours and |V2| >= 3.
"""

import logging
from dataclasses import asdict, dataclass, field
from itertools import combinations
from typing import Any, Dict, List, Optional, Tuple

from src.analysis.discharging import build_partition
from src.analysis.pattern import K33
from src.analysis.saturation import is_saturated
from src.graphs.graph import Graph, iter_bits
from src.utils.utils import NotSaturatedError

logger = logging.getLogger(__name__)


@dataclass
class Prop31Report:
    a: int
    missing_k22: List[Tuple[int, int]] = field(default_factory=list)
    crowded_triples: List[Tuple[int, int, int]] = field(default_factory=list)
    v4_without_pair: List[int] = field(default_factory=list)
    v3_without_v2: List[int] = field(default_factory=list)
    k12_free: bool = False
    thin_v2_neighborhoods: List[int] = field(default_factory=list)
    v2_too_small: bool = False

    @property
    def passed(self) -> bool:
        return not (
            self.missing_k22
            or self.crowded_triples
            or self.v4_without_pair
            or self.v3_without_v2
            or self.thin_v2_neighborhoods
            or self.v2_too_small
        )

    def to_dict(self) -> Dict[str, Any]:
        report = asdict(self)
        report["passed"] = self.passed
        return report


def k22_between(graph: Graph, x: int, y: int) -> Optional[Tuple[Tuple[int, int], Tuple[int, int]]]:
    """Disjoint pairs X in N(x) - y and Y in N(y) - x with every X-Y pair an edge."""
    adj = graph.adj
    left = adj[x] & ~(1 << y)
    right = adj[y] & ~(1 << x)
    for x1, x2 in combinations(iter_bits(left), 2):
        common = adj[x1] & adj[x2] & right
        if common.bit_count() >= 2:
            y1, y2 = list(iter_bits(common))[:2]
            return (x1, x2), (y1, y2)
    return None


def audit_prop31(graph: Graph, a: int) -> Prop31Report:
    if not is_saturated(graph, K33):
        logger.error(f"Graph with n={graph.n}, e={graph.edge_count} is not K_{{3,3}}-saturated")
        raise NotSaturatedError(f"Graph with n={graph.n}, e={graph.edge_count} is not K_{{3,3}}-saturated")

    partition = build_partition(graph, a)
    adj = graph.adj
    report = Prop31Report(a=a)

    for x, y in graph.non_edges():
        if k22_between(graph, x, y) is None:
            report.missing_k22.append((x, y))

    a_list = partition.a_list
    pair_commons = {
        (i, j): adj[a_list[i - 1]] & adj[a_list[j - 1]]
        for i, j in combinations(range(1, len(a_list) + 1), 2)
    }
    outside = [x for x in range(graph.n) if x not in partition.V1]
    for x in outside:
        for (i, j), common in pair_commons.items():
            if (adj[x] & common).bit_count() > 2:
                report.crowded_triples.append((x, i, j))

    for x in partition.V4:
        if not any((adj[x] & common).bit_count() == 2 for common in pair_commons.values()):
            report.v4_without_pair.append(x)

    v2 = partition.V2.bits
    for x in partition.V3:
        if not adj[x] & v2:
            report.v3_without_v2.append(x)

    rest = partition.V1.bits & ~(1 << a)
    report.k12_free = all((adj[v] & rest).bit_count() <= 1 for v in iter_bits(rest))
    if report.k12_free and outside:
        report.thin_v2_neighborhoods = [x for x in outside if (adj[x] & v2).bit_count() < 2]
        report.v2_too_small = len(partition.V2) < 3

    if not report.passed:
        logger.warning(f"Structural audit around a={a} found violations: {report.to_dict()}")
    return report
