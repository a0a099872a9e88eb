"""
Explicit saturated graphs: the 3n-9 family, clique-saturated joins, the
edge-join-cycle graphs and the cached small K_{3,3}-saturated witnesses.

Vertex v_i of a construction is index i-1 unless the builder says otherwise.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Dict, List, Optional

from src.analysis.pattern import K33
from src.analysis.saturation import is_saturated
from src.core.cache_manager import get_cache_key, get_cached, set_cache
from src.core.config import MAX_VERTICES, WITNESS_CACHE_PATH
from src.graphs.graph import (
    Graph,
    complete_graph,
    cycle_graph,
    disjoint_union,
    empty_graph,
    join,
)
from src.graphs.graph6 import parse_graph6
from src.utils.utils import WitnessCacheError, sanitize_input

logger = logging.getLogger(__name__)

SMALL_WITNESS_RANGE = range(6, 12)
GN_MIN_N = 12
EDGE_JOIN_CYCLE_MIN_N = 7


@dataclass(frozen=True)
class LabeledConstruction:
    name: str
    graph: Graph
    labels: Dict[str, int]
    claimed_edges: int

    def __post_init__(self) -> None:
        if self.graph.edge_count != self.claimed_edges:
            msg = f"{self.name}: built {self.graph.edge_count} edges, claimed {self.claimed_edges}"
            logger.error(msg)
            raise ValueError(msg)
        if sorted(self.labels.values()) != list(range(self.graph.n)):
            msg = f"{self.name}: labels are not a bijection onto 0..{self.graph.n - 1}"
            logger.error(msg)
            raise ValueError(msg)

    @property
    def n(self) -> int:
        return self.graph.n

    def vertex(self, label: str) -> int:
        return self.labels[label]


def _v_labels(n: int) -> Dict[str, int]:
    return {f"v{i + 1}": i for i in range(n)}


def _check_range(family: str, n: int, minimum: int) -> None:
    if not isinstance(n, int) or n < minimum or n > MAX_VERTICES:
        logger.error(f"{family} needs {minimum} <= n <= {MAX_VERTICES}, got {n}")
        raise ValueError(f"{family} needs {minimum} <= n <= {MAX_VERTICES}, got {n}")


def join_with_independent_pair(graph: Graph) -> Graph:
    """K̄_2 joined to ``graph``; the pair becomes vertices 0 and 1."""
    return join(empty_graph(2), graph)


def _append_vertices(graph: Graph, count: int) -> Graph:
    return disjoint_union(graph, empty_graph(count))


def gn(n: int) -> LabeledConstruction:
    """K_{3,3}-saturated graph with 3n-9 edges.

    K̄_2 = {v1, v2} joined to C_4 (v3..v6), C_{n-9} (v7..v_{n-3}) and K_1
    (v_{n-2}); then v_{n-1} is joined to v3, v5 and v_n to v4, v6.
    """
    if isinstance(n, int) and SMALL_WITNESS_RANGE.start <= n < GN_MIN_N:
        logger.error(f"gn needs n >= {GN_MIN_N}, got {n}; use small:{n} for the cached witness")
        raise ValueError(f"gn needs n >= {GN_MIN_N}, got {n}; use small:{n} for the cached witness")
    _check_range("gn", n, GN_MIN_N)

    inner = disjoint_union(disjoint_union(cycle_graph(4), cycle_graph(n - 9)), empty_graph(1))
    graph = _append_vertices(join_with_independent_pair(inner), 2)
    for u, v in ((n - 2, 2), (n - 2, 4), (n - 1, 3), (n - 1, 5)):
        graph = graph.add_edge(u, v)
    return LabeledConstruction(f"gn:{n}", graph, _v_labels(n), 3 * n - 9)


def ehm(n: int, k: int) -> LabeledConstruction:
    """K_{k-1} joined to an independent set of n-k+1 vertices: K_{k+1}-saturated."""
    if not isinstance(k, int) or k < 2:
        logger.error(f"ehm needs k >= 2, got {k}")
        raise ValueError(f"ehm needs k >= 2, got {k}")
    _check_range("ehm", n, k + 1)

    graph = join(complete_graph(k - 1), empty_graph(n - k + 1))
    labels = {f"c{i + 1}": i for i in range(k - 1)}
    labels.update({f"u{i + 1}": k - 1 + i for i in range(n - k + 1)})
    return LabeledConstruction(f"ehm:{n},{k}", graph, labels, (k - 1) * n - math.comb(k, 2))


def edge_join_cycle(n: int) -> LabeledConstruction:
    """K_2 joined to C_{n-2}; x, y are the edge, w1.. the cycle. Has 3n-5 edges."""
    _check_range("edge-join-cycle", n, EDGE_JOIN_CYCLE_MIN_N)
    graph = join(complete_graph(2), cycle_graph(n - 2))
    labels = {"x": 0, "y": 1}
    labels.update({f"w{i + 1}": i + 2 for i in range(n - 2)})
    return LabeledConstruction(f"edge-join-cycle:{n}", graph, labels, 3 * n - 5)


def _expected_small_edges(n: int) -> int:
    return 2 * n if n <= 8 else 3 * n - 9


def _read_witness_file(path: Path) -> Dict[int, List[str]]:
    if not path.is_file():
        logger.error(f"Witness cache not found at {path}")
        raise WitnessCacheError(f"Witness cache not found at {path}")
    records: Dict[int, List[str]] = {}
    for number, line in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if len(fields) != 3 or not fields[0].isdigit() or not fields[2].isdigit():
            logger.error(f"{path}:{number}: expected 'n <graph6> <edges>', got '{line}'")
            raise WitnessCacheError(f"{path}:{number}: expected 'n <graph6> <edges>', got '{line}'")
        records[int(fields[0])] = fields
    return records


def small_witness(n: int, path: Optional[Path] = None) -> LabeledConstruction:
    """Cached K_{3,3}-saturated witness for 6 <= n <= 11, re-verified on first load."""
    if n not in SMALL_WITNESS_RANGE:
        logger.error(f"Small witnesses exist for 6 <= n <= 11, got {n}")
        raise ValueError(f"Small witnesses exist for 6 <= n <= 11, got {n}")

    source = Path(path) if path is not None else WITNESS_CACHE_PATH
    cache_key = get_cache_key("small_witness", str(source), n)
    cached = get_cached(cache_key)
    if cached is not None:
        return cached

    records = _read_witness_file(source)
    if n not in records:
        logger.error(f"Witness cache {source} has no entry for n={n}")
        raise WitnessCacheError(f"Witness cache {source} has no entry for n={n}")
    _, g6, edges = records[n]

    try:
        graph = parse_graph6(g6)
    except ValueError as e:
        raise WitnessCacheError(f"Witness for n={n} is not valid graph6: {e}") from e

    expected = _expected_small_edges(n)
    if graph.n != n or graph.edge_count != int(edges) or int(edges) != expected:
        msg = f"Witness for n={n} has n={graph.n}, e={graph.edge_count}; expected e={expected}"
        logger.error(msg)
        raise WitnessCacheError(msg)
    if not is_saturated(graph, K33):
        logger.error(f"Cached witness for n={n} is not K_{{3,3}}-saturated")
        raise WitnessCacheError(f"Cached witness for n={n} is not K_{{3,3}}-saturated")

    construction = LabeledConstruction(f"small:{n}", graph, _v_labels(n), expected)
    set_cache(cache_key, construction)
    logger.debug(f"Loaded and verified small witness n={n} from {source}")
    return construction


def _parse_ints(family: str, text: str, count: int) -> List[int]:
    try:
        values = [int(part) for part in text.split(",")]
    except ValueError:
        logger.error(f"{family} expects {count} integer argument(s), got '{text}'")
        raise ValueError(f"{family} expects {count} integer argument(s), got '{text}'")
    if len(values) != count:
        logger.error(f"{family} expects {count} integer argument(s), got '{text}'")
        raise ValueError(f"{family} expects {count} integer argument(s), got '{text}'")
    return values


_FAMILIES: Dict[str, Callable[[str], LabeledConstruction]] = {
    "gn": lambda args: gn(*_parse_ints("gn", args, 1)),
    "ehm": lambda args: ehm(*_parse_ints("ehm", args, 2)),
    "edge-join-cycle": lambda args: edge_join_cycle(*_parse_ints("edge-join-cycle", args, 1)),
    "small": lambda args: small_witness(*_parse_ints("small", args, 1)),
}

CONSTRUCTION_NAMES = ("gn:N", "ehm:N,K", "edge-join-cycle:N", "small:N")


def construct(name: str) -> LabeledConstruction:
    """Build a construction from its textual name, e.g. ``gn:12`` or ``ehm:10,4``."""
    cleaned = sanitize_input(name or "").lower()
    family, sep, args = cleaned.partition(":")
    if not sep or family not in _FAMILIES:
        logger.error(f"Unknown construction '{name}', expected one of {', '.join(CONSTRUCTION_NAMES)}")
        raise ValueError(f"Unknown construction '{name}', expected one of {', '.join(CONSTRUCTION_NAMES)}")
    return _FAMILIES[family](args)
