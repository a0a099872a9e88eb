"""
Isomorph-free generation of pattern-free graphs by canonical edge augmentation.

Every graph is reached from the empty graph by adding edges. A child G+e is
kept only when e lies in the automorphism orbit of the child's designated edge
(the edge with the largest canonical labels), so each isomorphism class with at
most ``edge_cap`` edges is visited exactly once. Siblings are tried once per
orbit of the parent's known automorphisms and deduplicated by canonical code,
so an incomplete generator set costs time but never correctness.
"""

from __future__ import annotations

import logging
import time
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, Iterator, List, Optional, Protocol, Set

from src.analysis.pattern import MultipartitePattern, edge_creates_copy
from src.core.budget import BudgetTracker, SearchBudget
from src.graphs.canonical import (
    CanonicalCode,
    CanonicalForm,
    canonical_form,
    edge_orbit,
    partition_shape,
    refine,
)
from src.graphs.graph import Edge, Graph, empty_graph
from src.utils.utils import BudgetExceededError

logger = logging.getLogger(__name__)

# returns a tighter edge cap, or None to keep the current one
Visitor = Callable[[Graph], Optional[int]]
Pruner = Callable[[Graph, int], bool]


class Tracker(Protocol):
    def charge(self, count: int = 1) -> None: ...


@dataclass
class EnumerationStats:
    visited: int = 0
    by_edges: Dict[int, int] = field(default_factory=Counter)
    complete: bool = True
    stop_reason: Optional[str] = None
    elapsed: float = 0.0

    def record(self, graph: Graph) -> None:
        self.visited += 1
        self.by_edges[graph.edge_count] += 1

    def to_dict(self) -> Dict[str, object]:
        return {
            "visited": self.visited,
            "by_edges": {str(e): count for e, count in sorted(self.by_edges.items())},
            "complete": self.complete,
            "stop_reason": self.stop_reason,
            "elapsed": round(self.elapsed, 3),
        }


def designated_edge(graph: Graph, form: Optional[CanonicalForm] = None) -> Edge:
    """Edge whose larger canonical label is largest, ties by the smaller label."""
    form = form or canonical_form(graph)
    labels = form.labeling
    best = max(graph.edges(), key=lambda e: (max(labels[e[0]], labels[e[1]]), min(labels[e[0]], labels[e[1]])))
    return best


def _marked(n: int, edge: Edge) -> List[int]:
    colors = [0] * n
    colors[edge[0]] = colors[edge[1]] = 1
    return colors


def _marked_shape(graph: Graph, edge: Edge) -> tuple:
    u, v = edge
    mark = 1 << u | 1 << v
    cells = refine(graph.adj, [graph.all_vertices & ~mark, mark])
    return partition_shape(graph.adj, cells)


def is_canonical_augmentation(child: Graph, edge: Edge) -> bool:
    """True iff ``edge`` is equivalent to the designated edge under Aut(child)."""
    edge = (min(edge), max(edge))
    form = canonical_form(child)
    target = designated_edge(child, form)
    if edge == target:
        return True

    index = form.cell_index()
    if sorted((index[edge[0]], index[edge[1]])) != sorted((index[target[0]], index[target[1]])):
        return False
    if target in edge_orbit(edge, form.generators):
        return True
    if _marked_shape(child, edge) != _marked_shape(child, target):
        return False
    return canonical_form(child, _marked(child.n, edge)).code == canonical_form(child, _marked(child.n, target)).code


def orbit_representatives(edges: Iterable[Edge], generators) -> Iterator[Edge]:
    """First edge of every orbit, in the order given."""
    generators = list(generators)
    seen: Set[Edge] = set()
    for edge in edges:
        if edge in seen:
            continue
        seen |= edge_orbit(edge, generators)
        yield edge


def augmentations(parent: Graph, pattern: MultipartitePattern) -> Iterator[Graph]:
    """Pattern-free canonical children of a pattern-free ``parent``."""
    form = canonical_form(parent)
    seen: Set[CanonicalCode] = set()
    for u, v in orbit_representatives(parent.non_edges(), form.generators):
        child = parent.add_edge(u, v)
        if edge_creates_copy(child, pattern, u, v):
            continue
        if not is_canonical_augmentation(child, (u, v)):
            continue
        code = canonical_form(child).code
        if code in seen:
            continue
        seen.add(code)
        yield child


def enumerate_ffree(
    n: int,
    pattern: MultipartitePattern,
    edge_cap: int,
    visitor: Optional[Visitor] = None,
    *,
    budget: Optional[SearchBudget] = None,
    tracker: Optional[Tracker] = None,
    roots: Optional[Iterable[Graph]] = None,
    prune: Optional[Pruner] = None,
) -> EnumerationStats:
    """Visit one graph per isomorphism class of pattern-free n-vertex graphs with
    at most ``edge_cap`` edges (restricted to the subtrees of ``roots`` if given).

    ``prune(graph, cap)`` returning True skips the strict descendants of graph.
    Budget exhaustion ends the walk with ``complete = False``.
    """
    tracker = tracker or BudgetTracker(budget or SearchBudget())
    stats = EnumerationStats()
    cap = edge_cap
    started = time.time()

    def visit(graph: Graph) -> None:
        nonlocal cap
        if graph.edge_count > cap:
            return
        tracker.charge()
        stats.record(graph)
        if visitor is not None:
            tighter = visitor(graph)
            if tighter is not None and tighter < cap:
                logger.debug(f"Edge cap tightened from {cap} to {tighter}")
                cap = tighter
        if graph.edge_count >= cap or (prune is not None and prune(graph, cap)):
            return
        for child in augmentations(graph, pattern):
            visit(child)
            if graph.edge_count >= cap:
                return

    try:
        for root in (roots if roots is not None else [empty_graph(n)]):
            visit(root)
    except BudgetExceededError as e:
        stats.complete = False
        stats.stop_reason = str(e)
        logger.info(f"Enumeration stopped after {stats.visited} nodes: {e}")

    stats.elapsed = time.time() - started
    return stats


def expand_frontier(
    n: int,
    pattern: MultipartitePattern,
    depth: int,
    edge_cap: int,
    visitor: Optional[Visitor] = None,
    *,
    tracker: Optional[Tracker] = None,
    prune: Optional[Pruner] = None,
) -> List[Graph]:
    """Breadth-first expansion to ``depth`` edges.

    Shallower nodes are visited here; nodes at ``depth`` are returned unvisited
    so their subtrees can be handed out independently.
    """
    tracker = tracker or BudgetTracker(SearchBudget())
    cap = edge_cap
    level = [empty_graph(n)]
    for _ in range(depth):
        following: List[Graph] = []
        for graph in level:
            if graph.edge_count > cap:
                continue
            tracker.charge()
            if visitor is not None:
                tighter = visitor(graph)
                if tighter is not None and tighter < cap:
                    cap = tighter
            if graph.edge_count >= cap or (prune is not None and prune(graph, cap)):
                continue
            following.extend(augmentations(graph, pattern))
        level = following
        if not level:
            break
    return [graph for graph in level if graph.edge_count <= cap]
