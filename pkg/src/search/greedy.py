"""
Randomized greedy saturation: a maximal pattern-free supergraph is saturated.

Runs start either from the empty graph or from a sparse core: the sparsest
known construction for the pattern, randomly relabeled and thinned. The
seed fixes both the start and the scan order.
"""

import logging
import random
from typing import Optional

from src.analysis.pattern import MultipartitePattern, contains, edge_creates_copy
from src.core.config import DEFAULT_SEED, GREEDY_SEEDS
from src.graphs.constructions import GN_MIN_N, SMALL_WITNESS_RANGE, ehm, gn, small_witness
from src.graphs.graph import Graph, empty_graph

logger = logging.getLogger(__name__)

# seed % CORE_PERIOD quarters of the core's edges are dropped; the last residue is an empty start
CORE_PERIOD = 5


def greedy_saturate(start: Graph, pattern: MultipartitePattern, seed: int = DEFAULT_SEED) -> Graph:
    """Scan the non-edges of ``start`` in a seed-shuffled order, keeping every edge
    that leaves the graph pattern-free. One pass suffices: a rejected edge stays
    rejected as the graph grows."""
    if contains(start, pattern) is not None:
        logger.error(f"Start graph already contains {pattern.label}")
        raise ValueError(f"Start graph already contains {pattern.label}")

    order = list(start.non_edges())
    random.Random(seed).shuffle(order)
    graph = start
    for u, v in order:
        candidate = graph.add_edge(u, v)
        if not edge_creates_copy(candidate, pattern, u, v):
            graph = candidate
    return graph


def known_core(n: int, pattern: MultipartitePattern) -> Optional[Graph]:
    """Sparsest construction on n vertices known to avoid the pattern, if any."""
    if pattern.is_k33:
        if n in SMALL_WITNESS_RANGE:
            return small_witness(n).graph
        if n >= GN_MIN_N:
            return gn(n).graph
    if pattern.is_clique and pattern.r >= 3 and n >= pattern.r:
        return ehm(n, pattern.r - 1).graph
    return None


def sparse_start(n: int, pattern: MultipartitePattern, seed: int = DEFAULT_SEED) -> Graph:
    """Seeded start graph: a relabeled core with ``seed % CORE_PERIOD`` quarters of
    its edges removed, or the empty graph when no core is known."""
    core = known_core(n, pattern)
    if core is None:
        return empty_graph(n)

    rng = random.Random(seed)
    perm = list(range(n))
    rng.shuffle(perm)
    edges = list(core.relabel(perm).edges())
    rng.shuffle(edges)
    keep = len(edges) - (seed % CORE_PERIOD) * len(edges) // (CORE_PERIOD - 1)
    return Graph.from_edges(n, edges[:max(keep, 0)])


def greedy_sample(n: int, pattern: MultipartitePattern, seed: int = DEFAULT_SEED) -> Graph:
    """One seeded greedy run from ``sparse_start``."""
    return greedy_saturate(sparse_start(n, pattern, seed), pattern, seed)


def greedy_upper_bound(n: int, pattern: MultipartitePattern, seed: int = DEFAULT_SEED,
                       runs: int = GREEDY_SEEDS) -> Optional[Graph]:
    """Sparsest of ``runs`` greedy samples (seeds seed, seed+1, ...).

    None when the empty graph already contains the pattern.
    """
    if contains(empty_graph(n), pattern) is not None:
        return None

    best: Optional[Graph] = None
    for offset in range(runs):
        graph = greedy_sample(n, pattern, seed + offset)
        if best is None or graph.edge_count < best.edge_count:
            best = graph
    logger.debug(f"Greedy upper bound for n={n}, {pattern.label}: {best.edge_count} edges over {runs} runs")
    return best
