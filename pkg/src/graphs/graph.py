"""
Small simple undirected graphs stored as immutable bit-vector adjacency rows.

Vertex ``v`` of an ``n``-vertex graph is bit ``v`` of every row; ``adj[v]`` is the
neighbourhood of ``v``. Graphs are values: every operator returns a new graph.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, Iterator, List, Sequence, Tuple

import networkx as nx

from src.core.config import MAX_VERTICES
from src.utils.utils import validate_vertex_count

logger = logging.getLogger(__name__)

Edge = Tuple[int, int]


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the positions of the set bits of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def bits_of(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


@dataclass(frozen=True)
class VertexSet:
    """A set of vertices 0..63 packed into one integer."""

    bits: int = 0

    def __post_init__(self) -> None:
        if self.bits < 0 or self.bits >> MAX_VERTICES:
            logger.error(f"VertexSet bits out of range: {self.bits:#x}")
            raise ValueError(f"VertexSet bits out of range: {self.bits:#x}")

    @classmethod
    def of(cls, vertices: Iterable[int]) -> "VertexSet":
        return cls(bits_of(vertices))

    def __iter__(self) -> Iterator[int]:
        return iter_bits(self.bits)

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __contains__(self, v: object) -> bool:
        return isinstance(v, int) and 0 <= v < MAX_VERTICES and bool(self.bits >> v & 1)

    def __bool__(self) -> bool:
        return self.bits != 0

    def __and__(self, other: "VertexSet") -> "VertexSet":
        return VertexSet(self.bits & other.bits)

    def __or__(self, other: "VertexSet") -> "VertexSet":
        return VertexSet(self.bits | other.bits)

    def __sub__(self, other: "VertexSet") -> "VertexSet":
        return VertexSet(self.bits & ~other.bits)

    def to_list(self) -> List[int]:
        return list(iter_bits(self.bits))

    def __repr__(self) -> str:
        return f"VertexSet({{{', '.join(map(str, self))}}})"


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices 0..n-1."""

    n: int
    adj: Tuple[int, ...]

    def __post_init__(self) -> None:
        validate_vertex_count(self.n)
        if len(self.adj) != self.n:
            logger.error(f"Expected {self.n} adjacency rows, got {len(self.adj)}")
            raise ValueError(f"Expected {self.n} adjacency rows, got {len(self.adj)}")

        limit = 1 << self.n
        for v, row in enumerate(self.adj):
            if row < 0 or row >= limit:
                logger.error(f"Row {v} has bits outside 0..{self.n - 1}")
                raise ValueError(f"Row {v} has bits outside 0..{self.n - 1}")
            if row >> v & 1:
                logger.error(f"Loop at vertex {v}")
                raise ValueError(f"Loop at vertex {v}")
            for u in iter_bits(row):
                if not self.adj[u] >> v & 1:
                    logger.error(f"Asymmetric adjacency between {v} and {u}")
                    raise ValueError(f"Asymmetric adjacency between {v} and {u}")

    @classmethod
    def _trusted(cls, n: int, adj: Tuple[int, ...]) -> "Graph":
        """Build without validation; callers guarantee the invariants."""
        graph = object.__new__(cls)
        object.__setattr__(graph, "n", n)
        object.__setattr__(graph, "adj", adj)
        return graph

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Edge]) -> "Graph":
        validate_vertex_count(n)
        rows = [0] * n
        for u, v in edges:
            _check_pair(n, u, v)
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls._trusted(n, tuple(rows))

    @classmethod
    def from_networkx(cls, nx_graph: nx.Graph) -> "Graph":
        """Convert a networkx graph; nodes are relabeled in sorted order."""
        nodes = sorted(nx_graph.nodes)
        index = {node: i for i, node in enumerate(nodes)}
        return cls.from_edges(len(nodes), ((index[u], index[v]) for u, v in nx_graph.edges if u != v))

    def to_networkx(self) -> nx.Graph:
        nx_graph = nx.Graph()
        nx_graph.add_nodes_from(range(self.n))
        nx_graph.add_edges_from(self.edges())
        return nx_graph

    # -- basic measures --------------------------------------------------

    @property
    def order(self) -> int:
        return self.n

    @property
    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    @property
    def all_vertices(self) -> int:
        return (1 << self.n) - 1

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> List[int]:
        return [row.bit_count() for row in self.adj]

    @property
    def min_degree(self) -> int:
        return min(self.degrees())

    @property
    def max_degree(self) -> int:
        return max(self.degrees())

    def neighbors(self, v: int) -> VertexSet:
        _check_vertex(self.n, v)
        return VertexSet(self.adj[v])

    def closed_neighborhood(self, v: int) -> VertexSet:
        _check_vertex(self.n, v)
        return VertexSet(self.adj[v] | 1 << v)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def edges(self) -> Iterator[Edge]:
        """Edges (u, v) with u < v in lexicographic order."""
        for u, row in enumerate(self.adj):
            yield from ((u, v) for v in iter_bits(row >> (u + 1) << (u + 1)))

    def non_edges(self) -> Iterator[Edge]:
        """Missing pairs (u, v) with u < v in lexicographic order."""
        full = self.all_vertices
        for u, row in enumerate(self.adj):
            missing = ~row & full
            yield from ((u, v) for v in iter_bits(missing >> (u + 1) << (u + 1)))

    def edges_within(self, mask: int) -> int:
        """e(G[S]) for the vertex set given as a bit mask."""
        return sum((self.adj[v] & mask).bit_count() for v in iter_bits(mask)) // 2

    # -- derived graphs --------------------------------------------------

    def add_edge(self, u: int, v: int) -> "Graph":
        _check_pair(self.n, u, v)
        if self.adj[u] >> v & 1:
            return self
        rows = list(self.adj)
        rows[u] |= 1 << v
        rows[v] |= 1 << u
        return Graph._trusted(self.n, tuple(rows))

    def remove_edge(self, u: int, v: int) -> "Graph":
        _check_pair(self.n, u, v)
        rows = list(self.adj)
        rows[u] &= ~(1 << v)
        rows[v] &= ~(1 << u)
        return Graph._trusted(self.n, tuple(rows))

    def complement(self) -> "Graph":
        full = self.all_vertices
        return Graph._trusted(self.n, tuple(~row & full & ~(1 << v) for v, row in enumerate(self.adj)))

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph in which vertex v is renamed ``perm[v]``."""
        if sorted(perm) != list(range(self.n)):
            logger.error(f"Not a permutation of 0..{self.n - 1}: {list(perm)}")
            raise ValueError(f"Not a permutation of 0..{self.n - 1}: {list(perm)}")
        rows = [0] * self.n
        for v, row in enumerate(self.adj):
            image = 0
            for u in iter_bits(row):
                image |= 1 << perm[u]
            rows[perm[v]] = image
        return Graph._trusted(self.n, tuple(rows))

    def induced_subgraph(self, vertices: Iterable[int]) -> "Graph":
        """G[S] with the vertices of S renumbered 0..|S|-1 in ascending order."""
        keep = sorted(set(vertices))
        for v in keep:
            _check_vertex(self.n, v)
        index = {v: i for i, v in enumerate(keep)}
        rows = []
        for v in keep:
            rows.append(bits_of(index[u] for u in iter_bits(self.adj[v]) if u in index))
        return Graph._trusted(len(keep), tuple(rows))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, e={self.edge_count})"


def _check_vertex(n: int, v: int) -> None:
    if not 0 <= v < n:
        logger.error(f"Vertex {v} out of range for a graph on {n} vertices")
        raise ValueError(f"Vertex {v} out of range for a graph on {n} vertices")


def _check_pair(n: int, u: int, v: int) -> None:
    _check_vertex(n, u)
    _check_vertex(n, v)
    if u == v:
        logger.error(f"Loop requested at vertex {u}")
        raise ValueError(f"Loop requested at vertex {u}")


def empty_graph(n: int) -> Graph:
    validate_vertex_count(n)
    return Graph._trusted(n, (0,) * n)


def add_edge(graph: Graph, u: int, v: int) -> Graph:
    return graph.add_edge(u, v)


def complement(graph: Graph) -> Graph:
    return graph.complement()


def disjoint_union(first: Graph, second: Graph) -> Graph:
    """Block-diagonal union; vertices of ``second`` follow those of ``first``."""
    total = first.n + second.n
    if total > MAX_VERTICES:
        logger.error(f"Union of {first.n} and {second.n} vertices exceeds {MAX_VERTICES}")
        raise ValueError(f"Union of {first.n} and {second.n} vertices exceeds {MAX_VERTICES}")
    shift = first.n
    return Graph._trusted(total, first.adj + tuple(row << shift for row in second.adj))


def join(first: Graph, second: Graph) -> Graph:
    """Disjoint union plus every edge between the two vertex sets."""
    union = disjoint_union(first, second)
    low = first.all_vertices
    high = second.all_vertices << first.n
    rows = tuple(row | high if v < first.n else row | low for v, row in enumerate(union.adj))
    return Graph._trusted(union.n, rows)


def common_neighbors(graph: Graph, vertices: VertexSet) -> VertexSet:
    """Intersection of N(v) over v in ``vertices``; S itself is not subtracted."""
    if not vertices:
        logger.error("common_neighbors needs a nonempty vertex set")
        raise ValueError("common_neighbors needs a nonempty vertex set")
    mask = graph.all_vertices
    for v in vertices:
        _check_vertex(graph.n, v)
        mask &= graph.adj[v]
    return VertexSet(mask)


def complete_graph(n: int) -> Graph:
    return empty_graph(n).complement()


def cycle_graph(n: int) -> Graph:
    if n < 3:
        logger.error(f"A cycle needs at least 3 vertices, got {n}")
        raise ValueError(f"A cycle needs at least 3 vertices, got {n}")
    return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def star_graph(n: int) -> Graph:
    """S_n: vertex 0 joined to the n-1 leaves."""
    return Graph.from_edges(n, ((0, leaf) for leaf in range(1, n)))
