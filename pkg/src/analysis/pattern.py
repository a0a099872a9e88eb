"""
Complete multipartite patterns K_{s1,...,sr} and subgraph detection with witnesses.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterator, List, Optional, Sequence, Tuple

from src.core.config import MAX_VERTICES
from src.graphs.graph import Graph, VertexSet, iter_bits
from src.utils.utils import parse_part_sizes

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MultipartitePattern:
    """Part sizes of a complete multipartite graph, sorted ascending."""

    parts: Tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.parts:
            logger.error("A pattern needs at least one part")
            raise ValueError("A pattern needs at least one part")
        if any(size <= 0 for size in self.parts):
            logger.error(f"Part sizes must be positive: {self.parts}")
            raise ValueError(f"Part sizes must be positive: {self.parts}")
        if list(self.parts) != sorted(self.parts):
            logger.error(f"Part sizes must be sorted ascending: {self.parts}")
            raise ValueError(f"Part sizes must be sorted ascending: {self.parts}")
        if sum(self.parts) > MAX_VERTICES:
            logger.error(f"Pattern on {sum(self.parts)} vertices exceeds {MAX_VERTICES}")
            raise ValueError(f"Pattern on {sum(self.parts)} vertices exceeds {MAX_VERTICES}")

    @classmethod
    def of(cls, *sizes: int) -> "MultipartitePattern":
        return cls(tuple(sorted(sizes)))

    @classmethod
    def parse(cls, text: str) -> "MultipartitePattern":
        return cls(parse_part_sizes(text))

    @classmethod
    def complete_bipartite(cls, s: int, t: int) -> "MultipartitePattern":
        return cls.of(s, t)

    @classmethod
    def clique(cls, k: int) -> "MultipartitePattern":
        return cls((1,) * k)

    @property
    def r(self) -> int:
        return len(self.parts)

    @property
    def total(self) -> int:
        return sum(self.parts)

    @property
    def is_bipartite(self) -> bool:
        return self.r == 2

    @property
    def is_clique(self) -> bool:
        return all(size == 1 for size in self.parts)

    @property
    def is_k33(self) -> bool:
        return self.parts == (3, 3)

    @property
    def min_degree_floor(self) -> int:
        """Least degree of a non-universal vertex in any saturated graph.

        In G+xy the vertex x lies in some part and sees every other part, so
        d(x) + 1 >= total - s_r.
        """
        return max(0, self.total - self.parts[-1] - 1)

    @property
    def label(self) -> str:
        return f"K_{{{','.join(map(str, self.parts))}}}"

    def __str__(self) -> str:
        return ",".join(map(str, self.parts))


K33 = MultipartitePattern((3, 3))


@dataclass(frozen=True)
class Witness:
    """Disjoint vertex sets realizing a pattern copy, listed in pattern order."""

    part_sets: Tuple[VertexSet, ...]

    @property
    def vertices(self) -> VertexSet:
        mask = 0
        for part in self.part_sets:
            mask |= part.bits
        return VertexSet(mask)

    def to_lists(self) -> List[List[int]]:
        return [part.to_list() for part in self.part_sets]

    def format(self) -> str:
        return " | ".join(" ".join(map(str, part)) for part in self.part_sets)

    @classmethod
    def parse(cls, text: str) -> "Witness":
        parts = []
        for chunk in text.split("|"):
            try:
                parts.append(VertexSet.of(int(token) for token in chunk.split()))
            except ValueError:
                logger.error(f"Malformed witness text: '{text}'")
                raise ValueError(f"Malformed witness text: '{text}'")
        return cls(tuple(parts))


def validate_witness(graph: Graph, pattern: MultipartitePattern, witness: Witness) -> bool:
    """Standalone check: right part sizes, disjoint parts, every cross pair an edge."""
    if len(witness.part_sets) != pattern.r:
        return False
    if sorted(len(part) for part in witness.part_sets) != list(pattern.parts):
        return False

    seen = 0
    for part in witness.part_sets:
        if part.bits & seen or part.bits >> graph.n:
            return False
        seen |= part.bits

    for part in witness.part_sets:
        others = seen & ~part.bits
        for v in part:
            if others & ~graph.adj[v]:
                return False
    return True


def _choose(adj: Sequence[int], pool: List[int], need: int, running: int,
            floor: int) -> Iterator[Tuple[int, int]]:
    """Lexicographic need-subsets of ``pool`` with their running common neighbourhood.

    Branches whose common neighbourhood drops below ``floor`` are cut.
    """
    if need == 0:
        yield 0, running
        return
    for idx in range(len(pool) - need + 1):
        v = pool[idx]
        narrowed = running & adj[v]
        if narrowed.bit_count() < floor:
            continue
        for mask, common in _choose(adj, pool[idx + 1:], need - 1, narrowed, floor):
            yield mask | 1 << v, common


def _lowest_bits(mask: int, count: int) -> int:
    picked = 0
    for v in iter_bits(mask):
        if count == 0:
            break
        picked |= 1 << v
        count -= 1
    return picked


def _find_copy(graph: Graph, sizes: Sequence[int], pins: Sequence[int]) -> Optional[List[int]]:
    """Place the parts in order; each part is drawn from the common neighbourhood
    of everything placed before it and of the vertices pinned into later parts."""
    adj = graph.adj
    r = len(sizes)
    total = sum(sizes)
    universe = graph.all_vertices

    later = [universe] * (r + 1)
    for k in range(r - 1, -1, -1):
        mask = later[k + 1]
        for p in iter_bits(pins[k]):
            mask &= adj[p]
        later[k] = mask

    floors = [0] * (r + 1)
    for k in range(r - 1, -1, -1):
        floors[k] = floors[k + 1] + sizes[k]

    eligible = []
    for size in sizes:
        eligible.append(sum(1 << v for v in range(graph.n) if adj[v].bit_count() >= total - size))

    chosen = [0] * r

    def place(k: int, constraint: int) -> bool:
        own = pins[k]
        base = constraint & later[k + 1]
        if own & ~base:
            return False
        need = sizes[k] - own.bit_count()
        if need < 0:
            return False
        running = constraint
        for p in iter_bits(own):
            running &= adj[p]
        pool = base & ~own & eligible[k]

        if k == r - 1:
            if pool.bit_count() < need:
                return False
            chosen[k] = own | _lowest_bits(pool, need)
            return True

        for mask, common in _choose(adj, list(iter_bits(pool)), need, running, floors[k + 1]):
            chosen[k] = own | mask
            if place(k + 1, common):
                return True
        return False

    return list(chosen) if place(0, universe) else None


def contains(graph: Graph, pattern: MultipartitePattern) -> Optional[Witness]:
    """Lexicographically least copy of the pattern in ``graph``, if any."""
    if pattern.total > graph.n:
        return None
    found = _find_copy(graph, pattern.parts, [0] * pattern.r)
    if found is None:
        return None
    return Witness(tuple(VertexSet(mask) for mask in found))


def _role_pairs(parts: Sequence[int]) -> Iterator[Tuple[int, int]]:
    """One (part of u, part of v) assignment per ordered pair of part sizes."""
    seen = set()
    for i, size_i in enumerate(parts):
        for j, size_j in enumerate(parts):
            if i == j or (size_i, size_j) in seen:
                continue
            seen.add((size_i, size_j))
            yield i, j


def contains_through_edge(graph: Graph, pattern: MultipartitePattern, u: int, v: int) -> Optional[Witness]:
    """A copy of the pattern that uses the edge uv, with u and v in different parts."""
    if not (0 <= u < graph.n and 0 <= v < graph.n) or not graph.has_edge(u, v):
        logger.error(f"({u}, {v}) is not an edge of the graph")
        raise ValueError(f"({u}, {v}) is not an edge of the graph")
    if pattern.total > graph.n or pattern.r < 2:
        return None

    for i, j in _role_pairs(pattern.parts):
        pins = [0] * pattern.r
        pins[i] = 1 << u
        pins[j] = 1 << v
        found = _find_copy(graph, pattern.parts, pins)
        if found is not None:
            return Witness(tuple(VertexSet(mask) for mask in found))
    return None


def forbid_check_fast(graph: Graph, s: int, t: int) -> bool:
    """True iff K_{s,t} is a subgraph: some s-set has at least t common neighbours."""
    if s > t:
        logger.error(f"forbid_check_fast expects s <= t, got s={s}, t={t}")
        raise ValueError(f"forbid_check_fast expects s <= t, got s={s}, t={t}")
    if s + t > graph.n:
        return False

    adj = graph.adj
    degrees = graph.degrees()
    candidates = [v for v in range(graph.n) if degrees[v] >= t]
    targets = sum(1 << v for v in range(graph.n) if degrees[v] >= s)

    def extend(start: int, need: int, running: int) -> bool:
        if need == 0:
            return True
        for idx in range(start, len(candidates) - need + 1):
            narrowed = running & adj[candidates[idx]]
            if narrowed.bit_count() >= t and extend(idx + 1, need - 1, narrowed):
                return True
        return False

    return extend(0, s, targets)


def edge_creates_copy(graph: Graph, pattern: MultipartitePattern, u: int, v: int) -> bool:
    """Whether the edge uv of ``graph`` lies in a copy of the pattern.

    ``graph`` minus uv must be pattern-free, so every copy uses uv and the
    two-part case can take the common-neighbourhood scan.
    """
    if pattern.r == 2:
        if not graph.has_edge(u, v):
            logger.error(f"({u}, {v}) is not an edge of the graph")
            raise ValueError(f"({u}, {v}) is not an edge of the graph")
        return forbid_check_fast(graph, *pattern.parts)
    return contains_through_edge(graph, pattern, u, v) is not None
