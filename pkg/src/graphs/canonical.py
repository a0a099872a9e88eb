"""
Canonical labeling for small graphs.

Colour refinement to an equitable partition, then individualization
backtracking over the first smallest non-singleton cell. Every leaf of the
search tree is a discrete partition, i.e. a labeling; the canonical labeling is
the leaf with the smallest relabeled adjacency. Subtrees are skipped when an
automorphism already known fixes the current path and maps the branch vertex
onto one tried before (twin transpositions are known up front, the rest are
collected from leaves with equal certificates).
"""

from __future__ import annotations

import logging
from collections import defaultdict
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

from src.core.cache_manager import get_cache_key, get_cached, set_cache
from src.core.config import CANON_EXACT_MAX_N, CANON_LEAF_LIMIT
from src.graphs.graph import Edge, Graph, bits_of, iter_bits
from src.graphs.graph6 import emit_graph6

logger = logging.getLogger(__name__)

Perm = Tuple[int, ...]


@dataclass(frozen=True, order=True)
class CanonicalCode:
    """Certificate of an isomorphism class: graph6 of the canonical relabeling.

    ``exact`` is False when the leaf limit for large graphs cut the search
    short; such codes are dedup hints only.
    """

    data: bytes
    exact: bool = True

    def __str__(self) -> str:
        return self.data.decode("ascii")


@dataclass(frozen=True)
class CanonicalForm:
    code: CanonicalCode
    labeling: Perm
    cells: Tuple[int, ...]
    generators: Tuple[Perm, ...]
    n: int

    @property
    def order(self) -> Perm:
        """Vertices listed by canonical label."""
        inverse = [0] * self.n
        for v, label in enumerate(self.labeling):
            inverse[label] = v
        return tuple(inverse)

    def cell_index(self) -> Tuple[int, ...]:
        """Index of the equitable cell holding each vertex."""
        index = [0] * self.n
        for i, cell in enumerate(self.cells):
            for v in iter_bits(cell):
                index[v] = i
        return tuple(index)


def refine(adj: Sequence[int], cells: List[int]) -> List[int]:
    """Refine an ordered partition until it is equitable.

    A cell splits by the vector of neighbour counts into every current cell;
    pieces are ordered by that vector, so the result depends only on the
    structure and the input order, never on vertex names.
    """
    while True:
        refined: List[int] = []
        changed = False
        for cell in cells:
            if not cell & (cell - 1):
                refined.append(cell)
                continue
            groups: Dict[Tuple[int, ...], int] = defaultdict(int)
            for v in iter_bits(cell):
                row = adj[v]
                groups[tuple((row & other).bit_count() for other in cells)] |= 1 << v
            if len(groups) == 1:
                refined.append(cell)
            else:
                changed = True
                refined.extend(groups[key] for key in sorted(groups))
        cells = refined
        if not changed:
            return cells


def partition_shape(adj: Sequence[int], cells: Sequence[int]) -> Tuple[Tuple[int, Tuple[int, ...]], ...]:
    """Isomorphism invariant of an equitable partition: sizes and quotient counts."""
    shape = []
    for cell in cells:
        v = cell.bit_length() - 1
        shape.append((cell.bit_count(), tuple((adj[v] & other).bit_count() for other in cells)))
    return tuple(shape)


def _twin_transpositions(adj: Sequence[int], n: int, cells: Iterable[int]) -> List[Perm]:
    generators: List[Perm] = []
    for cell in cells:
        if not cell & (cell - 1):
            continue
        for closed in (False, True):
            classes: Dict[int, List[int]] = defaultdict(list)
            for v in iter_bits(cell):
                classes[adj[v] | (1 << v if closed else 0)].append(v)
            for members in classes.values():
                for u, v in zip(members, members[1:]):
                    perm = list(range(n))
                    perm[u], perm[v] = v, u
                    generators.append(tuple(perm))
    return generators


def _find(parent: List[int], v: int) -> int:
    while parent[v] != v:
        parent[v] = parent[parent[v]]
        v = parent[v]
    return v


class _LabelingSearch:
    """Individualization-refinement tree walk for one (coloured) graph."""

    def __init__(self, adj: Sequence[int], n: int, leaf_limit: Optional[int]):
        self.adj = adj
        self.n = n
        self.leaf_limit = leaf_limit
        self.best_key: Optional[Tuple[int, ...]] = None
        self.best_order: List[int] = []
        self.generators: List[Perm] = []
        self.leaves = 0
        self.truncated = False

    def _stabilizer_orbits(self, path: List[int]) -> List[int]:
        parent = list(range(self.n))
        for perm in self.generators:
            if all(perm[p] == p for p in path):
                for v, image in enumerate(perm):
                    a, b = _find(parent, v), _find(parent, image)
                    if a != b:
                        parent[a] = b
        return parent

    def descend(self, cells: List[int], path: List[int]) -> None:
        if len(cells) == self.n:
            self._leaf(cells)
            return

        target_index = min(
            (i for i, cell in enumerate(cells) if cell & (cell - 1)),
            key=lambda i: (cells[i].bit_count(), i),
        )
        target = cells[target_index]
        tried: List[int] = []
        for v in iter_bits(target):
            if tried:
                parent = self._stabilizer_orbits(path)
                root = _find(parent, v)
                if any(_find(parent, w) == root for w in tried):
                    continue
            tried.append(v)
            split = cells[:target_index] + [1 << v, target & ~(1 << v)] + cells[target_index + 1:]
            self.descend(refine(self.adj, split), path + [v])
            if self.truncated:
                return

    def _leaf(self, cells: List[int]) -> None:
        self.leaves += 1
        order = [cell.bit_length() - 1 for cell in cells]
        labels = [0] * self.n
        for label, v in enumerate(order):
            labels[v] = label
        key = tuple(bits_of(labels[u] for u in iter_bits(self.adj[v])) for v in order)

        if self.best_key is None or key < self.best_key:
            self.best_key = key
            self.best_order = order
        elif key == self.best_key:
            automorphism = tuple(self.best_order[labels[v]] for v in range(self.n))
            if any(image != v for v, image in enumerate(automorphism)):
                self.generators.append(automorphism)

        if self.leaf_limit is not None and self.leaves >= self.leaf_limit:
            self.truncated = True


def _initial_cells(n: int, colors: Optional[Sequence[int]]) -> List[int]:
    if colors is None:
        return [(1 << n) - 1]
    if len(colors) != n:
        logger.error(f"Expected {n} vertex colours, got {len(colors)}")
        raise ValueError(f"Expected {n} vertex colours, got {len(colors)}")
    classes: Dict[int, int] = defaultdict(int)
    for v, color in enumerate(colors):
        classes[color] |= 1 << v
    return [classes[color] for color in sorted(classes)]


def canonical_form(graph: Graph, colors: Optional[Sequence[int]] = None) -> CanonicalForm:
    """Canonical labeling of ``graph``, optionally respecting vertex colours.

    Colours are compared by value: vertices of the smallest colour receive the
    smallest labels.
    """
    color_key = tuple(colors) if colors is not None else None
    cache_key = get_cache_key("canonical", graph.n, graph.adj, color_key)
    cached = get_cached(cache_key)
    if cached is not None:
        return cached

    n = graph.n
    initial = _initial_cells(n, colors)
    root = refine(graph.adj, initial)
    leaf_limit = None if n <= CANON_EXACT_MAX_N else CANON_LEAF_LIMIT

    search = _LabelingSearch(graph.adj, n, leaf_limit)
    search.generators.extend(_twin_transpositions(graph.adj, n, root))
    search.descend(root, [])
    if search.truncated:
        logger.debug(f"Canonical search on n={n} stopped after {search.leaves} leaves")

    labeling = [0] * n
    for label, v in enumerate(search.best_order):
        labeling[v] = label
    data = emit_graph6(graph.relabel(labeling)).encode("ascii")
    if colors is not None:
        sizes = ",".join(str(cell.bit_count()) for cell in initial)
        data += f"|{sizes}".encode("ascii")

    form = CanonicalForm(
        code=CanonicalCode(data, exact=not search.truncated),
        labeling=tuple(labeling),
        cells=tuple(root),
        generators=tuple(search.generators),
        n=n,
    )
    set_cache(cache_key, form)
    return form


def canonical_code(graph: Graph) -> CanonicalCode:
    return canonical_form(graph).code


def canonical_graph(graph: Graph) -> Graph:
    """The canonical representative of the isomorphism class of ``graph``."""
    return graph.relabel(canonical_form(graph).labeling)


def are_isomorphic(first: Graph, second: Graph) -> bool:
    if first.n != second.n or first.edge_count != second.edge_count:
        return False
    return canonical_code(first) == canonical_code(second)


def edge_orbit(edge: Edge, generators: Iterable[Perm]) -> Set[Edge]:
    """Orbit of an edge under the group generated by ``generators``."""
    generators = list(generators)
    start = (min(edge), max(edge))
    orbit = {start}
    frontier = [start]
    while frontier:
        u, v = frontier.pop()
        for perm in generators:
            image = (min(perm[u], perm[v]), max(perm[u], perm[v]))
            if image not in orbit:
                orbit.add(image)
                frontier.append(image)
    return orbit
