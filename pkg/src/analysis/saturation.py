"""
Saturation verdicts with machine-checkable certificates.

A graph is saturated for a pattern when it has no copy of the pattern but every
missing edge, once added, is used by some copy. The certificate is one witness
per non-edge, in lexicographic non-edge order.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import partial
from multiprocessing import Pool
from pathlib import Path
from typing import List, Optional, Sequence, Tuple, Union

from src.analysis.pattern import (
    MultipartitePattern,
    Witness,
    contains,
    contains_through_edge,
    validate_witness,
)
from src.graphs.graph import Edge, Graph
from src.graphs.graph6 import emit_graph6

logger = logging.getLogger(__name__)

# below this many non-edges a worker pool costs more than it saves
_PARALLEL_MIN_NON_EDGES = 64

CertificateEntry = Tuple[Edge, Witness]


@dataclass(frozen=True)
class Saturated:
    certificate: Tuple[CertificateEntry, ...]
    kind = "saturated"

    @property
    def is_saturated(self) -> bool:
        return True


@dataclass(frozen=True)
class ContainsPattern:
    witness: Witness
    kind = "contains_pattern"

    @property
    def is_saturated(self) -> bool:
        return False


@dataclass(frozen=True)
class MissingEdgeFails:
    edge: Edge
    kind = "missing_edge_fails"

    @property
    def is_saturated(self) -> bool:
        return False


SaturationVerdict = Union[Saturated, ContainsPattern, MissingEdgeFails]


@dataclass(frozen=True)
class PruningRules:
    """Cheap necessary conditions for saturation, each individually toggleable.

    ``min_degree``: a vertex with a non-neighbour has degree at least
    ``pattern.min_degree_floor``. ``isolated_vertex``: no isolated vertex unless
    the pattern is a star or a single part.
    """

    min_degree: bool = False
    isolated_vertex: bool = False

    @classmethod
    def for_pattern(cls, pattern: MultipartitePattern) -> "PruningRules":
        return cls(min_degree=pattern.is_k33, isolated_vertex=False)


def violated_rule(graph: Graph, pattern: MultipartitePattern, rules: PruningRules) -> Optional[str]:
    """Name of the first rule proving ``graph`` is not saturated, or None."""
    full = graph.n - 1
    degrees = graph.degrees()
    if rules.isolated_vertex and pattern.min_degree_floor >= 1 and graph.n > 1:
        if any(d == 0 for d in degrees):
            return "isolated_vertex"
    if rules.min_degree:
        floor = pattern.min_degree_floor
        if any(d < floor and d < full for d in degrees):
            return "min_degree"
    return None


def edge_witness(graph: Graph, pattern: MultipartitePattern, edge: Edge) -> Optional[Witness]:
    """Copy of the pattern in G+uv that uses uv, for a non-edge uv of G."""
    u, v = edge
    return contains_through_edge(graph.add_edge(u, v), pattern, u, v)


def is_saturated(graph: Graph, pattern: MultipartitePattern,
                 rules: Optional[PruningRules] = None, assume_free: bool = False) -> bool:
    """Boolean saturation test with early exit; no certificate is kept."""
    if rules is not None and violated_rule(graph, pattern, rules):
        return False
    if not assume_free and contains(graph, pattern) is not None:
        return False
    return all(edge_witness(graph, pattern, edge) is not None for edge in graph.non_edges())


def check_saturated(graph: Graph, pattern: MultipartitePattern, threads: int = 1) -> SaturationVerdict:
    """Decide saturation; the first failing non-edge in lexicographic order is reported."""
    witness = contains(graph, pattern)
    if witness is not None:
        logger.debug(f"Graph already contains {pattern.label}: {witness.format()}")
        return ContainsPattern(witness)

    non_edges = list(graph.non_edges())
    if threads > 1 and len(non_edges) >= _PARALLEL_MIN_NON_EDGES:
        with Pool(processes=threads) as pool:
            witnesses = pool.map(partial(edge_witness, graph, pattern), non_edges)
    else:
        witnesses = []
        for edge in non_edges:
            found = edge_witness(graph, pattern, edge)
            if found is None:
                return MissingEdgeFails(edge)
            witnesses.append(found)

    for edge, found in zip(non_edges, witnesses):
        if found is None:
            return MissingEdgeFails(edge)
    return Saturated(tuple(zip(non_edges, witnesses)))


def format_certificate(verdict: Saturated) -> str:
    """One line per non-edge: "u v : part1 | part2"."""
    return "\n".join(f"{u} {v} : {witness.format()}" for (u, v), witness in verdict.certificate)


def parse_certificate(text: str) -> List[CertificateEntry]:
    entries = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        head, sep, body = line.partition(":")
        pair = head.split()
        if not sep or len(pair) != 2:
            logger.error(f"Malformed certificate line: '{line}'")
            raise ValueError(f"Malformed certificate line: '{line}'")
        u, v = int(pair[0]), int(pair[1])
        entries.append(((min(u, v), max(u, v)), Witness.parse(body)))
    return entries


def certificate_is_valid(graph: Graph, pattern: MultipartitePattern,
                         entries: Sequence[CertificateEntry]) -> bool:
    """Re-check a certificate from scratch: exactly one valid witness per non-edge,
    each using its non-edge across two different parts."""
    if contains(graph, pattern) is not None:
        return False
    if sorted(edge for edge, _ in entries) != list(graph.non_edges()):
        return False
    for (u, v), witness in entries:
        if not validate_witness(graph.add_edge(u, v), pattern, witness):
            return False
        parts_of = [i for i, part in enumerate(witness.part_sets) if u in part or v in part]
        if len(parts_of) != 2:
            return False
    return True


def write_certificate(path: Path, graph: Graph, pattern: MultipartitePattern, verdict: Saturated) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    header = f"# graph6 {emit_graph6(graph)}\n# pattern {pattern}\n"
    path.write_text(header + format_certificate(verdict) + "\n", encoding="utf-8")
    logger.info(f"Certificate with {len(verdict.certificate)} entries written to {path}")
    return path
