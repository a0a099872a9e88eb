"""
Minimum-degree partition and charge bookkeeping for K_{3,3}-saturated graphs.

Around a vertex ``a`` of minimum degree the vertices split into
V1 = N[a], V2 (at least two neighbours in N(a)), V3 (exactly one) and V4
(none). Every charge below counts neighbours in strictly earlier classes
plus half the neighbours in the own class, minus a constant, so summing
charges over V2..V4 recovers e(G) exactly. All charges are HalfInt values.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Dict, List, Optional, Tuple

from src.analysis.halfint import ZERO, HalfInt
from src.analysis.pattern import K33
from src.analysis.saturation import is_saturated
from src.graphs.graph import Graph, VertexSet, iter_bits
from src.utils.utils import NotSaturatedError

logger = logging.getLogger(__name__)

CHARGE_VARIANTS = ("f", "g", "g_prime")
IDENTITY_VARIANTS = {"two": "f", "three": "g", "prime": "g_prime"}

# charge constants: f subtracts 2, g and g' subtract 3
_OFFSET = {"f": 2, "g": 3, "g_prime": 3}


@dataclass(frozen=True)
class SaturationPartition:
    a: int
    a_list: Tuple[int, ...]
    V1: VertexSet
    V2: VertexSet
    V3: VertexSet
    V4: VertexSet
    V2_by_count: Dict[int, VertexSet]
    V2_by_support: Dict[Tuple[int, ...], VertexSet]
    V4_split: Tuple[VertexSet, VertexSet, VertexSet]
    n: int

    @property
    def V2_squared(self) -> VertexSet:
        """V2 vertices with exactly two neighbours in V1."""
        return self.V2_by_count.get(2, VertexSet())

    @property
    def V4_3(self) -> VertexSet:
        return self.V4_split[0]

    @property
    def V4_20(self) -> VertexSet:
        return self.V4_split[1]

    @property
    def V4_21(self) -> VertexSet:
        return self.V4_split[2]

    def classes(self) -> Tuple[VertexSet, VertexSet, VertexSet, VertexSet]:
        return self.V1, self.V2, self.V3, self.V4

    def class_of(self, x: int) -> int:
        for index, members in enumerate(self.classes(), start=1):
            if x in members:
                return index
        logger.error(f"Vertex {x} is outside the partition of a graph on {self.n} vertices")
        raise ValueError(f"Vertex {x} is outside the partition of a graph on {self.n} vertices")

    def to_dict(self) -> Dict[str, Any]:
        return {
            "a": self.a,
            "a_list": list(self.a_list),
            "V1": self.V1.to_list(),
            "V2": self.V2.to_list(),
            "V3": self.V3.to_list(),
            "V4": self.V4.to_list(),
            "sizes": {f"V{i}": len(part) for i, part in enumerate(self.classes(), start=1)},
            "V2_by_count": {str(i): part.to_list() for i, part in sorted(self.V2_by_count.items())},
            "V2_by_support": {
                ",".join(map(str, support)): part.to_list()
                for support, part in sorted(self.V2_by_support.items())
            },
            "V4_3": self.V4_3.to_list(),
            "V4_20": self.V4_20.to_list(),
            "V4_21": self.V4_21.to_list(),
        }


def minimum_degree_vertices(graph: Graph) -> List[int]:
    delta = graph.min_degree
    return [v for v in range(graph.n) if graph.degree(v) == delta]


def tiebreak_vertices(graph: Graph) -> List[int]:
    """Minimum-degree vertices whose closed neighbourhood spans the fewest edges."""
    candidates = minimum_degree_vertices(graph)
    spans = {v: graph.edges_within(graph.adj[v] | 1 << v) for v in candidates}
    least = min(spans.values())
    return [v for v in candidates if spans[v] == least]


def build_partition(graph: Graph, a: int) -> SaturationPartition:
    """Partition V(G) around the minimum-degree vertex ``a``."""
    if not 0 <= a < graph.n:
        logger.error(f"Vertex {a} out of range for a graph on {graph.n} vertices")
        raise ValueError(f"Vertex {a} out of range for a graph on {graph.n} vertices")
    if graph.degree(a) != graph.min_degree:
        msg = f"Vertex {a} has degree {graph.degree(a)}, but the minimum degree is {graph.min_degree}"
        logger.error(msg)
        raise ValueError(msg)

    adj = graph.adj
    n_a = adj[a]
    a_list = tuple(iter_bits(n_a))
    v1 = n_a | 1 << a

    v2 = v3 = v4 = 0
    for x in range(graph.n):
        if v1 >> x & 1:
            continue
        seen = (adj[x] & n_a).bit_count()
        if seen >= 2:
            v2 |= 1 << x
        elif seen == 1:
            v3 |= 1 << x
        else:
            v4 |= 1 << x

    by_count: Dict[int, int] = {i: 0 for i in range(2, len(a_list) + 1)}
    by_support: Dict[Tuple[int, ...], int] = {}
    for x in iter_bits(v2):
        hits = adj[x] & v1
        by_count[hits.bit_count()] |= 1 << x
        support = tuple(i for i, ai in enumerate(a_list, start=1) if hits >> ai & 1)
        by_support[support] = by_support.get(support, 0) | 1 << x

    v4_3 = v4_20 = v4_21 = 0
    for z in iter_bits(v4):
        if (adj[z] & (v2 | v3)).bit_count() >= 3:
            v4_3 |= 1 << z
        elif (adj[z] & v4).bit_count() <= 1:
            v4_20 |= 1 << z
        else:
            v4_21 |= 1 << z

    return SaturationPartition(
        a=a,
        a_list=a_list,
        V1=VertexSet(v1),
        V2=VertexSet(v2),
        V3=VertexSet(v3),
        V4=VertexSet(v4),
        V2_by_count={i: VertexSet(mask) for i, mask in by_count.items()},
        V2_by_support={support: VertexSet(mask) for support, mask in by_support.items()},
        V4_split=(VertexSet(v4_3), VertexSet(v4_20), VertexSet(v4_21)),
        n=graph.n,
    )


def _levels(partition: SaturationPartition, variant: str) -> List[int]:
    """Ordered class masks the variant counts against, V1 first."""
    v1, v2, v3, v4 = (part.bits for part in partition.classes())
    if variant == "g_prime":
        squared = partition.V2_squared.bits
        return [v1, v2 & ~squared, squared, v3 | v4]
    return [v1, v2, v3, v4]


def _charge(graph: Graph, partition: SaturationPartition, x: int, variant: str) -> HalfInt:
    if variant not in _OFFSET:
        logger.error(f"Unknown charge variant '{variant}', expected one of {CHARGE_VARIANTS}")
        raise ValueError(f"Unknown charge variant '{variant}', expected one of {CHARGE_VARIANTS}")
    if x in partition.V1:
        logger.error(f"Charges are defined outside V1 only; vertex {x} is in V1")
        raise ValueError(f"Charges are defined outside V1 only; vertex {x} is in V1")

    row = graph.adj[x]
    lower = 0
    for level in _levels(partition, variant):
        if level >> x & 1:
            return HalfInt(2 * (row & lower).bit_count() + (row & level).bit_count()) - _OFFSET[variant]
        lower |= level
    logger.error(f"Vertex {x} is outside the partition")
    raise ValueError(f"Vertex {x} is outside the partition")


def charge_f(graph: Graph, partition: SaturationPartition, x: int) -> HalfInt:
    return _charge(graph, partition, x, "f")


def charge_g(graph: Graph, partition: SaturationPartition, x: int) -> HalfInt:
    return _charge(graph, partition, x, "g")


def charge_g_prime(graph: Graph, partition: SaturationPartition, x: int) -> HalfInt:
    """Charge against the order V1, V2 minus V2^2, V2^2, V3 together with V4."""
    return _charge(graph, partition, x, "g_prime")


@dataclass(frozen=True)
class ChargeLedger:
    variant: str
    charges: Dict[int, HalfInt]
    sums: Dict[int, HalfInt]

    @property
    def total(self) -> HalfInt:
        return sum(self.sums.values(), ZERO)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "variant": self.variant,
            "charges": {str(v): str(c) for v, c in sorted(self.charges.items())},
            "sums": {str(i): str(s) for i, s in sorted(self.sums.items())},
            "total": str(self.total),
        }


def charge_ledger(graph: Graph, partition: SaturationPartition, variant: str) -> ChargeLedger:
    """Per-vertex charges and class sums s_i / w_i / w'_i for i = 2, 3, 4."""
    charges: Dict[int, HalfInt] = {}
    sums = {i: ZERO for i in (2, 3, 4)}
    for i, part in enumerate(partition.classes(), start=1):
        if i == 1:
            continue
        for x in part:
            charges[x] = _charge(graph, partition, x, variant)
            sums[i] = sums[i] + charges[x]
    return ChargeLedger(variant=variant, charges=charges, sums=sums)


@dataclass(frozen=True)
class EdgeIdentity:
    variant: str
    lhs: int
    rhs: HalfInt
    holds: bool

    def to_dict(self) -> Dict[str, Any]:
        return {"variant": self.variant, "lhs": self.lhs, "rhs": str(self.rhs), "holds": self.holds}


def edge_identity(graph: Graph, partition: SaturationPartition, variant: str,
                  ledger: Optional[ChargeLedger] = None) -> EdgeIdentity:
    """e(G) against e(V1) + c(n - |V1|) + the ledger total, with c = 2 for f and 3 otherwise.

    A ledger already computed for the matching charge variant can be passed in.
    """
    if variant not in IDENTITY_VARIANTS:
        logger.error(f"Unknown identity variant '{variant}', expected one of {sorted(IDENTITY_VARIANTS)}")
        raise ValueError(f"Unknown identity variant '{variant}', expected one of {sorted(IDENTITY_VARIANTS)}")
    charge_variant = IDENTITY_VARIANTS[variant]
    if ledger is None:
        ledger = charge_ledger(graph, partition, charge_variant)
    elif ledger.variant != charge_variant:
        logger.error(f"Identity '{variant}' needs the '{charge_variant}' ledger, got '{ledger.variant}'")
        raise ValueError(f"Identity '{variant}' needs the '{charge_variant}' ledger, got '{ledger.variant}'")
    outside = graph.n - len(partition.V1)
    rhs = ledger.total + graph.edges_within(partition.V1.bits) + _OFFSET[charge_variant] * outside
    lhs = graph.edge_count
    holds = rhs == lhs
    if not holds:
        logger.warning(f"Edge identity '{variant}' fails: e(G)={lhs}, right-hand side {rhs}")
    return EdgeIdentity(variant=variant, lhs=lhs, rhs=rhs, holds=holds)


@dataclass
class Prop32Report:
    qualifying_pairs: List[Tuple[int, int]] = field(default_factory=list)
    violations: List[Dict[str, Any]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    @property
    def vacuous(self) -> bool:
        return not self.qualifying_pairs

    def to_dict(self) -> Dict[str, Any]:
        return {
            "qualifying_pairs": [list(pair) for pair in self.qualifying_pairs],
            "violations": self.violations,
            "passed": self.passed,
            "vacuous": self.vacuous,
        }


def _require_saturated(graph: Graph) -> None:
    if not is_saturated(graph, K33):
        logger.error(f"Graph with n={graph.n}, e={graph.edge_count} is not K_{{3,3}}-saturated")
        raise NotSaturatedError(f"Graph with n={graph.n}, e={graph.edge_count} is not K_{{3,3}}-saturated")


def prop32_check(graph: Graph, partition: SaturationPartition) -> Prop32Report:
    """Pairs in one two-element support class sharing three V4^20 neighbours.

    For each such pair every shared z must have g(z) = -1/2, and its unique V4
    neighbour c must have g(c) >= 1/2.
    """
    _require_saturated(graph)
    report = Prop32Report()
    v4_20 = partition.V4_20.bits
    v4 = partition.V4.bits
    half = HalfInt.halves(1)

    for support, members in sorted(partition.V2_by_support.items()):
        if len(support) != 2:
            continue
        for x1, x2 in combinations(members, 2):
            shared = graph.adj[x1] & graph.adj[x2] & v4_20
            if shared.bit_count() < 3:
                continue
            report.qualifying_pairs.append((x1, x2))
            for z in iter_bits(shared):
                gz = charge_g(graph, partition, z)
                if gz != -half:
                    report.violations.append({"pair": [x1, x2], "z": z, "g(z)": str(gz)})
                    continue
                for c in iter_bits(graph.adj[z] & v4):
                    gc = charge_g(graph, partition, c)
                    if gc < half:
                        report.violations.append({"pair": [x1, x2], "z": z, "c": c, "g(c)": str(gc)})
    return report


def charge_bound_report(graph: Graph, partition: SaturationPartition) -> Dict[str, Any]:
    """Spot-check of the g-charge facts used when d(a) = 2.

    Nothing here is asserted; every fact is reported with its offending vertices.
    """
    if len(partition.a_list) != 2:
        return {"applicable": False, "reason": f"d(a) = {len(partition.a_list)}"}

    ledger = charge_ledger(graph, partition, "g")
    nonnegative = partition.V2 | partition.V3 | partition.V4_3 | partition.V4_21
    negative_members = [x for x in nonnegative if ledger.charges[x] < 0]
    minus_one, minus_half = HalfInt.from_int(-1), HalfInt.halves(-1)
    out_of_band = [z for z in partition.V4_20 if not minus_one <= ledger.charges[z] <= minus_half]
    v2 = partition.V2.bits
    outside = [x for x in range(graph.n) if x not in partition.V1]
    wrong_v2_count = [x for x in outside if (graph.adj[x] & v2).bit_count() != 2]
    floor = HalfInt.halves(-5)

    return {
        "applicable": True,
        "nonnegative_violations": negative_members,
        "v4_20_out_of_band": out_of_band,
        "v2_count_violations": wrong_v2_count,
        "w_total": str(ledger.total),
        "w_total_at_least_floor": ledger.total >= floor,
        "floor": str(floor),
        "passed": not negative_members and not out_of_band and not wrong_v2_count and ledger.total >= floor,
    }


def charge_summary(graph: Graph, partition: SaturationPartition) -> Dict[str, Any]:
    """Ledgers and identity results for all variants."""
    ledgers = {variant: charge_ledger(graph, partition, variant) for variant in CHARGE_VARIANTS}
    identities = {
        name: edge_identity(graph, partition, name, ledgers[charge_variant]).to_dict()
        for name, charge_variant in IDENTITY_VARIANTS.items()
    }
    return {
        "e_V1": graph.edges_within(partition.V1.bits),
        "ledgers": {variant: ledger.to_dict() for variant, ledger in ledgers.items()},
        "identities": identities,
        "identities_hold": all(item["holds"] for item in identities.values()),
    }


def resolve_root(graph: Graph, choice: Optional[int]) -> int:
    """``choice`` if given, else the first tie-break vertex."""
    if choice is not None:
        return choice
    return tiebreak_vertices(graph)[0]
