"""
Exact saturation numbers by branch-and-bound over the canonical augmentation tree.

The incumbent starts as the sparsest verified construction or greedy witness;
the edge cap is one below it and drops to the size of any sparser saturated
graph met, so ties stay in range and the least canonical code wins. A
complete walk under the cap proves the incumbent optimal. Budget exhaustion
is always reported as its own status.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from enum import Enum
from multiprocessing import Pool, Value
from pathlib import Path
from typing import Any, Dict, List, Optional, Set, Tuple

from tqdm import tqdm

from src.analysis.pattern import MultipartitePattern
from src.analysis.saturation import PruningRules, check_saturated, is_saturated
from src.core.budget import BudgetTracker, SearchBudget
from src.core.config import DEFAULT_SEED, GREEDY_SEEDS, SEARCH_THREADS, SHOW_PROGRESS, SPLIT_DEPTH
from src.graphs.canonical import canonical_code
from src.graphs.constructions import (
    EDGE_JOIN_CYCLE_MIN_N,
    GN_MIN_N,
    SMALL_WITNESS_RANGE,
    edge_join_cycle,
    ehm,
    gn,
    small_witness,
)
from src.graphs.graph import Graph
from src.graphs.graph6 import emit_graph6, parse_graph6
from src.search.checkpoint import Checkpoint, read_checkpoint, write_checkpoint
from src.search.enumerate import Pruner, enumerate_ffree, expand_frontier
from src.search.greedy import greedy_upper_bound
from src.utils.utils import BudgetExceededError, validate_vertex_count

logger = logging.getLogger(__name__)

__all__ = [
    "ConfirmStatus",
    "Confirmation",
    "SatResult",
    "SatStatus",
    "SearchBudget",
    "confirm_value",
    "degree_floor_pruner",
    "exact_sat",
    "seed_upper_bound",
    "upper_bound",
]

_CHECKPOINT_INTERVAL = 5.0  # seconds between checkpoint rewrites
_FLUSH_EVERY = 64  # worker nodes per shared-counter update


class SatStatus(str, Enum):
    EXACT = "Exact"
    UPPER_BOUND_ONLY = "UpperBoundOnly"
    BUDGET_EXCEEDED = "BudgetExceeded"


@dataclass
class SatResult:
    n: int
    pattern: MultipartitePattern
    status: SatStatus
    value: int
    witness: Graph
    explored: int
    elapsed: float
    source: str = ""

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "pattern": str(self.pattern),
            "status": self.status.value,
            "value": self.value,
            "witness_g6": emit_graph6(self.witness),
            "explored": self.explored,
            "elapsed": round(self.elapsed, 3),
        }


class ConfirmStatus(str, Enum):
    CONFIRMED = "Confirmed"
    REFUTED_WITH_WITNESS = "RefutedWithWitness"
    UNWITNESSED = "Unwitnessed"
    INCONCLUSIVE = "Inconclusive"


@dataclass
class Confirmation:
    n: int
    pattern: MultipartitePattern
    claimed: int
    status: ConfirmStatus
    witness: Optional[Graph]
    below_search_complete: bool
    explored: int
    elapsed: float
    progress: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "pattern": str(self.pattern),
            "claimed": self.claimed,
            "status": self.status.value,
            "witness_g6": emit_graph6(self.witness) if self.witness is not None else None,
            "witness_edges": self.witness.edge_count if self.witness is not None else None,
            "below_search_complete": self.below_search_complete,
            "explored": self.explored,
            "elapsed": round(self.elapsed, 3),
            "progress": self.progress,
        }


def degree_floor_pruner(n: int, pattern: MultipartitePattern, rules: PruningRules) -> Optional[Pruner]:
    """Cut a subtree when raising every degree to the floor would exceed the cap.

    Every vertex of a saturated graph is universal or has degree at least the
    pattern's floor, and descendants only gain edges.
    """
    target = pattern.min_degree_floor if rules.min_degree else 0
    if rules.isolated_vertex and pattern.min_degree_floor >= 1:
        target = max(target, 1)
    target = min(target, n - 1)
    if target <= 0:
        return None

    def prune(graph: Graph, cap: int) -> bool:
        deficit = sum(target - d for d in graph.degrees() if d < target)
        return graph.edge_count + (deficit + 1) // 2 > cap

    return prune


def seed_upper_bound(n: int, pattern: MultipartitePattern, seed: int = DEFAULT_SEED,
                     runs: int = GREEDY_SEEDS) -> Optional[Tuple[Graph, str]]:
    """Sparsest verified saturated graph among the constructions and greedy runs."""
    candidates: List[Tuple[Graph, str]] = []
    if pattern.is_k33:
        if n in SMALL_WITNESS_RANGE:
            candidates.append((small_witness(n).graph, f"small:{n}"))
        if n >= GN_MIN_N:
            candidates.append((gn(n).graph, f"gn:{n}"))
        if n >= EDGE_JOIN_CYCLE_MIN_N:
            candidates.append((edge_join_cycle(n).graph, f"edge-join-cycle:{n}"))
    if pattern.is_clique and pattern.r >= 3 and n >= pattern.r:
        k = pattern.r - 1
        candidates.append((ehm(n, k).graph, f"ehm:{n},{k}"))

    greedy = greedy_upper_bound(n, pattern, seed, runs)
    if greedy is not None:
        candidates.append((greedy, f"greedy:{seed}"))

    verified = [item for item in candidates if is_saturated(item[0], pattern)]
    if not verified:
        return None
    return min(verified, key=lambda item: item[0].edge_count)


@dataclass
class _SearchOutcome:
    best: Optional[Graph]
    explored: int
    complete: bool
    stop_reason: Optional[str]
    elapsed: float

    def progress(self) -> Dict[str, Any]:
        return {
            "nodes_explored": self.explored,
            "elapsed": round(self.elapsed, 3),
            "complete": self.complete,
            "stop_reason": self.stop_reason,
        }


def _witness_key(graph: Graph) -> Tuple[int, str]:
    return graph.edge_count, str(canonical_code(graph))


# -- worker side -----------------------------------------------------------

_WORKER: Dict[str, Any] = {}


class _SharedTracker:
    """Budget tracker whose node count lives in shared memory."""

    def __init__(self, counter, max_nodes: int, deadline: float):
        self.counter = counter
        self.max_nodes = max_nodes
        self.deadline = deadline
        self.local = 0

    def flush(self) -> int:
        with self.counter.get_lock():
            self.counter.value += self.local
            total = self.counter.value
        self.local = 0
        return total

    def charge(self, count: int = 1) -> None:
        self.local += count
        if self.local < _FLUSH_EVERY:
            return
        if self.flush() >= self.max_nodes:
            raise BudgetExceededError(f"node budget of {self.max_nodes} exhausted")
        if time.time() >= self.deadline:
            raise BudgetExceededError("time budget exhausted")


def _init_worker(n: int, pattern: MultipartitePattern, rules: PruningRules, cap, counter,
                 max_nodes: int, deadline: float) -> None:
    _WORKER.update(n=n, pattern=pattern, rules=rules, cap=cap, counter=counter,
                   max_nodes=max_nodes, deadline=deadline)


def _solve_subtree(task: Tuple[int, str]) -> Tuple[int, Optional[str], bool, Optional[str]]:
    index, g6 = task
    n, pattern, rules, cap = _WORKER["n"], _WORKER["pattern"], _WORKER["rules"], _WORKER["cap"]
    tracker = _SharedTracker(_WORKER["counter"], _WORKER["max_nodes"], _WORKER["deadline"])
    found: List[Graph] = []

    def visitor(graph: Graph) -> int:
        edges = graph.edge_count
        if edges <= cap.value and is_saturated(graph, pattern, rules, assume_free=True):
            found.append(graph)
            with cap.get_lock():
                if edges < cap.value:
                    cap.value = edges
        return cap.value

    stats = enumerate_ffree(n, pattern, cap.value, visitor, tracker=tracker, roots=[parse_graph6(g6)],
                            prune=degree_floor_pruner(n, pattern, rules))
    tracker.flush()
    best = min(found, key=_witness_key) if found else None
    return index, emit_graph6(best) if best is not None else None, stats.complete, stats.stop_reason


# -- driver ----------------------------------------------------------------


def _branch_and_bound(n: int, pattern: MultipartitePattern, cap: int, rules: PruningRules,
                      budget: SearchBudget, threads: int, split_depth: int,
                      checkpoint_path: Optional[Path], show_progress: bool) -> _SearchOutcome:
    """Sparsest saturated graph with at most ``cap`` edges, if any."""
    tracker = BudgetTracker(budget)
    if cap < 0:
        return _SearchOutcome(None, 0, True, None, tracker.elapsed())

    prune = degree_floor_pruner(n, pattern, rules)
    initial_cap = cap
    best: Optional[Graph] = None

    def visitor(graph: Graph) -> Optional[int]:
        nonlocal best, cap
        edges = graph.edge_count
        if edges <= cap and is_saturated(graph, pattern, rules, assume_free=True):
            if best is None or _witness_key(graph) < _witness_key(best):
                best = graph
            if edges < cap:
                cap = edges
                logger.info(f"Saturated graph with {edges} edges found; searching up to {edges}")
            return cap
        return None

    resumed = read_checkpoint(checkpoint_path) if checkpoint_path is not None else None
    if resumed is not None:
        if resumed.n != n or resumed.pattern != str(pattern) or resumed.cap != initial_cap:
            msg = (f"Checkpoint {checkpoint_path} belongs to n={resumed.n}, pattern {resumed.pattern}, "
                   f"cap {resumed.cap}; this run is n={n}, pattern {pattern}, cap {initial_cap}")
            logger.error(msg)
            raise ValueError(msg)
        if resumed.best_g6 is not None:
            stored = parse_graph6(resumed.best_g6)
            if stored.n != n or not is_saturated(stored, pattern):
                logger.error(f"Checkpoint {checkpoint_path} holds an invalid witness")
                raise ValueError(f"Checkpoint {checkpoint_path} holds an invalid witness")
            best, cap = stored, min(cap, stored.edge_count)
        frontier = [parse_graph6(g6) for _, g6 in resumed.frontier]
        logger.info(f"Resuming from {checkpoint_path} with {len(frontier)} frontier subtrees")
    else:
        try:
            frontier = expand_frontier(n, pattern, split_depth, cap, visitor, tracker=tracker, prune=prune)
        except BudgetExceededError as e:
            return _SearchOutcome(best, tracker.nodes, False, str(e), tracker.elapsed())
        logger.info(f"Frontier at depth {split_depth}: {len(frontier)} subtrees under cap {cap}")

    done: Set[int] = set()

    def save() -> None:
        if checkpoint_path is None:
            return
        remaining = [(g.edge_count, emit_graph6(g)) for i, g in enumerate(frontier) if i not in done]
        write_checkpoint(checkpoint_path, Checkpoint(
            n=n, pattern=str(pattern), cap=initial_cap, frontier=remaining,
            best_edges=best.edge_count if best is not None else None,
            best_g6=emit_graph6(best) if best is not None else None,
        ))

    save()
    last_save = time.time()
    complete, stop_reason = True, None
    explored_elsewhere = 0

    with tqdm(total=len(frontier), desc=f"sat({n}, {pattern.label})", unit="subtree",
              disable=not show_progress) as bar:
        if threads <= 1:
            for index, root in enumerate(frontier):
                stats = enumerate_ffree(n, pattern, cap, visitor, tracker=tracker, roots=[root], prune=prune)
                if not stats.complete:
                    complete, stop_reason = False, stats.stop_reason
                    break
                done.add(index)
                bar.update(1)
                if time.time() - last_save >= _CHECKPOINT_INTERVAL:
                    save()
                    last_save = time.time()
        else:
            shared_cap = Value("i", cap)
            counter = Value("q", 0)
            tasks = [(index, emit_graph6(root)) for index, root in enumerate(frontier)]
            node_allowance = max(1, budget.max_nodes - tracker.nodes)
            with Pool(processes=threads, initializer=_init_worker,
                      initargs=(n, pattern, rules, shared_cap, counter, node_allowance, tracker.deadline)) as pool:
                for index, g6, finished, reason in pool.imap_unordered(_solve_subtree, tasks):
                    if g6 is not None:
                        candidate = parse_graph6(g6)
                        if best is None or _witness_key(candidate) < _witness_key(best):
                            best = candidate
                            logger.info(f"Worker found a saturated graph with {candidate.edge_count} edges")
                    if finished:
                        done.add(index)
                    elif complete:
                        complete, stop_reason = False, reason
                    bar.update(1)
                    if time.time() - last_save >= _CHECKPOINT_INTERVAL:
                        save()
                        last_save = time.time()
            explored_elsewhere = counter.value

    save()
    return _SearchOutcome(best, tracker.nodes + explored_elsewhere, complete, stop_reason, tracker.elapsed())


def _check_parallelism(threads: int, split_depth: int) -> None:
    if threads < 1:
        logger.error(f"threads must be at least 1, got {threads}")
        raise ValueError(f"threads must be at least 1, got {threads}")
    if split_depth < 0:
        logger.error(f"split_depth must not be negative, got {split_depth}")
        raise ValueError(f"split_depth must not be negative, got {split_depth}")


def _seed_or_fail(n: int, pattern: MultipartitePattern, seed: int, runs: int) -> Tuple[Graph, str]:
    seeded = seed_upper_bound(n, pattern, seed, runs)
    if seeded is None:
        logger.error(f"No {pattern.label}-saturated graph on {n} vertices exists")
        raise ValueError(f"No {pattern.label}-saturated graph on {n} vertices exists")
    return seeded


def exact_sat(
    n: int,
    pattern: MultipartitePattern,
    budget: Optional[SearchBudget] = None,
    *,
    threads: int = SEARCH_THREADS,
    split_depth: int = SPLIT_DEPTH,
    seed: int = DEFAULT_SEED,
    greedy_runs: int = GREEDY_SEEDS,
    checkpoint: Optional[Path] = None,
    rules: Optional[PruningRules] = None,
    upper_bound_only: bool = False,
    show_progress: bool = SHOW_PROGRESS,
) -> SatResult:
    """sat(n, pattern) with a verified witness.

    Exact when every pattern-free graph below the incumbent has been visited;
    BudgetExceeded with the best bound otherwise.
    """
    validate_vertex_count(n)
    _check_parallelism(threads, split_depth)
    budget = budget or SearchBudget()
    rules = rules if rules is not None else PruningRules.for_pattern(pattern)
    started = time.time()

    incumbent, source = _seed_or_fail(n, pattern, seed, greedy_runs)
    logger.info(f"Upper bound for sat({n}, {pattern.label}): {incumbent.edge_count} edges from {source}")
    if upper_bound_only:
        return SatResult(n, pattern, SatStatus.UPPER_BOUND_ONLY, incumbent.edge_count, incumbent, 0,
                         time.time() - started, source)

    cap = incumbent.edge_count - 1
    truncated = budget.edge_cap is not None and budget.edge_cap < cap
    if truncated:
        cap = budget.edge_cap

    outcome = _branch_and_bound(n, pattern, cap, rules, budget, threads, split_depth,
                                Path(checkpoint) if checkpoint is not None else None, show_progress)
    if outcome.best is not None:
        incumbent, source = outcome.best, "search"

    verdict = check_saturated(incumbent, pattern)
    if not verdict.is_saturated:
        logger.error(f"Witness from {source} failed re-verification: {verdict.kind}")
        raise RuntimeError(f"Witness from {source} failed re-verification: {verdict.kind}")

    exact = outcome.complete and (not truncated or outcome.best is not None)
    status = SatStatus.EXACT if exact else SatStatus.BUDGET_EXCEEDED
    if not exact:
        logger.warning(f"sat({n}, {pattern.label}) not settled: {outcome.stop_reason or 'edge cap below incumbent'}")
    return SatResult(n, pattern, status, incumbent.edge_count, incumbent, outcome.explored,
                     time.time() - started, source)


def upper_bound(n: int, pattern: MultipartitePattern, seed: int = DEFAULT_SEED,
                greedy_runs: int = GREEDY_SEEDS) -> SatResult:
    """Constructions and greedy runs only; no enumeration."""
    return exact_sat(n, pattern, seed=seed, greedy_runs=greedy_runs, upper_bound_only=True)


def confirm_value(
    n: int,
    pattern: MultipartitePattern,
    claimed: int,
    budget: Optional[SearchBudget] = None,
    *,
    threads: int = SEARCH_THREADS,
    split_depth: int = SPLIT_DEPTH,
    seed: int = DEFAULT_SEED,
    greedy_runs: int = GREEDY_SEEDS,
    checkpoint: Optional[Path] = None,
    rules: Optional[PruningRules] = None,
    show_progress: bool = SHOW_PROGRESS,
) -> Confirmation:
    """Check that ``claimed`` is sat(n, pattern): a witness at ``claimed`` and none below."""
    validate_vertex_count(n)
    _check_parallelism(threads, split_depth)
    if claimed < 0:
        logger.error(f"Claimed value must not be negative, got {claimed}")
        raise ValueError(f"Claimed value must not be negative, got {claimed}")
    budget = budget or SearchBudget()
    rules = rules if rules is not None else PruningRules.for_pattern(pattern)
    started = time.time()

    def result(status: ConfirmStatus, witness: Optional[Graph], complete: bool,
               explored: int = 0, progress: Optional[Dict[str, Any]] = None) -> Confirmation:
        return Confirmation(n, pattern, claimed, status, witness, complete, explored,
                            time.time() - started, progress or {})

    at_claim: Optional[Graph] = None
    seeded = seed_upper_bound(n, pattern, seed, greedy_runs)
    if seeded is not None:
        graph, source = seeded
        if graph.edge_count < claimed:
            logger.info(f"{source} is saturated with {graph.edge_count} < {claimed} edges")
            return result(ConfirmStatus.REFUTED_WITH_WITNESS, graph, False)
        if graph.edge_count == claimed:
            at_claim = graph

    cap = claimed - 1 if at_claim is not None else claimed
    outcome = _branch_and_bound(n, pattern, cap, rules, budget, threads, split_depth,
                                Path(checkpoint) if checkpoint is not None else None, show_progress)
    found = outcome.best
    if found is not None and found.edge_count < claimed:
        return result(ConfirmStatus.REFUTED_WITH_WITNESS, found, outcome.complete, outcome.explored, outcome.progress())
    if found is not None:
        at_claim = found

    if not outcome.complete:
        return result(ConfirmStatus.INCONCLUSIVE, at_claim, False, outcome.explored, outcome.progress())
    status = ConfirmStatus.CONFIRMED if at_claim is not None else ConfirmStatus.UNWITNESSED
    return result(status, at_claim, True, outcome.explored, outcome.progress())
