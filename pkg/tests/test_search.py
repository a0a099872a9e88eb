import itertools
import math

import networkx as nx
import pytest

from src.analysis.pattern import K33, MultipartitePattern, contains
from src.analysis.saturation import PruningRules, is_saturated
from src.core.budget import BudgetTracker, SearchBudget
from src.graphs.canonical import canonical_code
from src.graphs.constructions import small_witness
from src.graphs.graph import Graph, empty_graph
from src.graphs.graph6 import emit_graph6, parse_graph6
from src.search.checkpoint import Checkpoint, read_checkpoint, write_checkpoint
from src.search.engine import (
    ConfirmStatus,
    _branch_and_bound,
    SatStatus,
    confirm_value,
    degree_floor_pruner,
    exact_sat,
    seed_upper_bound,
    upper_bound,
)
from src.search.enumerate import augmentations, enumerate_ffree, expand_frontier, is_canonical_augmentation
from src.search.greedy import CORE_PERIOD, greedy_sample, greedy_saturate, greedy_upper_bound, sparse_start
from src.utils.utils import BudgetExceededError

TRIANGLE = MultipartitePattern.clique(3)
C4 = MultipartitePattern.of(2, 2)
K23 = MultipartitePattern.of(2, 3)


def labeled_graphs(n):
    pairs = list(itertools.combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield Graph.from_edges(n, (pair for i, pair in enumerate(pairs) if mask >> i & 1))


def class_count(graphs_list):
    reps = []
    for graph in graphs_list:
        nx_graph = graph.to_networkx()
        if not any(nx.is_isomorphic(nx_graph, rep) for rep in reps):
            reps.append(nx_graph)
    return len(reps)


def collect(n, pattern, cap=None):
    seen = []
    cap = math.comb(n, 2) if cap is None else cap

    def visitor(graph):
        seen.append(graph)

    stats = enumerate_ffree(n, pattern, cap, visitor)
    return seen, stats


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_enumeration_matches_brute_force(n):
    seen, stats = collect(n, MultipartitePattern.clique(n + 1))
    assert stats.complete
    assert stats.visited == len(seen) == class_count(labeled_graphs(n))
    assert sum(stats.by_edges.values()) == stats.visited


def test_enumeration_class_counts():
    assert collect(4, MultipartitePattern.clique(5))[1].visited == 11
    assert collect(5, MultipartitePattern.clique(6))[1].visited == 34


@pytest.mark.parametrize("n,pattern", [(4, TRIANGLE), (5, TRIANGLE), (5, C4), (6, K33)])
def test_pattern_free_enumeration_matches_brute_force(n, pattern):
    seen, stats = collect(n, pattern)
    expected = class_count(g for g in labeled_graphs(n) if contains(g, pattern) is None)
    assert stats.visited == expected
    assert all(contains(graph, pattern) is None for graph in seen)
    assert len({emit_graph6(g) for g in seen}) == len(seen)


def test_triangle_free_orders():
    assert collect(4, TRIANGLE)[1].visited == 7
    assert collect(5, TRIANGLE)[1].visited == 14


def test_edge_cap_limits_depth():
    seen, stats = collect(5, MultipartitePattern.clique(6), cap=2)
    assert {g.edge_count for g in seen} == {0, 1, 2}
    assert stats.visited == 4


def test_children_are_canonical_augmentations():
    parent = parse_graph6("Dhc")
    for child in augmentations(parent, MultipartitePattern.clique(6)):
        added = [e for e in child.edges() if not parent.has_edge(*e)]
        assert len(added) == 1
        assert is_canonical_augmentation(child, added[0])


def test_expand_frontier_returns_unvisited_level():
    frontier = expand_frontier(4, MultipartitePattern.clique(5), 2, 6)
    assert len(frontier) == 2
    assert {g.edge_count for g in frontier} == {2}
    assert sorted(max(g.degrees()) for g in frontier) == [1, 2]


def test_budget_stops_enumeration():
    stats = enumerate_ffree(7, K33, 21, budget=SearchBudget(max_nodes=50))
    assert not stats.complete
    assert "node budget" in stats.stop_reason


def test_tracker_raises_at_node_limit():
    tracker = BudgetTracker(SearchBudget(max_nodes=3))
    tracker.charge()
    tracker.charge()
    with pytest.raises(BudgetExceededError):
        tracker.charge()


@pytest.mark.parametrize("n", [6, 7])
def test_exact_k33_small(n):
    result = exact_sat(n, K33)
    assert result.status is SatStatus.EXACT
    assert result.value == 2 * n
    assert result.witness.edge_count == result.value
    assert is_saturated(result.witness, K33)


@pytest.mark.parametrize("n", range(3, 8))
def test_exact_triangle(n):
    result = exact_sat(n, TRIANGLE)
    assert (result.status, result.value) == (SatStatus.EXACT, n - 1)


@pytest.mark.parametrize("n", range(5, 8))
def test_exact_four_cycle(n):
    result = exact_sat(n, C4)
    assert (result.status, result.value) == (SatStatus.EXACT, (3 * n - 5) // 2)


@pytest.mark.parametrize("n", [5, 6])
def test_exact_k23(n):
    result = exact_sat(n, K23)
    assert (result.status, result.value) == (SatStatus.EXACT, 2 * n - 3)


def test_pruning_does_not_change_the_value():
    plain = exact_sat(7, K33, rules=PruningRules())
    pruned = exact_sat(7, K33, rules=PruningRules.for_pattern(K33))
    assert plain.value == pruned.value == 14
    assert pruned.explored <= plain.explored


def test_degree_floor_pruner():
    assert degree_floor_pruner(7, K33, PruningRules()) is None
    prune = degree_floor_pruner(7, K33, PruningRules(min_degree=True))
    assert prune(empty_graph(7), 6)
    assert not prune(empty_graph(7), 7)


def test_parallel_search_agrees():
    result = exact_sat(7, K33, threads=2, split_depth=2)
    assert (result.status, result.value) == (SatStatus.EXACT, 14)
    assert is_saturated(result.witness, K33)


def least_saturated(n, pattern, edges):
    saturated = []

    def visitor(graph):
        if graph.edge_count == edges and is_saturated(graph, pattern):
            saturated.append(graph)

    enumerate_ffree(n, pattern, edges, visitor)
    return min(saturated, key=lambda graph: str(canonical_code(graph)))


@pytest.mark.parametrize("threads", [1, 2])
def test_ties_resolve_to_least_canonical_code(threads):
    rules = PruningRules.for_pattern(K33)
    outcome = _branch_and_bound(7, K33, 15, rules, SearchBudget(), threads, 2, None, False)
    assert outcome.complete
    assert outcome.best.edge_count == 14
    assert canonical_code(outcome.best) == canonical_code(least_saturated(7, K33, 14))


def test_upper_bound_only():
    result = upper_bound(11, K33)
    assert result.status is SatStatus.UPPER_BOUND_ONLY
    assert result.value == 24
    assert result.source == "small:11"
    assert result.explored == 0


def test_seed_prefers_sparsest_construction():
    graph, source = seed_upper_bound(15, K33)
    assert (graph.edge_count, source) == (36, "gn:15")


def test_budget_exceeded_keeps_verified_bound():
    result = exact_sat(11, K33, SearchBudget(max_nodes=200))
    assert result.status is SatStatus.BUDGET_EXCEEDED
    assert result.value == 24
    assert is_saturated(result.witness, K33)
    payload = result.to_dict()
    assert payload["status"] == "BudgetExceeded"
    assert parse_graph6(payload["witness_g6"]).edge_count == 24


def test_edge_cap_below_incumbent_is_not_exact():
    result = exact_sat(7, K33, SearchBudget(edge_cap=10))
    assert result.status is SatStatus.BUDGET_EXCEEDED
    assert result.value == 14


def test_no_saturated_graph():
    with pytest.raises(ValueError):
        exact_sat(5, MultipartitePattern.of(3))


def test_confirm_true_value():
    confirmation = confirm_value(7, K33, 14)
    assert confirmation.status is ConfirmStatus.CONFIRMED
    assert confirmation.below_search_complete
    assert confirmation.witness.edge_count == 14


def test_confirm_refutes_high_claim():
    confirmation = confirm_value(7, K33, 15)
    assert confirmation.status is ConfirmStatus.REFUTED_WITH_WITNESS
    assert confirmation.witness.edge_count == 14


def test_confirm_low_claim_is_unwitnessed():
    confirmation = confirm_value(7, K33, 13)
    assert confirmation.status is ConfirmStatus.UNWITNESSED
    assert confirmation.witness is None
    assert confirmation.below_search_complete


def test_confirm_out_of_budget_is_inconclusive():
    confirmation = confirm_value(9, K33, 18, SearchBudget(max_nodes=100))
    assert confirmation.status is ConfirmStatus.INCONCLUSIVE
    assert confirmation.witness.edge_count == 18
    assert is_saturated(confirmation.witness, K33)
    assert confirmation.to_dict()["progress"]["complete"] is False


def test_confirm_rejects_negative_claim():
    with pytest.raises(ValueError):
        confirm_value(7, K33, -1)


def test_greedy_runs_at_nine_vertices():
    sizes = []
    for seed in range(500):
        graph = greedy_sample(9, K33, seed)
        assert is_saturated(graph, K33)
        sizes.append(graph.edge_count)
    assert min(sizes) == 18
    assert max(sizes) > 18


def test_sparse_start_thins_the_core():
    core_edges = small_witness(9).graph.edge_count
    kept = [sparse_start(9, K33, seed).edge_count for seed in range(CORE_PERIOD)]
    assert kept[0] == core_edges
    assert kept[-1] == 0
    assert kept == sorted(kept, reverse=True)
    assert all(contains(sparse_start(9, K33, seed), K33) is None for seed in range(20))
    assert sparse_start(8, K23, 3) == empty_graph(8)


def test_greedy_is_reproducible():
    assert greedy_saturate(empty_graph(8), K33, 7) == greedy_saturate(empty_graph(8), K33, 7)
    assert greedy_sample(10, K33, 12) == greedy_sample(10, K33, 12)


def test_greedy_rejects_start_containing_pattern():
    with pytest.raises(ValueError):
        greedy_saturate(parse_graph6("E~~w"), K33)
    assert greedy_upper_bound(5, MultipartitePattern.of(3)) is None


def test_checkpoint_round_trip(tmp_path):
    path = tmp_path / "run.ckpt"
    assert read_checkpoint(path) is None
    checkpoint = Checkpoint(n=7, pattern="3,3", cap=13, frontier=[(3, "F??F?")], best_edges=14, best_g6="F^vhO")
    write_checkpoint(path, checkpoint)
    assert read_checkpoint(path) == checkpoint
    assert path.read_text(encoding="utf-8").startswith("# n 7\n# pattern 3,3\n# cap 13\n# best 14 F^vhO\n")


def test_malformed_checkpoint(tmp_path):
    path = tmp_path / "bad.ckpt"
    path.write_text("# n 7\n# pattern 3,3\n# cap 13\nthree F??F?\n", encoding="utf-8")
    with pytest.raises(ValueError):
        read_checkpoint(path)
    path.write_text("3 F??F?\n", encoding="utf-8")
    with pytest.raises(ValueError):
        read_checkpoint(path)


def test_search_resumes_from_checkpoint(tmp_path):
    path = tmp_path / "k33-7.ckpt"
    first = exact_sat(7, K33, checkpoint=path)
    assert path.exists()
    assert read_checkpoint(path).frontier == []

    resumed = exact_sat(7, K33, checkpoint=path)
    assert (resumed.status, resumed.value) == (first.status, first.value) == (SatStatus.EXACT, 14)
    assert resumed.explored == 0


def test_checkpoint_for_another_run_is_rejected(tmp_path):
    path = tmp_path / "k33-7.ckpt"
    exact_sat(7, K33, checkpoint=path)
    with pytest.raises(ValueError):
        exact_sat(6, K33, checkpoint=path)


@pytest.mark.slow
def test_exact_k33_eight():
    result = exact_sat(8, K33, SearchBudget(max_time=1800))
    assert (result.status, result.value) == (SatStatus.EXACT, 16)


@pytest.mark.slow
def test_confirm_k33_nine():
    confirmation = confirm_value(9, K33, 18, SearchBudget(max_time=7200))
    assert confirmation.status in (ConfirmStatus.CONFIRMED, ConfirmStatus.INCONCLUSIVE)
    assert confirmation.witness.edge_count == 18
    assert is_saturated(confirmation.witness, K33)
