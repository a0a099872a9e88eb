import random

import pytest
from hypothesis import given

from conftest import PROPERTY_SETTINGS, graphs
from src.analysis.audit import audit_prop31, k22_between
from src.analysis.discharging import (
    CHARGE_VARIANTS,
    IDENTITY_VARIANTS,
    build_partition,
    charge_bound_report,
    charge_g,
    charge_ledger,
    charge_summary,
    edge_identity,
    minimum_degree_vertices,
    prop32_check,
    resolve_root,
    tiebreak_vertices,
)
from src.analysis.halfint import ZERO, HalfInt
from src.analysis.pattern import K33
from src.analysis.report import analysis_report
from src.graphs.constructions import gn, small_witness
from src.graphs.graph import Graph, empty_graph, star_graph
from src.search.greedy import greedy_saturate
from src.utils.utils import NotSaturatedError


def random_graph(rng, n, density):
    return Graph.from_edges(n, ((u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < density))


def test_halfint_arithmetic():
    half = HalfInt.halves(1)
    assert half + half == 1
    assert str(HalfInt.halves(-5)) == "-5/2"
    assert str(HalfInt.from_int(3)) == "3"
    assert -half < ZERO < half
    assert 3 * half == HalfInt.halves(3)
    assert (2 - half).as_fraction() * 2 == 3
    assert not half.is_integer


@pytest.fixture
def g12():
    return gn(12).graph


def test_partition_of_g12(g12):
    partition = build_partition(g12, 10)
    assert partition.V1.to_list() == [2, 4, 10]
    assert partition.V2.to_list() == [0, 1, 3, 5]
    assert partition.V3.to_list() == []
    assert partition.V4.to_list() == [6, 7, 8, 9, 11]
    assert partition.V4_3.to_list() == []
    assert partition.V4_20.to_list() == [9, 11]
    assert partition.V4_21.to_list() == [6, 7, 8]
    assert partition.V2_squared.to_list() == [0, 1, 3, 5]
    assert partition.V2_by_support == {(1, 2): partition.V2}
    assert partition.class_of(7) == 4


def test_root_must_have_minimum_degree(g12):
    with pytest.raises(ValueError):
        build_partition(g12, 0)
    with pytest.raises(ValueError):
        build_partition(g12, 12)


def test_tiebreak_vertices_of_g12(g12):
    assert minimum_degree_vertices(g12) == [9, 10, 11]
    assert tiebreak_vertices(g12) == [9, 10, 11]
    assert resolve_root(g12, None) == 9
    assert resolve_root(g12, 11) == 11


def test_g12_ledgers_and_identities(g12):
    partition = build_partition(g12, 10)
    ledger = charge_ledger(g12, partition, "g")
    assert ledger.total == -2
    assert ledger.sums == {2: ZERO, 3: ZERO, 4: HalfInt.from_int(-2)}
    assert charge_g(g12, partition, 9) == -1
    for name in IDENTITY_VARIANTS:
        identity = edge_identity(g12, partition, name)
        assert identity.holds
        assert identity.lhs == 27


def test_summary_builds_each_ledger_once(g12, monkeypatch):
    partition = build_partition(g12, 10)
    expected = {name: edge_identity(g12, partition, name).to_dict() for name in IDENTITY_VARIANTS}
    built = []

    def counting_ledger(graph, partition, variant):
        built.append(variant)
        return charge_ledger(graph, partition, variant)

    monkeypatch.setattr("src.analysis.discharging.charge_ledger", counting_ledger)
    summary = charge_summary(g12, partition)
    assert sorted(built) == sorted(CHARGE_VARIANTS)
    assert summary["identities"] == expected
    assert summary["ledgers"]["g"]["total"] == "-2"


def test_identity_rejects_ledger_of_other_variant(g12):
    partition = build_partition(g12, 10)
    ledger = charge_ledger(g12, partition, "f")
    assert edge_identity(g12, partition, "two", ledger).holds
    with pytest.raises(ValueError):
        edge_identity(g12, partition, "three", ledger)


def test_g12_charge_bound_and_prop32(g12):
    partition = build_partition(g12, 10)
    report = charge_bound_report(g12, partition)
    assert report["applicable"]
    assert report["passed"]
    assert report["w_total"] == "-2"
    assert report["floor"] == "-5/2"

    prop32 = prop32_check(g12, partition)
    assert prop32.vacuous and prop32.passed


def test_charge_bound_needs_degree_two():
    graph = small_witness(6).graph
    partition = build_partition(graph, 0)
    assert charge_bound_report(graph, partition)["applicable"] is False


def test_unknown_variant(g12):
    partition = build_partition(g12, 10)
    with pytest.raises(ValueError):
        edge_identity(g12, partition, "four")
    with pytest.raises(ValueError):
        charge_ledger(g12, partition, "h")


def test_identities_on_seeded_random_graphs():
    rng = random.Random(20240611)
    for _ in range(1000):
        n = rng.randint(1, 20)
        graph = random_graph(rng, n, rng.choice([0.15, 0.3, 0.5, 0.8]))
        partition = build_partition(graph, resolve_root(graph, None))
        summary = charge_summary(graph, partition)
        assert summary["identities_hold"], summary["identities"]


@PROPERTY_SETTINGS
@given(graphs(max_n=12))
def test_identities_hold_for_every_minimum_degree_root(graph):
    for a in minimum_degree_vertices(graph):
        partition = build_partition(graph, a)
        assert all(edge_identity(graph, partition, name).holds for name in IDENTITY_VARIANTS)
        assert sorted(charge_ledger(graph, partition, v).variant for v in CHARGE_VARIANTS) == sorted(CHARGE_VARIANTS)


def saturated_samples():
    samples = [small_witness(n).graph for n in range(6, 12)]
    samples += [gn(n).graph for n in (12, 13, 16, 20)]
    samples += [greedy_saturate(empty_graph(9), K33, seed) for seed in range(5)]
    return samples


def test_structural_audit_passes_on_saturated_graphs():
    for graph in saturated_samples():
        for a in minimum_degree_vertices(graph):
            report = audit_prop31(graph, a)
            assert report.passed, report.to_dict()


def test_identities_on_constructions():
    for graph in saturated_samples():
        partition = build_partition(graph, resolve_root(graph, None))
        assert charge_summary(graph, partition)["identities_hold"]


def test_audit_requires_saturation():
    with pytest.raises(NotSaturatedError):
        audit_prop31(star_graph(7), 1)
    with pytest.raises(NotSaturatedError):
        prop32_check(star_graph(7), build_partition(star_graph(7), 1))


def test_k22_between_on_g12(g12):
    assert k22_between(g12, 0, 1) is not None


def test_report_on_unsaturated_graph():
    report = analysis_report(star_graph(6))
    assert report["saturated"] is False
    assert report["partition"]["V2"] == []
    assert report["prop31"] is None
    assert report["identities_hold"]


def test_report_on_g12(g12):
    report = analysis_report(g12, 10)
    assert report["saturated"]
    assert report["edges"] == 27
    assert report["prop31"]["passed"]
    assert report["charge_bound"]["passed"]
    assert report["partition"]["sizes"] == {"V1": 3, "V2": 4, "V3": 0, "V4": 5}
