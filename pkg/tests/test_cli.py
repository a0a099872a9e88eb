import csv
import io
import json
from pathlib import Path

import jsonschema
import pytest

from src.cli import EXIT_BUDGET, EXIT_OK, EXIT_USAGE, EXIT_VIOLATED, build_parser, main
from src.graphs.graph6 import parse_graph6

SCHEMAS = Path(__file__).resolve().parent.parent / "docs" / "schemas"


def schema(name):
    return json.loads((SCHEMAS / f"{name}.json").read_text(encoding="utf-8"))


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def run_json(capsys, *argv, kind=None):
    code, out = run(capsys, *argv)
    payload = json.loads(out)
    if kind is not None:
        jsonschema.validate(payload, schema(kind))
    return code, payload


def test_verify_construction(capsys):
    code, payload = run_json(capsys, "verify", "--construct", "gn:12", "--no-certificate", kind="verify")
    assert code == EXIT_OK
    assert payload["verdict"] == "saturated"
    assert payload["edges"] == 27
    assert payload["certificate_entries"] == 66 - 27
    assert payload["certificate_path"] is None


def test_verify_writes_certificate(capsys, tmp_path):
    code, payload = run_json(capsys, "verify", "--g6", "E^vg", "--certificate-dir", str(tmp_path), kind="verify")
    assert code == EXIT_OK
    path = Path(payload["certificate_path"])
    assert path.parent == tmp_path
    assert path.read_text(encoding="utf-8").startswith("# graph6 E^vg\n# pattern 3,3\n")


def test_verify_graph_containing_pattern(capsys):
    code, payload = run_json(capsys, "verify", "--g6", "E~~w", "--no-certificate", kind="verify")
    assert code == EXIT_VIOLATED
    assert payload["verdict"] == "contains_pattern"
    assert len(payload["witness"]) == 2


def test_verify_missing_edge(capsys):
    code, payload = run_json(capsys, "verify", "--g6", "E???", "--no-certificate", kind="verify")
    assert code == EXIT_VIOLATED
    assert payload["verdict"] == "missing_edge_fails"
    assert payload["edge"] == [0, 1]


def test_verify_other_pattern(capsys):
    code, payload = run_json(capsys, "verify", "--construct", "ehm:6,3", "-p", "1,1,1,1", "--no-certificate",
                             kind="verify")
    assert code == EXIT_OK
    assert payload["pattern"] == "1,1,1,1"


def test_verify_malformed_graph6(capsys):
    code, payload = run_json(capsys, "verify", "--g6", "@@@", "--no-certificate", kind="error")
    assert code == EXIT_USAGE
    assert payload["type"] == "validation_error"


def test_verify_graph6_file(capsys, tmp_path):
    path = tmp_path / "g.g6"
    path.write_text("# small:6\nE^vg\n", encoding="ascii")
    code, payload = run_json(capsys, "verify", "--g6-file", str(path), "--no-certificate")
    assert code == EXIT_OK
    assert payload["n"] == 6

    path.write_text("E^vg\nE~~w\n", encoding="ascii")
    code, _ = run(capsys, "verify", "--g6-file", str(path), "--no-certificate")
    assert code == EXIT_USAGE


def test_verify_graph6_stdin(capsys, monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO("E^vg\n"))
    code, payload = run_json(capsys, "verify", "--g6-file", "-", "--no-certificate")
    assert code == EXIT_OK
    assert payload["saturated"] is True


def test_graph_input_is_required(capsys):
    assert main(["verify"]) == EXIT_USAGE
    assert main(["verify", "--g6", "E^vg", "--construct", "gn:12"]) == EXIT_USAGE


def test_sat_small(capsys):
    code, payload = run_json(capsys, "sat", "-n", "6", kind="sat")
    assert code == EXIT_OK
    assert (payload["status"], payload["value"]) == ("Exact", 12)
    assert parse_graph6(payload["witness_g6"]).edge_count == 12


def test_sat_four_cycle(capsys):
    code, payload = run_json(capsys, "sat", "-n", "5", "-p", "2,2", kind="sat")
    assert code == EXIT_OK
    assert (payload["pattern"], payload["value"]) == ("2,2", 5)


def test_sat_upper_only(capsys):
    code, payload = run_json(capsys, "sat", "-n", "20", "--upper-only", kind="sat")
    assert code == EXIT_OK
    assert (payload["status"], payload["value"], payload["witness_source"]) == ("UpperBoundOnly", 51, "gn:20")


def test_sat_out_of_budget(capsys):
    code, payload = run_json(capsys, "sat", "-n", "11", "--max-nodes", "200", kind="sat")
    assert code == EXIT_BUDGET
    assert (payload["status"], payload["value"]) == ("BudgetExceeded", 24)


def test_sat_rejects_bad_budget(capsys):
    code, payload = run_json(capsys, "sat", "-n", "6", "--max-nodes", "0", kind="error")
    assert code == EXIT_USAGE
    assert main(["sat", "-n", "6", "--max-time", "soon"]) == EXIT_USAGE


@pytest.mark.parametrize("claimed,status,expected", [
    (14, "Confirmed", EXIT_OK),
    (15, "RefutedWithWitness", EXIT_VIOLATED),
    (13, "Unwitnessed", EXIT_VIOLATED),
])
def test_confirm(capsys, claimed, status, expected):
    code, payload = run_json(capsys, "confirm", "-n", "7", "--claimed", str(claimed), kind="confirm")
    assert code == expected
    assert payload["status"] == status


def test_confirm_inconclusive(capsys):
    code, payload = run_json(capsys, "confirm", "-n", "9", "--claimed", "18", "--max-nodes", "100", kind="confirm")
    assert code == EXIT_BUDGET
    assert payload["status"] == "Inconclusive"
    assert payload["witness_edges"] == 18


def test_analyze_auto_root(capsys):
    code, payload = run_json(capsys, "analyze", "--construct", "gn:12", kind="analyze")
    assert code == EXIT_OK
    assert payload["partition"]["a"] == 9
    assert payload["identities_hold"]
    assert payload["prop31"]["passed"]


def test_analyze_chosen_root(capsys):
    code, payload = run_json(capsys, "analyze", "--construct", "gn:12", "--min-degree-vertex", "10", kind="analyze")
    assert code == EXIT_OK
    assert payload["partition"]["V1"] == [2, 4, 10]
    assert payload["charge_bound"]["passed"]


def test_analyze_rejects_root_above_minimum_degree(capsys):
    code, payload = run_json(capsys, "analyze", "--construct", "gn:12", "--vertex", "0", kind="error")
    assert code == EXIT_USAGE


def test_analyze_bad_vertex_text():
    with pytest.raises(SystemExit):
        build_parser().parse_args(["analyze", "--g6", "E^vg", "--vertex", "first"])


def test_table_csv(capsys):
    code, out = run(capsys, "table", "--from", "6", "--to", "15")
    assert code == EXIT_OK
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [int(row["value"]) for row in rows] == [12, 14, 16, 18, 21, 24, 27, 30, 33, 36]


def test_table_json(capsys):
    code, payload = run_json(capsys, "table", "-p", "3,3", "--from", "9", "--to", "12", "--format", "json",
                             kind="table")
    assert code == EXIT_OK
    assert [row["gap"] for row in payload["rows"]] == [3, 3, 3, 3]


def test_table_text(capsys):
    code, out = run(capsys, "table", "--from", "6", "--to", "8", "--format", "text")
    assert code == EXIT_OK
    assert len(out.strip().splitlines()) == 4


def test_table_bad_range(capsys):
    code, _ = run_json(capsys, "table", "--from", "10", "--to", "5", kind="error")
    assert code == EXIT_USAGE


def test_construct_graph6(capsys):
    code, out = run(capsys, "construct", "gn:20", "--emit", "g6")
    assert code == EXIT_OK
    graph = parse_graph6(out.strip())
    assert (graph.n, graph.edge_count) == (20, 51)


def test_construct_json_verified(capsys):
    code, payload = run_json(capsys, "construct", "edge-join-cycle:8", "--verify", kind="construct")
    assert code == EXIT_OK
    assert payload["edges"] == payload["claimed_edges"] == 19
    assert payload["saturated"] is True
    assert set(payload["labels"]) >= {"x", "y"}


def test_construct_out_of_range(capsys):
    code, payload = run_json(capsys, "construct", "gn:11", kind="error")
    assert code == EXIT_USAGE
    assert "small:11" in payload["message"]
