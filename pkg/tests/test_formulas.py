import csv
import io
from fractions import Fraction

import pytest

from src.analysis.formulas import (
    TABLE_COLUMNS,
    FormulaKind,
    asymptotic_sat,
    bfp_coefficient,
    bfp_leading,
    bfp_upper,
    format_table_csv,
    format_table_text,
    formula_table,
    known_sat,
)
from src.analysis.pattern import K33, MultipartitePattern
from src.search.engine import SatStatus, exact_sat


def piecewise_k33(n):
    return 2 * n if n <= 8 else 3 * n - 9


@pytest.mark.parametrize("n", range(6, 101))
def test_k33_values(n):
    answer = known_sat(n, K33)
    assert answer.kind is FormulaKind.EXACT
    assert answer.value == piecewise_k33(n)


def test_k33_range_markers():
    assert (known_sat(7, K33).valid_from, known_sat(7, K33).valid_to) == (6, 8)
    assert (known_sat(40, K33).valid_from, known_sat(40, K33).valid_to) == (9, None)


def test_general_upper_bound_exceeds_k33_value_by_three():
    for n in range(9, 101):
        assert bfp_upper(n, (3, 3)) == 3 * n - 6
        assert bfp_upper(n, (3, 3)) - known_sat(n, K33).value == 3
    for n in range(6, 9):
        assert bfp_upper(n, (3, 3)) - known_sat(n, K33).value == n - 6


def test_general_upper_bound_values():
    assert bfp_upper(20, (3, 3)) == 54
    assert bfp_upper(5, (1, 1)) == 0
    assert bfp_upper(10, (2, 3)) == 17
    assert bfp_upper(10, (2, 3)) == known_sat(10, MultipartitePattern.of(2, 3)).value


@pytest.mark.parametrize("n,parts", [(2, (3, 3)), (10, (3,)), (10, (3, 2)), (10, (0, 3))])
def test_general_upper_bound_rejects(n, parts):
    with pytest.raises(ValueError):
        bfp_upper(n, parts)


def test_leading_coefficient():
    assert bfp_coefficient((3, 3)) == 3
    assert bfp_coefficient((1, 2, 4)) == Fraction(7, 2)
    assert bfp_leading(10, (3, 3)) == 30
    answer = asymptotic_sat(100, K33)
    assert answer.kind is FormulaKind.ASYMPTOTIC and answer.coefficient == 3


def test_other_known_families():
    assert known_sat(6, MultipartitePattern.clique(3)).value == 5
    assert known_sat(7, MultipartitePattern.clique(4)).value == 11
    assert known_sat(5, MultipartitePattern.of(2, 2)).value == 5
    assert known_sat(7, MultipartitePattern.of(2, 2)).value == 8
    assert known_sat(6, MultipartitePattern.of(2, 3)).value == 9


def test_small_orders_only_admit_the_complete_graph():
    answer = known_sat(4, K33)
    assert answer.is_exact and answer.value == 6


def test_single_part_has_no_value():
    answer = known_sat(5, MultipartitePattern.of(3))
    assert answer.kind is FormulaKind.BOUNDS
    assert answer.value is None and answer.upper is None


def test_cocktail_party_is_conjectured():
    answer = known_sat(10, MultipartitePattern.of(2, 2, 2))
    assert answer.kind is FormulaKind.CONJECTURED
    assert answer.value == 26
    assert not answer.is_exact


def test_unknown_pattern_reports_upper_bound():
    answer = known_sat(20, MultipartitePattern.of(1, 3))
    assert answer.kind is FormulaKind.BOUNDS
    assert answer.upper == bfp_upper(20, (1, 3))


def test_rejects_nonpositive_n():
    with pytest.raises(ValueError):
        known_sat(0, K33)


def test_table_rows_and_gap():
    rows = formula_table(K33, 6, 15)
    assert [row.answer.value for row in rows] == [12, 14, 16, 18, 21, 24, 27, 30, 33, 36]
    assert [row.gap for row in rows] == [0, 1, 2, 3, 3, 3, 3, 3, 3, 3]


def test_table_rejects_bad_range():
    with pytest.raises(ValueError):
        formula_table(K33, 10, 9)
    with pytest.raises(ValueError):
        formula_table(K33, 0, 5)


def test_csv_emitter():
    rows = formula_table(K33, 9, 11)
    records = list(csv.DictReader(io.StringIO(format_table_csv(rows))))
    assert tuple(records[0]) == TABLE_COLUMNS
    assert [(r["n"], r["pattern"], r["kind"], r["value"], r["gap"]) for r in records] == [
        ("9", "3,3", "Exact", "18", "3"),
        ("10", "3,3", "Exact", "21", "3"),
        ("11", "3,3", "Exact", "24", "3"),
    ]
    assert records[0]["lower"] == ""


def test_text_emitter_aligns_columns():
    lines = format_table_text(formula_table(K33, 9, 10)).splitlines()
    assert len(lines) == 3
    assert len({len(line) for line in lines}) == 1
    assert lines[1].split()[:4] == ["9", "3,3", "Exact", "18"]


def test_four_cycle_below_its_range_is_not_exact():
    answer = known_sat(4, MultipartitePattern.of(2, 2))
    assert answer.kind is FormulaKind.BOUNDS
    assert answer.upper >= exact_sat(4, MultipartitePattern.of(2, 2)).value == 4


SMALL_CASES = (
    [(MultipartitePattern.clique(3), n) for n in range(3, 8)]
    + [(MultipartitePattern.clique(4), n) for n in range(4, 7)]
    + [(MultipartitePattern.of(2, 2), n) for n in range(4, 8)]
    + [(MultipartitePattern.of(2, 3), n) for n in (5, 6)]
    + [(K33, n) for n in (6, 7)]
)


@pytest.mark.parametrize("pattern,n", SMALL_CASES)
def test_known_values_agree_with_search(pattern, n):
    answer = known_sat(n, pattern)
    searched = exact_sat(n, pattern)
    assert searched.status is SatStatus.EXACT
    if answer.is_exact:
        assert answer.value == searched.value
        assert answer.valid_from <= n
    else:
        assert answer.upper is None or answer.upper >= searched.value
