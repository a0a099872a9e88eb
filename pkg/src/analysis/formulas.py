"""
Closed forms and bounds for saturation numbers of complete multipartite graphs.

Exact values are emitted only inside the range their theorem covers; outside
it the answer downgrades to bounds.
"""

import csv
import io
import logging
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence

from src.analysis.pattern import MultipartitePattern

logger = logging.getLogger(__name__)


class FormulaKind(str, Enum):
    EXACT = "Exact"
    BOUNDS = "Bounds"
    ASYMPTOTIC = "AsymptoticOnly"
    CONJECTURED = "Conjectured"


@dataclass(frozen=True)
class SatFormulaAnswer:
    kind: FormulaKind
    value: Optional[int] = None
    lower: Optional[int] = None
    upper: Optional[int] = None
    coefficient: Optional[Fraction] = None
    valid_from: Optional[int] = None
    valid_to: Optional[int] = None
    source: str = ""

    @property
    def is_exact(self) -> bool:
        return self.kind is FormulaKind.EXACT

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": self.kind.value,
            "value": self.value,
            "lower": self.lower,
            "upper": self.upper,
            "coefficient": str(self.coefficient) if self.coefficient is not None else None,
            "valid_from": self.valid_from,
            "valid_to": self.valid_to,
            "source": self.source,
        }


def _exact(value: int, source: str, valid_from: int, valid_to: Optional[int] = None) -> SatFormulaAnswer:
    return SatFormulaAnswer(FormulaKind.EXACT, value=value, valid_from=valid_from, valid_to=valid_to, source=source)


def _check_bfp_range(n: int, parts: Sequence[int]) -> int:
    if len(parts) < 2:
        logger.error(f"The general bounds need at least two parts, got {tuple(parts)}")
        raise ValueError(f"The general bounds need at least two parts, got {tuple(parts)}")
    if list(parts) != sorted(parts) or any(size <= 0 for size in parts):
        logger.error(f"Part sizes must be positive and ascending, got {tuple(parts)}")
        raise ValueError(f"Part sizes must be positive and ascending, got {tuple(parts)}")
    p = sum(parts[:-1]) - 1
    if n <= p:
        logger.error(f"The general bounds need n > p = {p}, got n={n}")
        raise ValueError(f"The general bounds need n > p = {p}, got n={n}")
    return p


def bfp_upper(n: int, parts: Sequence[int]) -> int:
    """C(p,2) + p(n-p) + ceil((s_r-1)(n-p)/2 - s_r^2/8) with p = s_1 + ... + s_{r-1} - 1."""
    p = _check_bfp_range(n, parts)
    s_r = parts[-1]
    tail = Fraction((s_r - 1) * (n - p), 2) - Fraction(s_r * s_r, 8)
    return math.comb(p, 2) + p * (n - p) + math.ceil(tail)


def bfp_coefficient(parts: Sequence[int]) -> Fraction:
    """Leading coefficient s_1 + ... + s_{r-1} + s_r/2 - 3/2."""
    return sum(parts[:-1]) + Fraction(parts[-1], 2) - Fraction(3, 2)


def bfp_leading(n: int, parts: Sequence[int]) -> Fraction:
    """Leading term of the asymptotic value; the O(n^{3/4}) error is not computable."""
    _check_bfp_range(n, parts)
    return bfp_coefficient(parts) * n


def asymptotic_sat(n: int, pattern: MultipartitePattern) -> SatFormulaAnswer:
    return SatFormulaAnswer(
        FormulaKind.ASYMPTOTIC,
        coefficient=bfp_coefficient(pattern.parts),
        source="leading term of the general multipartite asymptotics; O(n^{3/4}) slack omitted",
    )


def _is_cocktail_party(pattern: MultipartitePattern) -> bool:
    return pattern.r >= 3 and all(size == 2 for size in pattern.parts)


def known_sat(n: int, pattern: MultipartitePattern) -> SatFormulaAnswer:
    """Best statement available for sat(n, pattern)."""
    if n < 1:
        logger.error(f"n must be positive, got {n}")
        raise ValueError(f"n must be positive, got {n}")

    if n < pattern.total:
        return _exact(math.comb(n, 2), "no copy fits, so only K_n is saturated", 1, pattern.total - 1)

    if pattern.r == 1:
        # every n-vertex graph contains an independent s-set here
        return SatFormulaAnswer(FormulaKind.BOUNDS, source="no saturated graph exists")

    if pattern.is_clique:
        k = pattern.r - 1
        return _exact((k - 1) * n - math.comb(k, 2), f"clique saturation, K_{k + 1}", k + 1)

    if pattern.parts == (2, 2) and n >= 5:
        return _exact((3 * n - 5) // 2, "C_4 saturation", 5)

    if pattern.parts == (2, 3) and n >= 5:
        return _exact(2 * n - 3, "K_{2,3} saturation", 5)

    if pattern.is_k33:
        if n <= 8:
            return _exact(2 * n, "K_{3,3} saturation, small orders", 6, 8)
        return _exact(3 * n - 9, "K_{3,3} saturation", 9)

    if _is_cocktail_party(pattern):
        r = pattern.r
        value = math.ceil(Fraction((4 * r - 5) * n - 4 * r * r + 6 * r - 1, 2))
        return SatFormulaAnswer(FormulaKind.CONJECTURED, value=value, source=f"conjectured value for K_{{2^{r}}}")

    return SatFormulaAnswer(
        FormulaKind.BOUNDS,
        upper=bfp_upper(n, pattern.parts),
        coefficient=bfp_coefficient(pattern.parts),
        source="general multipartite upper bound (large n)",
    )


@dataclass(frozen=True)
class FormulaRow:
    n: int
    pattern: str
    answer: SatFormulaAnswer
    bfp_upper: Optional[int]

    @property
    def gap(self) -> Optional[int]:
        """bfp_upper minus the exact value, where both exist."""
        if self.bfp_upper is None or self.answer.value is None or not self.answer.is_exact:
            return None
        return self.bfp_upper - self.answer.value

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "pattern": self.pattern,
            "kind": self.answer.kind.value,
            "value": self.answer.value,
            "lower": self.answer.lower,
            "upper": self.answer.upper,
            "bfp_upper": self.bfp_upper,
            "gap": self.gap,
        }


TABLE_COLUMNS = ("n", "pattern", "kind", "value", "lower", "upper", "bfp_upper", "gap")


def formula_table(pattern: MultipartitePattern, n_from: int, n_to: int) -> List[FormulaRow]:
    if n_from < 1 or n_to < n_from:
        logger.error(f"Invalid table range [{n_from}, {n_to}]")
        raise ValueError(f"Invalid table range [{n_from}, {n_to}]")

    rows = []
    for n in range(n_from, n_to + 1):
        upper = None
        if pattern.r >= 2 and n >= pattern.total:
            upper = bfp_upper(n, pattern.parts)
        rows.append(FormulaRow(n=n, pattern=str(pattern), answer=known_sat(n, pattern), bfp_upper=upper))
    return rows


def _cell(value: Any) -> str:
    return "" if value is None else str(value)


def format_table_csv(rows: Sequence[FormulaRow]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(TABLE_COLUMNS)
    for row in rows:
        data = row.to_dict()
        writer.writerow([_cell(data[column]) for column in TABLE_COLUMNS])
    return buffer.getvalue()


def format_table_text(rows: Sequence[FormulaRow]) -> str:
    cells = [list(TABLE_COLUMNS)]
    for row in rows:
        data = row.to_dict()
        cells.append([_cell(data[column]) or "-" for column in TABLE_COLUMNS])
    widths = [max(len(line[i]) for line in cells) for i in range(len(TABLE_COLUMNS))]
    return "\n".join("  ".join(text.rjust(width) for text, width in zip(line, widths)) for line in cells)
