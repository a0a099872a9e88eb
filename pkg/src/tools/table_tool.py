"""
Formula table tool
"""

import logging
from typing import Any, Dict

from src.analysis.formulas import format_table_csv, format_table_text, formula_table
from src.analysis.pattern import MultipartitePattern
from src.utils.utils import error_payload, safe_json_response

logger = logging.getLogger(__name__)


def build_table(pattern: str, n_from: int, n_to: int) -> Dict[str, Any]:
    """Rows of known values and bounds, plus CSV and aligned-text renderings."""
    try:
        target = MultipartitePattern.parse(pattern)
        rows = formula_table(target, n_from, n_to)
        return {
            "pattern": str(target),
            "from": n_from,
            "to": n_to,
            "rows": [row.to_dict() for row in rows],
            "csv": format_table_csv(rows),
            "text": format_table_text(rows),
        }

    except ValueError as e:
        logger.warning(f"Input validation failed: {e}")
        return error_payload("Invalid input", str(e), "validation_error")


async def formula_table_json(pattern: str, n_from: int, n_to: int) -> str:
    return safe_json_response(build_table(pattern, n_from, n_to))
