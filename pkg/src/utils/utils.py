"""
Utility functions and custom exceptions for the saturation toolkit.
"""

import json
import logging
import re
from typing import Any, Dict, Tuple
from src.core.config import MAX_VERTICES

logger = logging.getLogger(__name__)

_DURATION_RE = re.compile(r"^\s*(\d+(?:\.\d+)?)\s*([smh]?)\s*$")
_DURATION_UNITS = {"": 1.0, "s": 1.0, "m": 60.0, "h": 3600.0}


class NotSaturatedError(ValueError):
    """A routine that only makes sense on saturated graphs received something else."""


class WitnessCacheError(RuntimeError):
    """The packaged witness cache is missing, corrupt or fails re-verification."""


class BudgetExceededError(RuntimeError):
    """A search ran out of nodes or time."""


def validate_vertex_count(n: int, minimum: int = 1) -> None:
    """Validate a vertex count against the supported range."""
    if not isinstance(n, int) or isinstance(n, bool):
        logger.error(f"Vertex count must be an integer, got: {n!r}")
        raise ValueError(f"Vertex count must be an integer, got: {n!r}")

    if n < minimum or n > MAX_VERTICES:
        logger.error(f"Vertex count {n} out of range [{minimum}, {MAX_VERTICES}]")
        raise ValueError(f"Vertex count {n} out of range [{minimum}, {MAX_VERTICES}]")


def sanitize_input(text: str) -> str:
    """Sanitize input text."""
    return "".join(text.split())


def parse_part_sizes(text: str) -> Tuple[int, ...]:
    """Parse "s1,s2,...,sr" into a sorted tuple of positive part sizes."""
    cleaned = sanitize_input(text or "")
    if not cleaned:
        logger.error("Pattern string is empty")
        raise ValueError("Pattern string is empty")

    try:
        sizes = tuple(sorted(int(part) for part in cleaned.split(",")))
    except ValueError:
        logger.error(f"Invalid pattern string: '{text}'")
        raise ValueError(f"Invalid pattern string: '{text}' (expected e.g. '3,3')")

    if any(size <= 0 for size in sizes):
        logger.error(f"Part sizes must be positive: '{text}'")
        raise ValueError(f"Part sizes must be positive: '{text}'")
    return sizes


def parse_duration(text: str) -> float:
    """Parse "90", "1s", "5m" or "2h" into seconds."""
    match = _DURATION_RE.match(str(text))
    if not match:
        logger.error(f"Invalid duration: '{text}'")
        raise ValueError(f"Invalid duration: '{text}' (expected e.g. 30, 1s, 5m, 2h)")

    seconds = float(match.group(1)) * _DURATION_UNITS[match.group(2)]
    if seconds <= 0:
        logger.error(f"Duration must be positive: '{text}'")
        raise ValueError(f"Duration must be positive: '{text}'")
    return seconds


def safe_json_response(data: Any, error_msg: str = "Unknown error") -> str:
    """Safely convert data to JSON response."""
    try:
        return json.dumps(data, indent=2, ensure_ascii=False)
    except Exception as e:
        logger.error(f"JSON serialization failed: {e}")

        fallback_data = {
            "error": error_msg,
            "details": str(e)
        }
        return json.dumps(fallback_data, indent=2)


def error_payload(error: str, message: str, error_type: str) -> Dict[str, Any]:
    """Error dict in the shape every tool returns."""
    return {
        "error": error,
        "message": message,
        "type": error_type
    }


def is_error_payload(payload: Dict[str, Any]) -> bool:
    return "error" in payload and "type" in payload
