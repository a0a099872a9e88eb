"""
Saturation number tools: exact computation, upper bounds and confirmation
"""

import asyncio
import logging
from pathlib import Path
from typing import Any, Dict, Optional

from src.analysis.pattern import MultipartitePattern
from src.core.budget import SearchBudget
from src.core.config import DEFAULT_SEED, SEARCH_MAX_NODES, SEARCH_MAX_TIME, SEARCH_THREADS, SPLIT_DEPTH
from src.search.engine import confirm_value, exact_sat
from src.utils.utils import error_payload, safe_json_response

logger = logging.getLogger(__name__)


def compute_sat(
    n: int,
    pattern: str = "3,3",
    max_nodes: int = SEARCH_MAX_NODES,
    max_time: float = SEARCH_MAX_TIME,
    threads: int = SEARCH_THREADS,
    seed: int = DEFAULT_SEED,
    split_depth: int = SPLIT_DEPTH,
    checkpoint: Optional[Path] = None,
    upper_only: bool = False,
    edge_cap: Optional[int] = None,
) -> Dict[str, Any]:
    """
    Compute sat(n, pattern) with a verified witness.

    Returns:
        SatResult payload {n, pattern, status, value, witness_g6, explored, elapsed};
        status is "Exact", "UpperBoundOnly" or "BudgetExceeded"
    """
    try:
        target = MultipartitePattern.parse(pattern)
        budget = SearchBudget(max_nodes=max_nodes, max_time=max_time, edge_cap=edge_cap)
        logger.info(f"Computing sat({n}, {target.label}) with {threads} worker(s)")

        result = exact_sat(
            n, target, budget,
            threads=threads, split_depth=split_depth, seed=seed,
            checkpoint=checkpoint, upper_bound_only=upper_only,
        )
        payload = result.to_dict()
        payload["witness_source"] = result.source
        return payload

    except ValueError as e:
        logger.warning(f"Input validation failed: {e}")
        return error_payload("Invalid input", str(e), "validation_error")

    except Exception as e:
        logger.error(f"Unexpected error computing sat({n}, {pattern}): {e}", exc_info=True)
        return error_payload("Internal error", str(e), "internal_error")


def confirm_sat(
    n: int,
    claimed: int,
    pattern: str = "3,3",
    max_nodes: int = SEARCH_MAX_NODES,
    max_time: float = SEARCH_MAX_TIME,
    threads: int = SEARCH_THREADS,
    seed: int = DEFAULT_SEED,
    split_depth: int = SPLIT_DEPTH,
    checkpoint: Optional[Path] = None,
) -> Dict[str, Any]:
    """
    Confirm or refute a claimed value of sat(n, pattern).

    Returns:
        Confirmation payload; status is "Confirmed", "RefutedWithWitness",
        "Unwitnessed" or "Inconclusive"
    """
    try:
        target = MultipartitePattern.parse(pattern)
        budget = SearchBudget(max_nodes=max_nodes, max_time=max_time)
        logger.info(f"Confirming sat({n}, {target.label}) = {claimed}")

        confirmation = confirm_value(
            n, target, claimed, budget,
            threads=threads, split_depth=split_depth, seed=seed, checkpoint=checkpoint,
        )
        return confirmation.to_dict()

    except ValueError as e:
        logger.warning(f"Input validation failed: {e}")
        return error_payload("Invalid input", str(e), "validation_error")

    except Exception as e:
        logger.error(f"Unexpected error confirming sat({n}, {pattern}) = {claimed}: {e}", exc_info=True)
        return error_payload("Internal error", str(e), "internal_error")


async def compute_sat_json(n: int, pattern: str, max_time: float, upper_only: bool) -> str:
    payload = await asyncio.to_thread(compute_sat, n, pattern, SEARCH_MAX_NODES, max_time, 1,
                                      DEFAULT_SEED, SPLIT_DEPTH, None, upper_only)
    return safe_json_response(payload)


async def confirm_sat_json(n: int, claimed: int, pattern: str, max_time: float) -> str:
    payload = await asyncio.to_thread(confirm_sat, n, claimed, pattern, SEARCH_MAX_NODES, max_time)
    return safe_json_response(payload)
