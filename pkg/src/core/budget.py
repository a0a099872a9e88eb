"""
Search budgets: node and wall-clock limits for exhaustive runs
"""

import logging
import time
from dataclasses import dataclass, field
from typing import Dict, Any, Optional
from src.core.config import SEARCH_MAX_NODES, SEARCH_MAX_TIME
from src.utils.utils import BudgetExceededError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SearchBudget:
    """Limits for one search run. ``edge_cap`` optionally bounds the edges explored."""

    max_nodes: int = SEARCH_MAX_NODES
    max_time: float = SEARCH_MAX_TIME
    edge_cap: Optional[int] = None

    def __post_init__(self) -> None:
        if self.max_nodes <= 0:
            logger.error(f"max_nodes must be positive, got {self.max_nodes}")
            raise ValueError(f"max_nodes must be positive, got {self.max_nodes}")
        if self.max_time <= 0:
            logger.error(f"max_time must be positive, got {self.max_time}")
            raise ValueError(f"max_time must be positive, got {self.max_time}")
        if self.edge_cap is not None and self.edge_cap < 0:
            logger.error(f"edge_cap must not be negative, got {self.edge_cap}")
            raise ValueError(f"edge_cap must not be negative, got {self.edge_cap}")


@dataclass
class BudgetTracker:
    """Counts visited nodes against a budget; the clock starts at construction."""

    budget: SearchBudget
    nodes: int = 0
    started: float = field(default_factory=time.time)

    @property
    def deadline(self) -> float:
        return self.started + self.budget.max_time

    def elapsed(self) -> float:
        return time.time() - self.started

    def exhausted(self) -> bool:
        return self.nodes >= self.budget.max_nodes or time.time() >= self.deadline

    def charge(self, count: int = 1) -> None:
        """Record visited nodes; raises BudgetExceededError once a limit is hit."""
        self.nodes += count
        if self.nodes >= self.budget.max_nodes:
            raise BudgetExceededError(f"node budget of {self.budget.max_nodes} exhausted")
        # clock reads are comparatively slow, sample them
        if self.nodes % 64 == 0 and time.time() >= self.deadline:
            raise BudgetExceededError(f"time budget of {self.budget.max_time:.1f}s exhausted")

    def snapshot(self) -> Dict[str, Any]:
        """Progress information in the shape used by reports."""
        return {
            "nodes_explored": self.nodes,
            "nodes_remaining": max(0, self.budget.max_nodes - self.nodes),
            "elapsed": round(self.elapsed(), 3),
            "max_time": self.budget.max_time,
        }
