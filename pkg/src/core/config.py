import os
from pathlib import Path
from typing import Dict, Any
from dotenv import load_dotenv
import logging

load_dotenv()
logger = logging.getLogger(__name__)

PACKAGE_ROOT = Path(__file__).resolve().parent.parent

# Search budgets
SEARCH_MAX_NODES = int(os.getenv("SEARCH_MAX_NODES", "5000000"))
SEARCH_MAX_TIME = float(os.getenv("SEARCH_MAX_TIME", "600.0"))  # seconds
SEARCH_THREADS = int(os.getenv("SEARCH_THREADS", "1"))
SPLIT_DEPTH = int(os.getenv("SPLIT_DEPTH", "3"))

# Randomized upper bounds
GREEDY_SEEDS = int(os.getenv("GREEDY_SEEDS", "16"))
DEFAULT_SEED = int(os.getenv("DEFAULT_SEED", "20240611"))

# Canonical labeling
CANON_EXACT_MAX_N = 16
CANON_LEAF_LIMIT = int(os.getenv("CANON_LEAF_LIMIT", "20000"))

# Cache Configuration
CACHE_MAX_ENTRIES = int(os.getenv("CACHE_MAX_ENTRIES", "4096"))

# Files
WITNESS_CACHE_PATH = Path(
    os.getenv("WITNESS_CACHE_PATH", str(PACKAGE_ROOT / "graphs" / "data" / "small_witnesses.txt"))
)
CERTIFICATE_DIR = Path(os.getenv("CERTIFICATE_DIR", "certificates"))

# Logging
LOG_LEVEL = os.getenv("LOG_LEVEL", "INFO").upper()
SHOW_PROGRESS = os.getenv("SHOW_PROGRESS", "false").lower() in ("1", "true", "yes")

# Graph size limit (one machine word per adjacency row)
MAX_VERTICES = 64


def validate_config() -> None:
    """Validate configuration on startup."""
    if SEARCH_MAX_NODES <= 0:
        logger.error("SEARCH_MAX_NODES must be positive")
        raise ValueError("SEARCH_MAX_NODES must be positive")

    if SEARCH_MAX_TIME <= 0:
        logger.error("SEARCH_MAX_TIME must be positive")
        raise ValueError("SEARCH_MAX_TIME must be positive")

    if SEARCH_THREADS <= 0:
        logger.error("SEARCH_THREADS must be positive")
        raise ValueError("SEARCH_THREADS must be positive")

    if SPLIT_DEPTH < 0:
        logger.error("SPLIT_DEPTH must not be negative")
        raise ValueError("SPLIT_DEPTH must not be negative")

    if GREEDY_SEEDS <= 0:
        logger.error("GREEDY_SEEDS must be positive")
        raise ValueError("GREEDY_SEEDS must be positive")

    if CACHE_MAX_ENTRIES <= 0:
        logger.error("CACHE_MAX_ENTRIES must be positive")
        raise ValueError("CACHE_MAX_ENTRIES must be positive")

    if not WITNESS_CACHE_PATH.is_file():
        logger.error(f"Witness cache not found at {WITNESS_CACHE_PATH}")
        raise FileNotFoundError(f"Witness cache not found at {WITNESS_CACHE_PATH}")


def get_config() -> Dict[str, Any]:
    """Get current configuration as dictionary."""
    return {
        "search_max_nodes": SEARCH_MAX_NODES,
        "search_max_time": SEARCH_MAX_TIME,
        "search_threads": SEARCH_THREADS,
        "split_depth": SPLIT_DEPTH,
        "greedy_seeds": GREEDY_SEEDS,
        "default_seed": DEFAULT_SEED,
        "canon_leaf_limit": CANON_LEAF_LIMIT,
        "cache_max_entries": CACHE_MAX_ENTRIES,
        "witness_cache_path": str(WITNESS_CACHE_PATH),
        "certificate_dir": str(CERTIFICATE_DIR),
        "show_progress": SHOW_PROGRESS,
        "log_level": LOG_LEVEL,
    }
