from typing import Optional, Dict, Any, Hashable
from src.core.config import CACHE_MAX_ENTRIES

# Simple in-memory memo cache, oldest entries evicted first
_cache: Dict[Hashable, Any] = {}
_stats = {"hits": 0, "misses": 0}


def get_cache_key(prefix: str, *args: Hashable) -> tuple:
    """Generate cache key."""
    return (prefix, *args)


def get_cached(key: Hashable) -> Optional[Any]:
    """Get cached value, or None when absent."""
    if key in _cache:
        _stats["hits"] += 1
        return _cache[key]
    _stats["misses"] += 1
    return None


def set_cache(key: Hashable, data: Any) -> None:
    """Cache data, evicting the oldest entry when full."""
    if key not in _cache and len(_cache) >= CACHE_MAX_ENTRIES:
        del _cache[next(iter(_cache))]
    _cache[key] = data


def clear_cache(prefix: Optional[str] = None) -> None:
    """Drop every entry, or only those under one prefix."""
    if prefix is None:
        _cache.clear()
        return
    for key in [k for k in _cache if isinstance(k, tuple) and k and k[0] == prefix]:
        del _cache[key]


def get_cache_stats() -> Dict[str, Any]:
    """Get cache statistics."""
    return {
        "total_entries": len(_cache),
        "max_entries": CACHE_MAX_ENTRIES,
        "hits": _stats["hits"],
        "misses": _stats["misses"],
    }
