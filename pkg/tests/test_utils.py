import json

import pytest

from src.core import cache_manager
from src.core.config import get_config, validate_config
from src.utils.utils import (
    error_payload,
    is_error_payload,
    parse_duration,
    parse_part_sizes,
    safe_json_response,
    sanitize_input,
    validate_vertex_count,
)


@pytest.mark.parametrize("text,seconds", [("90", 90.0), ("1s", 1.0), ("5m", 300.0), ("2h", 7200.0), (" 1.5m ", 90.0)])
def test_parse_duration(text, seconds):
    assert parse_duration(text) == seconds


@pytest.mark.parametrize("text", ["", "soon", "5d", "-1", "0", "1 m s"])
def test_parse_duration_rejects(text):
    with pytest.raises(ValueError):
        parse_duration(text)


def test_parse_part_sizes():
    assert parse_part_sizes("3,3") == (3, 3)
    assert parse_part_sizes(" 3, 1 ,2 ") == (1, 2, 3)
    for bad in ["", "3,,3", "a,b", "0,3", "-1,2"]:
        with pytest.raises(ValueError):
            parse_part_sizes(bad)


def test_sanitize_input_drops_whitespace():
    assert sanitize_input(" E^ vg\n") == "E^vg"


def test_validate_vertex_count():
    validate_vertex_count(1)
    validate_vertex_count(64)
    for bad in [0, 65, True, 3.0]:
        with pytest.raises(ValueError):
            validate_vertex_count(bad)


def test_error_payload_shape():
    payload = error_payload("Invalid input", "bad graph6", "validation_error")
    assert is_error_payload(payload)
    assert not is_error_payload({"n": 6})
    assert json.loads(safe_json_response(payload)) == payload


def test_safe_json_response_falls_back():
    text = safe_json_response({"value": object()}, "not serializable")
    assert json.loads(text)["error"] == "not serializable"


def test_default_config_is_valid():
    validate_config()
    config = get_config()
    assert config["search_threads"] >= 1
    assert config["split_depth"] >= 0


def test_cache_evicts_oldest(monkeypatch):
    monkeypatch.setattr(cache_manager, "CACHE_MAX_ENTRIES", 2)
    first, second, third = (cache_manager.get_cache_key("t", i) for i in range(3))
    cache_manager.set_cache(first, 1)
    cache_manager.set_cache(second, 2)
    cache_manager.set_cache(third, 3)
    assert cache_manager.get_cached(first) is None
    assert cache_manager.get_cached(third) == 3
    stats = cache_manager.get_cache_stats()
    assert stats["total_entries"] == 2
    assert stats["hits"] >= 1
    assert stats["misses"] >= 1


def test_clear_cache_by_prefix():
    cache_manager.set_cache(cache_manager.get_cache_key("a", 1), "x")
    cache_manager.set_cache(cache_manager.get_cache_key("b", 1), "y")
    cache_manager.clear_cache("a")
    assert cache_manager.get_cached(("a", 1)) is None
    assert cache_manager.get_cached(("b", 1)) == "y"
