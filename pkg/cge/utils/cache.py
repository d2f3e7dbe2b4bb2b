"""Caching utilities and decorators.

Results are kept in a process-local store keyed by strings, so that the same
key rules work for any argument type that serialises to JSON (pydantic models
included). The store holds at most ``CGE_CACHE_MAX_ENTRIES`` values and drops
the least recently used one first. Cached values are shared between callers,
so only immutable values (frozen pydantic models) belong in it.
"""
import fnmatch
import json
import logging
from collections import OrderedDict
from functools import wraps
from typing import Any, Callable, Optional

from pydantic import BaseModel

from cge.config import get_settings

logger = logging.getLogger(__name__)

_store: "OrderedDict[str, Any]" = OrderedDict()


def _key_part(value: Any) -> str:
    if isinstance(value, BaseModel):
        return value.model_dump_json()
    try:
        return json.dumps(value, sort_keys=True, default=str)
    except TypeError:
        return repr(value)


def get_cache(key: str) -> Optional[Any]:
    """
    Get value from the cache.

    Args:
        key: Cache key

    Returns:
        Cached value if exists, None otherwise
    """
    if key not in _store:
        return None
    _store.move_to_end(key)
    return _store[key]


def set_cache(key: str, value: Any) -> bool:
    """
    Store a value under a key.

    Args:
        key: Cache key
        value: Value to cache

    Returns:
        True if successful
    """
    _store[key] = value
    _store.move_to_end(key)
    limit = max(get_settings().cache_max_entries, 1)
    while len(_store) > limit:
        evicted, _ = _store.popitem(last=False)
        logger.debug("cache evicted %s", evicted.split(":", 1)[0])
    return True


def clear_cache(pattern: str = "*") -> int:
    """
    Delete all keys matching a glob pattern.

    Args:
        pattern: Key pattern (e.g., "material:*")

    Returns:
        Number of deleted entries
    """
    keys = [k for k in _store if fnmatch.fnmatchcase(k, pattern)]
    for key in keys:
        del _store[key]
    return len(keys)


def cached(key_prefix: str, key_builder: Optional[Callable[..., str]] = None):
    """
    Decorator to cache function results.

    Args:
        key_prefix: Prefix for the cache key
        key_builder: Optional function to build cache key from args/kwargs

    Usage:
        @cached("material")
        def load_material(name: str, search_path=()):
            ...

        @cached("pressure", key_builder=lambda s, cfg: build_cache_key("pressure", s=s, cfg=cfg))
        def cached_pressure(scenario, cfg):
            ...
    """
    def decorator(func):
        @wraps(func)
        def wrapper(*args, **kwargs):
            if key_builder:
                cache_key = key_builder(*args, **kwargs)
            else:
                args_str = "_".join(_key_part(arg) for arg in args if arg is not None)
                kwargs_str = "_".join(
                    f"{k}={_key_part(v)}" for k, v in sorted(kwargs.items()) if v is not None
                )
                suffix = "_".join(filter(None, [args_str, kwargs_str]))
                cache_key = f"{key_prefix}:{suffix}" if suffix else key_prefix

            cached_result = get_cache(cache_key)
            if cached_result is not None:
                logger.debug("cache hit %s", key_prefix)
                return cached_result

            result = func(*args, **kwargs)
            set_cache(cache_key, result)
            return result

        return wrapper
    return decorator


def build_cache_key(prefix: str, **params) -> str:
    """
    Build a cache key from named parameters.

    Args:
        prefix: Key prefix
        **params: Parameters to include in key

    Returns:
        Formatted cache key
    """
    filtered_params = {k: v for k, v in params.items() if v is not None}
    if not filtered_params:
        return prefix

    params_str = "_".join(f"{k}={_key_part(v)}" for k, v in sorted(filtered_params.items()))
    return f"{prefix}:{params_str}"
