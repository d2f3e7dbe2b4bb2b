"""Utility modules."""
from cge.utils.cache import cached, build_cache_key, clear_cache

__all__ = ["cached", "build_cache_key", "clear_cache"]
