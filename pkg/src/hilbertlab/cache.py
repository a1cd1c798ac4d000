"""Caches for verification reports and quadrature-computed moments."""

import functools
from collections.abc import Callable, Hashable

from cachetools import LRUCache, TTLCache
from loguru import logger

from hilbertlab.config import settings

# Service-level report cache
report_cache = TTLCache(maxsize=settings.cache_maxsize, ttl=settings.cache_ttl)

# Moments of density measures, keyed by (measure, n)
moment_cache = LRUCache(maxsize=settings.cache_maxsize * 256)


def async_cached(cache: TTLCache, *, scope: Callable[[object], Hashable] | None = None):
    """Decorator for caching async method results.

    Arguments must be hashable. ``scope(self)`` joins the key for instance state the
    result depends on (a service's default grid); without it every instance of the
    service shares the entries.
    """
    def decorator(fn):
        @functools.wraps(fn)
        async def wrapper(self, *args, **kwargs):
            owner = scope(self) if scope is not None else None
            key = (fn.__name__, owner, args, tuple(sorted(kwargs.items())))
            try:
                value = cache[key]
                logger.debug("Cache hit", method=fn.__name__)
                return value
            except KeyError:
                pass

            result = await fn(self, *args, **kwargs)

            cache[key] = result
            logger.debug("Cache miss", method=fn.__name__)
            return result
        return wrapper
    return decorator
