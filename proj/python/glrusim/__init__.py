"""Chunk-granular LRU/gLRU cache simulator and characteristic-time toolkit."""

from ._glrusim import *  # noqa: F401,F403
from ._glrusim import __doc__  # noqa: F401

__version__ = "0.1.0"
