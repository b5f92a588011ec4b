"""HTTP service wrapping the core package."""

from . import handlers, models

__all__ = ["handlers", "models"]
