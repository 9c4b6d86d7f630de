"""HTTP service wrapping the core toolkit."""

from .app import app

__all__ = ["app"]
