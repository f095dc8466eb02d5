"""HTTP service wrapping the measurement pipeline."""

from .app import create_app

__all__ = ["create_app"]
