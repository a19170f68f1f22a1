"""HTTP service exposing the report handlers."""

from .app import app, create_app

__all__ = ["app", "create_app"]
