"""HTTP service wrapping the toolkit; see app.create_app."""

from .app import app, create_app

__all__ = ["app", "create_app"]
