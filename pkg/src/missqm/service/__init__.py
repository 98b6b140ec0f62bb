"""HTTP/JSON service exposing the metrics engine to the explorer UI."""

from .app import create_app

__all__ = ["create_app"]
