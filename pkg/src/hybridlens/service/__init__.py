"""HTTP API exposing filter and hybrid previews for the tuner UI."""

from .app import create_app

__all__ = ["create_app"]
