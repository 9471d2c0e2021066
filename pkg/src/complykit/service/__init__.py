"""HTTP service: catalogs, assessments, projects, and computed results."""

from .app import create_app

__all__ = ["create_app"]
