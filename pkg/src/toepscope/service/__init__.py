"""Service layer: pydantic documents, command handlers, FastAPI app."""

from .app import create_app
from .schemas import SCHEMA_VERSION

__all__ = ["SCHEMA_VERSION", "create_app"]
