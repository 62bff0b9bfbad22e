"""Bundled graphs."""

from __future__ import annotations

from importlib import resources

from .graphs import Graph
from .sparse6 import decode_sparse6


def published_sparse6() -> bytes:
    """The released 64-node, 230-edge graph with no 3- or 4-cycles."""
    return (resources.files(__package__) / "data" / "published_64_230.s6").read_bytes()


def published_graph() -> Graph:
    return decode_sparse6(published_sparse6())
