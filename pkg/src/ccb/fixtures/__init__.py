"""Graphs shipped with the package."""

from __future__ import annotations

from importlib import resources

from ..graph import DefiningGraph, parse_graph


def load(name: str) -> DefiningGraph:
    return parse_graph(resources.files(__name__).joinpath(f"{name}.graph").read_text(encoding="utf-8"))


def bridged_suspensions() -> DefiningGraph:
    """Suspensions of a 5-cycle and a 4-cycle joined by three bridge edges; every vertex is sbc."""
    return load("bridged_suspensions")
