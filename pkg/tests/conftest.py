from __future__ import annotations

import json
from importlib import resources
from pathlib import Path

import pytest

from ccb.graph import load_graph

DATA = Path(__file__).parent / "data"


def data_graph(name: str):
    return load_graph(DATA / f"{name}.graph")


def load_schema(name: str) -> dict:
    return json.loads(resources.files("ccb.schemas").joinpath(f"{name}.json").read_text())


@pytest.fixture
def data_dir() -> Path:
    return DATA


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "RESULT_LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda l: int(l.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
