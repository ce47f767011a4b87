from __future__ import annotations

import json

import pytest

from alexandroff.models import GridModel


@pytest.fixture
def grid2():
    """Two-point grid with the usual product."""
    return GridModel(["a", "b"], 1)


@pytest.fixture
def write_spec(tmp_path):
    def write(data, name="spec.json"):
        path = tmp_path / name
        path.write_text(json.dumps(data), encoding="utf-8")
        return str(path)
    return write


def pytest_terminal_summary(terminalreporter):
    lines = [value for key in ("passed", "failed")
             for rep in terminalreporter.stats.get(key, [])
             for name, value in getattr(rep, "user_properties", []) if name == "acceptance"]
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
