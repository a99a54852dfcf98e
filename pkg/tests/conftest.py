from __future__ import annotations

import pytest

_LINES: dict[int, str] = {}


@pytest.fixture
def verdict():
    """Record one acceptance line: ``verdict(k, ok, detail)``."""

    def record(k: int, ok: bool, detail: str) -> None:
        _LINES[k] = f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}"
        print(_LINES[k])

    return record


def pytest_terminal_summary(terminalreporter):
    if not _LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(_LINES):
        terminalreporter.write_line(_LINES[k])
