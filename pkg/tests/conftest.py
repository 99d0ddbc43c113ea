"""Shared fixtures and the acceptance-criteria summary hook.

Acceptance tests append one record per criterion to ``ACCEPTANCE_RESULTS``
through the ``acceptance_log`` fixture; the terminal-summary hook prints a
single pass/fail line per criterion at the end of the run so the verdicts
survive pytest's output capture.
"""

from __future__ import annotations

import json
from pathlib import Path

import pytest

ACCEPTANCE_RESULTS: list[tuple[int, str, bool, str]] = []


@pytest.fixture(scope="session")
def acceptance_log() -> list[tuple[int, str, bool, str]]:
    return ACCEPTANCE_RESULTS


@pytest.fixture(scope="session")
def report_schema() -> dict:
    schema_path = (
        Path(__file__).resolve().parent.parent
        / "src"
        / "ellipse_circle"
        / "report.schema.json"
    )
    return json.loads(schema_path.read_text())


def pytest_terminal_summary(terminalreporter, exitstatus, config) -> None:
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number, name, passed, detail in sorted(ACCEPTANCE_RESULTS):
        verdict = "PASS" if passed else "FAIL"
        line = f"criterion {number:2d} [{verdict}] {name}"
        if detail:
            line += f"  ({detail})"
        terminalreporter.write_line(line)
