from __future__ import annotations

import pytest

ACCEPTANCE_COUNT = 13


def pytest_configure(config):
    config._acceptance = {}


@pytest.fixture
def record(request):
    """Store one acceptance verdict; the summary lists every criterion."""
    log = request.config._acceptance

    def _record(number: int, ok: bool, detail: str) -> bool:
        log[number] = (ok, detail)
        return ok

    return _record


def pytest_terminal_summary(terminalreporter, config):
    log = config._acceptance
    if not log:
        return
    terminalreporter.section("acceptance criteria")
    for n in range(1, ACCEPTANCE_COUNT + 1):
        if n in log:
            ok, detail = log[n]
            terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
        else:
            terminalreporter.write_line(f"criterion {n:2d}: FAIL  (not run or crashed before a verdict)")
