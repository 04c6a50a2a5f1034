from __future__ import annotations

from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "procat", deadline=None, max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("procat")

ROOT = Path(__file__).resolve().parent.parent


@pytest.fixture(autouse=True)
def _repo_root(monkeypatch):
    # fixture paths in tests are relative to the repository root
    monkeypatch.chdir(ROOT)


# criterion number -> (title, passed, detail)
ACCEPTANCE: dict = {}


@pytest.fixture
def criterion():
    def record(number: int, title: str, ok: bool, detail: str = "") -> bool:
        ACCEPTANCE[number] = (title, bool(ok), detail)
        return bool(ok)
    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        title, ok, detail = ACCEPTANCE[k]
        line = f"criterion {k:2d} {'PASS' if ok else 'FAIL'}  {title}"
        if detail:
            line += f"  [{detail}]"
        terminalreporter.write_line(line)
