from __future__ import annotations

import pathlib
import time

import pytest

from cbddl.parser import parse_problem

FIXTURES = pathlib.Path(__file__).parent / "fixtures"
CORPUS = FIXTURES / "corpus"
SUITE = FIXTURES / "suite"

SUITE_BUDGET_S = 60.0
_ACCEPTANCE: dict = {}
_START = time.perf_counter()


def corpus_files() -> list:
    return sorted(CORPUS.glob("*.cbddl"))


def spec_from(text: str):
    return parse_problem(text)


class _Recorder:
    def __init__(self, number: int, title: str):
        self.number, self.title = number, title

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc, tb):
        _ACCEPTANCE[self.number] = (self.title, exc_type is None, "" if exc is None else str(exc).splitlines()[0][:120])
        return False


@pytest.fixture
def criterion():
    """``with criterion(n, title):`` records a pass/fail line for acceptance criterion ``n``."""
    return _Recorder


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    elapsed = time.perf_counter() - _START
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(_ACCEPTANCE):
        title, ok, why = _ACCEPTANCE[n]
        if n == 10:
            fast = elapsed < SUITE_BUDGET_S
            title = f"{title}; test session {elapsed:.1f}s < {SUITE_BUDGET_S:.0f}s"
            if ok and not fast:
                ok, why = False, f"session took {elapsed:.1f}s"
        line = f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {title}"
        tr.write_line(line + (f"  [{why}]" if why else ""))
