import time
from contextlib import contextmanager

import numpy as np
import pytest

_ACCEPTANCE: list[tuple[int, str, bool, str]] = []


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture
def criterion():
    """Record one acceptance criterion; the summary prints at the end of the run."""

    @contextmanager
    def run(number: int, title: str, max_seconds: float):
        info = {"detail": ""}
        start = time.perf_counter()
        try:
            yield info
        except BaseException as exc:
            _ACCEPTANCE.append((number, title, False, f"{type(exc).__name__}: {exc}".splitlines()[0]))
            print(f"[acceptance] criterion {number} FAIL  {title}")
            raise
        elapsed = time.perf_counter() - start
        ok = elapsed < max_seconds
        detail = f"{info['detail']} ({elapsed:.2f}s of {max_seconds:g}s budget)".strip()
        _ACCEPTANCE.append((number, title, ok, detail))
        print(f"[acceptance] criterion {number} {'PASS' if ok else 'FAIL'}  {title}: {detail}")
        assert ok, f"criterion {number} exceeded its runtime budget: {elapsed:.2f}s"

    return run


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, ok, detail in sorted(_ACCEPTANCE):
        terminalreporter.write_line(f"criterion {number:2d} {'PASS' if ok else 'FAIL'}  {title}: {detail}")
