import random

import pytest

# (number, title, passed, detail) filled in by test_acceptance.py
ACCEPTANCE_LINES = []


@pytest.fixture
def rng():
    return random.Random(20241018)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for num, title, ok, detail in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {num:2d}. {title}: {detail}")
