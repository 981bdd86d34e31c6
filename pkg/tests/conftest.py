import pytest

VERDICTS: dict = {}


@pytest.fixture
def record():
    """Record a PASS/FAIL line for an acceptance criterion and print it."""
    def _record(num: int, ok: bool, detail: str):
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {num:>2}: {detail}"
        VERDICTS[num] = line
        print(line)
        return ok
    return _record


def pytest_terminal_summary(terminalreporter):
    if not VERDICTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(VERDICTS):
        terminalreporter.write_line(VERDICTS[num])
