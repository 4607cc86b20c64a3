import pytest

ACCEPTANCE_LINES: dict[int, str] = {}


def record(criterion: int, ok: bool, detail: str) -> None:
    """Store one PASS/FAIL line per acceptance criterion, then assert."""
    ACCEPTANCE_LINES[criterion] = f"{'PASS' if ok else 'FAIL'} criterion {criterion}: {detail}"
    print(ACCEPTANCE_LINES[criterion])
    assert ok, detail


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])


@pytest.fixture
def record_criterion():
    return record
