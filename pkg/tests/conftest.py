import pytest

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance():
    def record(number: int, title: str, ok: bool, detail: str = "") -> None:
        line = f"criterion {number:2d} {'PASS' if ok else 'FAIL'}  {title}"
        if detail:
            line += f"  ({detail})"
        ACCEPTANCE_LINES.append(line)
        print(line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
