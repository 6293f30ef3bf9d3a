import pytest

_LINES: list[str] = []


def _record(number: int, title: str, ok: bool, detail: str) -> str:
    line = f"criterion {number:>2} {'PASS' if ok else 'FAIL'}  {title}: {detail}"
    _LINES.append(line)
    print(line)
    return line


@pytest.fixture
def criterion():
    """Record one acceptance line; the test still asserts on its own."""
    return _record


def pytest_terminal_summary(terminalreporter):
    if _LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_LINES, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
