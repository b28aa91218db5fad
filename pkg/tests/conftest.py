import pytest

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance_line():
    """Record one PASS/FAIL line per acceptance criterion; printed at session end."""

    def record(number: int, passed: bool, text: str, seconds: float) -> None:
        line = f"ACCEPTANCE {number:2d}: {'PASS' if passed else 'FAIL'} - {text} ({seconds:.2f}s)"
        ACCEPTANCE_LINES.append(line)
        print(line)

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
