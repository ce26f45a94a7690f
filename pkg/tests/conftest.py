import pytest
from click.testing import CliRunner

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def criterion():
    """Record a one-line PASS/FAIL verdict for the terminal summary."""

    def record(label: str, ok: bool, detail: str = "") -> bool:
        line = f"{'PASS' if ok else 'FAIL'}  {label}"
        if detail:
            line += f"  ({detail})"
        ACCEPTANCE_LINES.append(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
