import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent))

# Filled by the acceptance tests: criterion number -> one-line verdict.
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[number])
