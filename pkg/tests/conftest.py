import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

# Pass/fail lines recorded by the acceptance tests; echoed after the run so
# they are visible even with output capturing on.
ACCEPTANCE_LINES: list = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
