import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        status, secs, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n}: {status} ({secs:.2f}s) {detail}")
