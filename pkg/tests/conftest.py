import os

import pytest

FULL = os.environ.get("GRADCON_FULL", "") not in ("", "0")

full_only = pytest.mark.skipif(not FULL, reason="set GRADCON_FULL=1 for the K, H, O runs")

# filled in by test_acceptance.py, printed at the end of the session
CHECKLIST: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if CHECKLIST:
        terminalreporter.section("acceptance checklist")
        for line in sorted(CHECKLIST, key=lambda s: int(s.split(".")[0].split()[-1])):
            terminalreporter.write_line(line)
