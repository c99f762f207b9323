from __future__ import annotations

import os

# Tests never touch the user's orbit cache unless they opt in with a tmp dir.
os.environ["CARTAN_PRINCIPAL_CACHE"] = "off"

ACCEPTANCE_LINES: dict[int, str] = {}

SMALL_TYPES = ["A1", "A2", "A3", "B2", "B3", "C2", "C3", "D3", "G2"]
MEDIUM_TYPES = SMALL_TYPES + ["A4", "B4", "C4", "D4", "D5", "F4", "D6"]
SWEEP_TYPES = (
    [f"A{n}" for n in range(1, 8)]
    + [f"B{n}" for n in range(2, 8)]
    + [f"C{n}" for n in range(2, 8)]
    + [f"D{n}" for n in range(3, 9)]
    + ["E6", "E7", "F4", "G2"]
)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[n])
