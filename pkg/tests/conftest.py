from __future__ import annotations

import re

_criteria: dict[str, tuple[str, float]] = {}


def pytest_runtest_logreport(report):
    m = re.search(r"test_acceptance\.py::test_criterion_(\d+)_(\w+)", report.nodeid)
    if not m:
        return
    key = f"{int(m.group(1))} {m.group(2)}"
    if report.when == "call" or report.outcome != "passed":
        prev = _criteria.get(key)
        if prev is None or prev[0] == "PASS":
            outcome = "PASS" if report.outcome == "passed" else "FAIL"
            _criteria[key] = (outcome, report.duration)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_criteria, key=lambda k: int(k.split()[0])):
        outcome, secs = _criteria[key]
        num, name = key.split(" ", 1)
        terminalreporter.write_line(f"criterion {num} ({name}): {outcome} [{secs:.2f}s]")
