"""Shared test plumbing.

test_acceptance.py registers one line per acceptance criterion via
record_criterion; the terminal summary hook prints them after the run so the
pass/fail state of every criterion is visible in one block.
"""

_CRITERION_LINES = []


def record_criterion(label: str, passed: bool, detail: str = "") -> None:
    _CRITERION_LINES.append((label, bool(passed), detail))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _CRITERION_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for label, ok, detail in _CRITERION_LINES:
        status = "PASS" if ok else "FAIL"
        line = f"[{status}] {label}"
        if detail:
            line = f"{line}  --  {detail}"
        terminalreporter.write_line(line, green=ok, red=not ok)
