from __future__ import annotations

ACCEPTANCE_FILE = "test_acceptance.py"
_results: dict[str, tuple[str, str]] = {}


def pytest_runtest_logreport(report):
    if ACCEPTANCE_FILE not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _results[name] = ("PASS" if report.outcome == "passed" else "FAIL", report.nodeid)


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_results):
        status, _ = _results[name]
        # test_criterion_07_split_soundness -> "criterion 7 (split soundness)"
        parts = name.split("_")
        number = int(parts[2])
        label = " ".join(parts[3:])
        terminalreporter.write_line(f"criterion {number:2d} ({label}): {status}")
