import re

_AC = {}


def pytest_runtest_logreport(report):
    m = re.search(r"test_acceptance\.py::test_ac(\d+)", report.nodeid)
    if not m:
        return
    key = int(m.group(1))
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _AC[key] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _AC:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_AC):
        verdict = "PASS" if _AC[key] == "passed" else "FAIL"
        terminalreporter.write_line(f"AC-{key} {verdict}")
