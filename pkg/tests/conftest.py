import re

_CRITERIA = {}
_NAME = re.compile(r"test_acceptance\.py::test_criterion_(\d+)_(\w+)")


def pytest_runtest_logreport(report):
    m = _NAME.search(report.nodeid)
    if not m:
        return
    key = (int(m.group(1)), m.group(2).replace("_", " "))
    # a failure in any phase sticks; a pass only counts from the call phase
    if report.failed:
        _CRITERIA[key] = "FAIL"
    elif report.when == "call" and key not in _CRITERIA:
        _CRITERIA[key] = "PASS" if report.passed else "SKIP"


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for (num, title), verdict in sorted(_CRITERIA.items()):
        terminalreporter.write_line(f"ACCEPTANCE criterion {num}: {verdict}  {title}")
