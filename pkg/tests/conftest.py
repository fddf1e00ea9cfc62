import re

ACCEPTANCE_FILE = "test_acceptance.py"
_outcomes: dict[str, tuple[int, str, bool]] = {}


def _criterion(nodeid: str):
    m = re.search(r"test_criterion_(\d+)_(\w+)", nodeid)
    if not m:
        return None
    return int(m.group(1)), m.group(2).replace("_", " ")


def pytest_runtest_logreport(report):
    if ACCEPTANCE_FILE not in report.nodeid:
        return
    crit = _criterion(report.nodeid)
    if crit is None:
        return
    num, label = crit
    failed = report.failed
    prev = _outcomes.get(report.nodeid)
    ok = not failed and (prev[2] if prev else True)
    if report.when == "call" or failed:
        _outcomes[report.nodeid] = (num, label, ok)


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for num, label, ok in sorted(_outcomes.values()):
        terminalreporter.write_line(f"criterion {num:2d} {'PASS' if ok else 'FAIL'}  {label}")
