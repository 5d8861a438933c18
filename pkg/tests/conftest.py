import re

import pytest

_ACCEPTANCE = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    m = re.match(r"test_criterion_(\d+)", item.name)
    if m and item.module.__name__.endswith("test_acceptance"):
        n = int(m.group(1))
        if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
            prev = _ACCEPTANCE.get(n, ("passed", ""))[0]
            outcome = report.outcome if prev == "passed" else prev
            _ACCEPTANCE[n] = (outcome, item.function.__doc__ or item.name)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_ACCEPTANCE):
        outcome, doc = _ACCEPTANCE[n]
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{status}  criterion {n:2d}: {doc.strip().splitlines()[0]}")
