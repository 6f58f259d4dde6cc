import re

import pytest

_CRITERIA = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    m = re.match(r"test_criterion_(\d+)", item.name)
    if m and item.module.__name__.endswith("test_acceptance"):
        n = int(m.group(1))
        doc = (item.function.__doc__ or item.name).strip().splitlines()[0]
        if rep.when == "call" or rep.failed:
            prev = _CRITERIA.get(n, (True, doc))[0]
            _CRITERIA[n] = (prev and not rep.failed, doc)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        ok, doc = _CRITERIA[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {doc}")
