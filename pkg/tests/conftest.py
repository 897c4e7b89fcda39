import time

import pytest

_RESULTS = []


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label, budget): acceptance criterion with a runtime budget in seconds")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_call(item):
    start = time.perf_counter()
    yield
    item._elapsed = time.perf_counter() - start


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when != "call":
        return
    label, budget = mark.args
    if hasattr(rep, "wasxfail"):
        status = "XFAIL" if rep.skipped else "XPASS"
    else:
        status = "PASS" if rep.passed else "FAIL"
    _RESULTS.append((label, status, getattr(item, "_elapsed", 0.0), budget, item.name))


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for label, status, elapsed, budget, name in _RESULTS:
        terminalreporter.write_line(f"criterion {label:<4} {status:<5} {elapsed:7.2f}s (budget {budget}s)  {name}")
