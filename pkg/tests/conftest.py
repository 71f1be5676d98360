import time

import pytest

SUITE_BUDGET_S = 30.0

_results: dict[str, tuple[str, str]] = {}
_start = [0.0]


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(id, title): acceptance criterion reported in the summary")


def pytest_sessionstart(session):
    _start[0] = time.perf_counter()


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    cid, title = marker.args
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _results[cid] = ("PASS" if report.passed else "FAIL", title)


def pytest_sessionfinish(session, exitstatus):
    elapsed = time.perf_counter() - _start[0]
    session.config._suite_elapsed = elapsed
    if _results and elapsed >= SUITE_BUDGET_S and session.exitstatus == 0:
        session.exitstatus = 1


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _results:
        return
    elapsed = getattr(config, "_suite_elapsed", 0.0)
    tr = terminalreporter
    tr.section("acceptance criteria")
    for cid in sorted(_results, key=lambda c: int(c[2:])):
        status, title = _results[cid]
        tr.write_line(f"{status} {cid}: {title}")
    status = "PASS" if elapsed < SUITE_BUDGET_S else "FAIL"
    tr.write_line(f"{status} AC9 (runtime): full suite {elapsed:.2f} s (budget {SUITE_BUDGET_S:.0f} s)")
