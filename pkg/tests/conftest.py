"""Shared pytest configuration: the acceptance-criteria summary banner.

Tests marked @pytest.mark.criterion(label, title) report one PASS/FAIL line
each after the run, so the acceptance status is readable at a glance without
digging through the full test output.
"""

from __future__ import annotations

import pytest

_RESULTS: dict[str, tuple[str, str]] = {}

_STATUS = {"passed": "PASS", "failed": "FAIL", "skipped": "SKIP"}


def pytest_configure(config):
    config.addinivalue_line(
        "markers",
        "criterion(label, title): acceptance-criterion test, reported in the summary banner",
    )


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    label, title = marker.args
    # Record the call phase; a setup failure (broken fixture) also counts as FAIL.
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        status = _STATUS.get(report.outcome, report.outcome.upper())
        if _RESULTS.get(label, ("", "PASS"))[1] != "FAIL":
            _RESULTS[label] = (title, status)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(_RESULTS):
        title, status = _RESULTS[label]
        terminalreporter.write_line(f"[{status}] criterion {label}: {title}")
