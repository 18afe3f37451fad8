"""Shared test plumbing: the acceptance-summary marker and its reporting hook.

Tests marked ``@pytest.mark.acceptance(label)`` are aggregated per label, and
after the run one PASS/FAIL line per label is printed.  Expected failures
(strict xfail) represent documented defects in the embedded reference tables
or literal bars that the implementation cannot honestly meet; they count as
"FAIL (expected)" — visibly red by design, and the suite errors out if one of
them silently starts passing.
"""

from __future__ import annotations

from collections import defaultdict

import pytest

_BUCKETS: dict[str, dict[str, int]] = defaultdict(
    lambda: {"passed": 0, "failed": 0, "xfailed": 0}
)


def pytest_configure(config):
    config.addinivalue_line(
        "markers",
        "acceptance(label): aggregate this test into one acceptance-summary line",
    )


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    if rep.when != "call" and not (rep.when == "setup" and rep.failed):
        return
    bucket = _BUCKETS[marker.args[0]]
    if hasattr(rep, "wasxfail"):
        if rep.skipped:
            bucket["xfailed"] += 1
        else:
            bucket["failed"] += 1
    elif rep.failed:
        bucket["failed"] += 1
    elif rep.passed:
        bucket["passed"] += 1


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _BUCKETS:
        return
    tr = terminalreporter
    tr.ensure_newline()
    tr.section("acceptance criteria")
    for label in sorted(_BUCKETS):
        b = _BUCKETS[label]
        if b["failed"]:
            status = "FAIL"
        elif b["xfailed"]:
            status = "FAIL (expected)"
        else:
            status = "PASS"
        parts = [f"{b['passed']} passed"]
        if b["xfailed"]:
            parts.append(f"{b['xfailed']} expected failures")
        if b["failed"]:
            parts.append(f"{b['failed']} failed")
        tr.write_line(f"{label}: {status} ({', '.join(parts)})")
    if any(b["xfailed"] for b in _BUCKETS.values()):
        tr.write_line(
            "expected failures mark embedded reference rows or literal bars that"
        )
        tr.write_line(
            "contradict the defining equations; they stay red on purpose (strict"
        )
        tr.write_line("xfail) instead of being loosened — details in the README.")
