"""Shared test fixtures and the acceptance-criteria summary hook.

Tests in ``test_acceptance.py`` carry an ``acceptance(num, title)`` marker.
After the run, a one-line PASS/FAIL verdict per criterion is printed so the
acceptance gate can be read off the terminal without grepping the log.
"""

import numpy as np
import pytest

from codanorm import SeededStream

# Criterion number -> (title, outcome) collected during the run.
_ACCEPTANCE_RESULTS = {}


def pytest_configure(config):
    config.addinivalue_line(
        "markers",
        "acceptance(num, title): marks a test as one numbered acceptance criterion",
    )
    config.addinivalue_line(
        "markers",
        "slow: long-running statistical replication tests",
    )


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    marker_info = getattr(report, "_acceptance_info", None)
    if marker_info is None:
        return
    num, title = marker_info
    outcome = "PASS" if report.passed else "FAIL"
    # setup errors count as failures; never overwrite a FAIL with a PASS
    if num not in _ACCEPTANCE_RESULTS or outcome == "FAIL":
        _ACCEPTANCE_RESULTS[num] = (title, outcome)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is not None:
        report._acceptance_info = (marker.args[0], marker.args[1])


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _ACCEPTANCE_RESULTS:
        return
    tr = terminalreporter
    tr.write_sep("=", "acceptance criteria")
    for num in sorted(_ACCEPTANCE_RESULTS):
        title, outcome = _ACCEPTANCE_RESULTS[num]
        line = f"criterion {num:2d} [{outcome}] {title}"
        tr.write_line(line, green=(outcome == "PASS"), red=(outcome == "FAIL"))


@pytest.fixture
def rng():
    """A throwaway deterministic generator for test-local randomness."""
    return np.random.default_rng(987654321)


@pytest.fixture
def stream():
    """A fresh deterministic SeededStream."""
    return SeededStream(seed=13579, stream_id=0)
