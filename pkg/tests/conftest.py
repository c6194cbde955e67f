"""Shared test configuration: the heavy marker and the criterion summary."""

import os

import pytest


def pytest_collection_modifyitems(config, items):
    if os.environ.get("JCOVER_HEAVY") == "1":
        return
    skip = pytest.mark.skip(reason="heavy test; set JCOVER_HEAVY=1 to run")
    for item in items:
        if "heavy" in item.keywords:
            item.add_marker(skip)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    try:
        from tests import test_acceptance
    except ImportError:
        try:
            import test_acceptance
        except ImportError:
            return
    if not test_acceptance.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in test_acceptance.RESULTS:
        terminalreporter.write_line(line)
