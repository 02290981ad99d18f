"""Collects one PASS/FAIL line per acceptance criterion and prints them in
the terminal summary, so they show regardless of output capture."""

import pytest

_LINES = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    label = getattr(item.function, "criterion", None)
    if label is not None and rep.when == "call":
        _LINES.append(f"{'PASS' if rep.passed else 'FAIL'}  {label}")


def pytest_terminal_summary(terminalreporter):
    if _LINES:
        terminalreporter.section("acceptance criteria")
        for line in _LINES:
            terminalreporter.write_line(line)


def criterion(label):
    """Mark a test as the check for one acceptance criterion."""

    def mark(fn):
        fn.criterion = label
        return fn

    return mark
