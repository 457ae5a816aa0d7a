"""Collects acceptance-criterion verdict lines and prints them after the
run, outside output capture, so the gate is always visible."""

import pytest

_criterion_lines: list = []


@pytest.fixture
def criterion():
    """Record and assert one numbered acceptance criterion."""
    def record(index: int, name: str, ok: bool):
        line = "criterion %02d %s: %s" % (index, name, "PASS" if ok else "FAIL")
        _criterion_lines.append(line)
        print(line)
        assert ok, line
    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if _criterion_lines:
        terminalreporter.section("acceptance criteria")
        for line in _criterion_lines:
            terminalreporter.write_line(line)
