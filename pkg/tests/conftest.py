import pytest

ACCEPTANCE = []


@pytest.fixture
def record():
    """Log one acceptance line: ``record(label, passed, detail)``."""

    def _record(label, passed, detail):
        ACCEPTANCE.append((label, bool(passed), detail))
        return passed

    return _record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance")
    for label, passed, detail in sorted(ACCEPTANCE):
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {label}: {detail}")
