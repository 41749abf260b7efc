import pytest

ACCEPTANCE: list[tuple[str, bool, str]] = []


@pytest.fixture
def record():
    """Register one acceptance line: record(name, passed, detail)."""

    def _record(name: str, passed: bool, detail: str = "") -> bool:
        ACCEPTANCE.append((name, bool(passed), detail))
        print(f"{'PASS' if passed else 'FAIL'}: {name} {detail}")
        return passed

    return _record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, passed, detail in ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {name}  {detail}")
