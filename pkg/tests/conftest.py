import pytest

from vinepayload import RobotParams

ACCEPTANCE_RESULTS: list[tuple[str, bool, str]] = []


@pytest.fixture
def robot():
    return RobotParams()


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}")
