import pytest

from springer_toric.rootsys import build_root_system

ACCEPTANCE_LINES = []


@pytest.fixture
def record_criterion():
    def record(number, passed, detail):
        ACCEPTANCE_LINES.append(f"criterion {number}: {'PASS' if passed else 'FAIL'} - {detail}")

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def rs_of():
    return build_root_system
