import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from fibtrib.mpreal import constants  # noqa: E402

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def c():
    return constants(1024)


@pytest.fixture(scope="session")
def verify_report():
    from fibtrib.report import verify
    return verify()


@pytest.fixture(scope="session")
def campaign(verify_report):
    return verify_report.campaign_result


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
