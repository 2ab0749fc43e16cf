import pytest

from salemscope.corpus import salem_polys, salem_rows

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def rows():
    return salem_rows()


@pytest.fixture(scope="session")
def polys():
    return salem_polys()


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
