import pytest

from entcat.vectors import parse_vector

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def example1():
    return parse_vector("0.4,0.35,0.15,0.1"), parse_vector("0.5,0.2,0.2,0.1")


@pytest.fixture
def jp_pair():
    return parse_vector("0.4,0.4,0.1,0.1"), parse_vector("0.5,0.25,0.25,0")


@pytest.fixture
def sun_pair():
    return (
        parse_vector("0.414047778,0.31764445,0.18499118,0.083316592"),
        parse_vector("0.428610282,0.289194489,0.212421079,0.06977415"),
    )


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
