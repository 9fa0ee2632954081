import pytest

from hypsector.orbit import enumerate_ball, gamma_c


@pytest.fixture(scope="session")
def gamma4():
    return gamma_c(4)


@pytest.fixture(scope="session")
def ball_400(gamma4):
    return enumerate_ball(gamma4, 400)


@pytest.fixture(scope="session")
def ball_1e3(gamma4):
    return enumerate_ball(gamma4, 1e3)


@pytest.fixture(scope="session")
def ball_1e5(gamma4):
    # about 2.7M elements, ~10 s
    return enumerate_ball(gamma4, 1e5)


CRITERIA_LINES: dict[int, str] = {}


@pytest.fixture
def criterion():
    """Record and print the single pass/fail line of an acceptance criterion."""
    def record(number: int, passed: bool, detail: str):
        line = f"criterion {number}: {'PASS' if passed else 'FAIL'}  {detail}"
        CRITERIA_LINES[number] = line
        print(line)
        return passed
    return record


def pytest_terminal_summary(terminalreporter):
    if CRITERIA_LINES:
        terminalreporter.section("acceptance criteria")
        for n in sorted(CRITERIA_LINES):
            terminalreporter.write_line(CRITERIA_LINES[n])
