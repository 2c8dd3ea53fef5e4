import pytest

from toricoh.chow import build_chow
from toricoh.fan import build_del_pezzo_fan, build_projective_fan

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def p1():
    return build_projective_fan(1)


@pytest.fixture(scope="session")
def p2():
    return build_projective_fan(2)


@pytest.fixture(scope="session")
def p3():
    return build_projective_fan(3)


@pytest.fixture(scope="session")
def v2():
    return build_del_pezzo_fan(2)


@pytest.fixture(scope="session")
def v4():
    return build_del_pezzo_fan(4)


@pytest.fixture(scope="session")
def ring2(v2):
    return build_chow(v2)


@pytest.fixture(scope="session")
def ring4(v4):
    return build_chow(v4)


@pytest.fixture
def acceptance_line():
    def record(line):
        print(line)
        ACCEPTANCE_LINES.append(line)
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
