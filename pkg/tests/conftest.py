import pytest

from homcob.group import make_cyclic, make_dihedral, make_symmetric


@pytest.fixture(scope="session")
def Z2():
    return make_cyclic(2)


@pytest.fixture(scope="session")
def Z3():
    return make_cyclic(3)


@pytest.fixture(scope="session")
def S3():
    return make_symmetric(3)


@pytest.fixture(scope="session")
def D4():
    return make_dihedral(4)


def pytest_terminal_summary(terminalreporter):
    from acceptance_log import RESULTS

    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in RESULTS:
        terminalreporter.write_line(line)
