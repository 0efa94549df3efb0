import pytest

from klmatch import INFINITY, CoxeterMatrix, new_system


def rank3(m12, m23, m13):
    return new_system(CoxeterMatrix(((1, m12, m13), (m12, 1, m23), (m13, m23, 1))))


@pytest.fixture(scope="session")
def A2():
    return new_system(CoxeterMatrix.type_a(2))


@pytest.fixture(scope="session")
def A3():
    return new_system(CoxeterMatrix.type_a(3))


@pytest.fixture(scope="session")
def B2():
    return new_system(CoxeterMatrix.type_b(2))


@pytest.fixture(scope="session")
def B3():
    return new_system(CoxeterMatrix.type_b(3))


@pytest.fixture(scope="session")
def affine_A2():
    return rank3(3, 3, 3)


@pytest.fixture(scope="session")
def free3():
    return rank3(INFINITY, INFINITY, INFINITY)


def dihedral(m):
    return new_system(CoxeterMatrix.from_dihedral(m))


@pytest.fixture(scope="session")
def example(A3):
    """The A3 worked example: H = {s2}, u = s1, w = s1s2s3s1 (0-based generators)."""
    from klmatch.poset import build_interval

    w = A3.parse_word("1 2 3 1")
    return A3, frozenset({1}), A3.parse_word("1"), w, build_interval(A3, w, {1})


# one line per acceptance criterion, printed after the run
ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[k])
