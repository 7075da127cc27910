import pytest

from hopfore.exactnum import GF, QZeta
from hopfore.grouprep import AbelianGroup, Character
from hopfore.hopfcore import QuotientSpec, make_hopf


def build(F, invariants, chi, a, alpha=None, quotient=None):
    G = AbelianGroup(tuple(invariants))
    return make_hopf(F, G, Character(G, F, chi), G.element(a), alpha, quotient)


@pytest.fixture(scope="session")
def inst_a():
    return build(GF(5), [4], [2], [1])


@pytest.fixture(scope="session")
def inst_a4():
    return build(GF(5), [4], [2], [1], quotient=QuotientSpec.power_zero(4))


@pytest.fixture(scope="session")
def inst_b():
    F = GF(17)
    return build(F, [16], [2], [1], quotient=QuotientSpec.power_central(8, F(1)))


@pytest.fixture(scope="session")
def inst_b_ambient():
    return build(GF(17), [16], [2], [1])


@pytest.fixture(scope="session")
def inst_c():
    F = QZeta(3)
    return build(F, [3], [F.generator], [1])


@pytest.fixture(scope="session")
def inst_d():
    return build(GF(5), [5], [1], [1], alpha=[1])


@pytest.fixture(scope="session")
def inst_a2():
    """F_5, Z_4 x Z_2: two cosets of <chi>."""
    return build(GF(5), [4, 2], [2, 1], [1, 0])


# one PASS/FAIL line per acceptance criterion -------------------------------

_criteria: dict = {}


def pytest_runtest_logreport(report):
    name = report.nodeid.rsplit("::", 1)[-1]
    if "test_acceptance.py" not in report.nodeid or not name.startswith("test_criterion_"):
        return
    num = int(name.split("_")[2])
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        prev = _criteria.get(num, (True, name))
        _criteria[num] = (prev[0] and report.outcome == "passed", name)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_criteria):
        ok, name = _criteria[num]
        terminalreporter.write_line(f"criterion {num:2d}: {'PASS' if ok else 'FAIL'}  ({name})")
