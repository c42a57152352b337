import pytest

from hopfx.exactfield import QQ
from hopfx.hopf import (
    cyclic_group,
    example_drinfeld_double,
    example_group_algebra,
    example_sweedler,
    symmetric_group,
    trivial_R,
)
from hopfx.quasitriangular import QTStructure, find_ribbon

SMALL = ["Z2", "H4_0", "H4_1", "DZ2"]


def _make(name: str) -> QTStructure:
    if name == "Z2":
        G = example_group_algebra(cyclic_group(2), QQ, name="Q[Z2]")
        return QTStructure.build(G, trivial_R(G))
    if name.startswith("H4_"):
        H, R = example_sweedler(int(name[-1]))
        return QTStructure.build(H, R)
    if name == "DZ2":
        H, R = example_drinfeld_double(cyclic_group(2), name="D(Z2)")
        return QTStructure.build(H, R)
    if name == "DS3":
        H, R = example_drinfeld_double(symmetric_group(3), name="D(S3)")
        return QTStructure.build(H, R)
    raise KeyError(name)


_cache: dict = {}


def qt(name: str) -> QTStructure:
    """Shared, lazily built fixture algebras (with a ribbon element attached when one exists)."""
    if name not in _cache:
        Q = _make(name)
        if name != "DS3":
            Q.ribbon = find_ribbon(Q)
        _cache[name] = Q
    return _cache[name]


@pytest.fixture(params=SMALL)
def name(request):
    return request.param


@pytest.fixture
def Q(name):
    return qt(name)


@pytest.fixture(scope="session")
def ds3():
    return qt("DS3")


def pytest_terminal_summary(terminalreporter):
    from tests import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(test_acceptance.RESULTS):
            terminalreporter.write_line(test_acceptance.RESULTS[n])
