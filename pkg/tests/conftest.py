import pytest

from burchlab.groebner import Ideal
from burchlab.pipeline import RingContext
from burchlab.resolve import ModulePresentation
from burchlab.ring import PolyRing


@pytest.fixture(scope="session")
def R2():
    return PolyRing(32003, ("x", "y"))


@pytest.fixture(scope="session")
def R1():
    return PolyRing(32003, ("x",))


@pytest.fixture(scope="session")
def R3():
    return PolyRing(32003, ("x", "y", "z"))


@pytest.fixture(scope="session")
def m2_ideal(R2):
    return Ideal(R2, [R2.parse("x^2"), R2.parse("x*y"), R2.parse("y^2")])


@pytest.fixture(scope="session")
def bione_ideal(R2):
    return Ideal(R2, [R2.parse("x^4"), R2.parse("x^2*y"), R2.parse("y^2")])


@pytest.fixture(scope="session")
def jn_ideal(R2):
    # (x, y) * (x^2, y)
    return Ideal(R2, [R2.parse("x^3"), R2.parse("x^2*y"), R2.parse("x*y"), R2.parse("y^2")])


@pytest.fixture(scope="session")
def m23_ideal(R3):
    return Ideal(R3, [R3.parse(t) for t in ["x^2", "x*y", "x*z", "y^2", "y*z", "z^2"]])


@pytest.fixture(scope="session")
def hyper_ideal(R1):
    return Ideal(R1, [R1.parse("x^2")])


@pytest.fixture(scope="session")
def ctx_m2(R2, m2_ideal):
    return RingContext.build(R2, m2_ideal)


@pytest.fixture(scope="session")
def ctx_m23(R3, m23_ideal):
    return RingContext.build(R3, m23_ideal)


@pytest.fixture(scope="session")
def ctx_bione(R2, bione_ideal):
    return RingContext.build(R2, bione_ideal)


@pytest.fixture(scope="session")
def ctx_jn(R2, jn_ideal):
    return RingContext.build(R2, jn_ideal)


@pytest.fixture(scope="session")
def k_over_m2(m2_ideal):
    return ModulePresentation.residue_field(m2_ideal)


@pytest.fixture(scope="session")
def k_over_m23(m23_ideal):
    return ModulePresentation.residue_field(m23_ideal)
