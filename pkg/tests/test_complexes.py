import pytest

from burchlab.contraction import minimalize
from burchlab.errors import ResourceCapError
from burchlab.ring import PolyRing
from burchlab.taylor import TaylorComplex

P = 32003


@pytest.fixture(scope="module")
def R():
    return PolyRing(P, ("x", "y"))


def test_koszul_on_one_element(R):
    K = TaylorComplex(R, [R.parse("x^2")])
    assert K.complex.poincare_coeffs() == [1, 1]
    assert str(K.complex.diff(1).entry(0, 0)) == "x^2"


def test_taylor_m2_shape_and_boundary(R, ):
    T = TaylorComplex(R, [R.parse("x^2"), R.parse("x*y"), R.parse("y^2")])
    assert T.complex.poincare_coeffs() == [1, 3, 3, 1]
    col = T.complex.diff(2).column(T.position[2][(0, 1)])
    # d e_{12} = +/- (y e_1 - x e_2) in the input order x^2, xy
    coeffs = {i: str(f) for i, f in col.coords.items()}
    assert coeffs in ({0: "32002*y", 1: "x"}, {0: "y", 1: "32002*x"})
    T.complex.check_homogeneous()


def test_taylor_squares_vanish(R):
    T = TaylorComplex(R, [R.parse("x^2"), R.parse("x*y"), R.parse("y^2")])
    for n in (1, 3):
        for t in range(T.complex.rank(n)):
            assert not T.product_basis(n, t, n, t).coords


def test_taylor_dg_axioms(R):
    T = TaylorComplex(R, [R.parse("x^4"), R.parse("x^2*y"), R.parse("y^2")])
    T.check_unit()
    T.check_leibniz()
    T.check_commutative()
    T.check_associative(6)


def test_taylor_exactness_over_Q(R):
    T = TaylorComplex(R, [R.parse("x^2"), R.parse("x*y"), R.parse("y^2")])
    for n in range(1, 4):
        assert T.complex.homology_is_zero(n)


def test_taylor_generator_guard(R):
    with pytest.raises(ResourceCapError):
        TaylorComplex(R, [R.monomial((a, 13 - a)) for a in range(13)])


# -- minimalize / contraction -------------------------------------------------


def test_minimal_input_identity_contraction(R):
    T = TaylorComplex(R, [R.parse("x^2"), R.parse("x*y"), R.parse("y^2")])
    ctr = minimalize(T.complex)
    assert ctr.small.poincare_coeffs() == [1, 3, 2]
    again = minimalize(ctr.small)
    assert again.small.poincare_coeffs() == [1, 3, 2]
    assert not again.htpy  # h = 0 on minimal input
    again.verify()


def test_minimalize_redundant_generator_hand_case(R):
    # {x^2, x^2*y}: the Taylor complex contracts onto the Koszul complex on x^2
    T = TaylorComplex(R, [R.parse("x^2"), R.parse("x^2*y")])
    ctr = minimalize(T.complex)
    assert ctr.small.poincare_coeffs() == [1, 1]
    assert str(ctr.small.diff(1).entry(0, 0)) == "x^2"
    ctr.verify()


@pytest.mark.parametrize("gens,minimal", [
    (["x^2", "x*y", "y^2"], [1, 3, 2]),
    (["x^4", "x^2*y", "y^2"], [1, 3, 2]),
    (["x^3", "x^2*y", "x*y", "y^2"], [1, 3, 2]),
])
def test_minimalize_corpus_taylor(R, gens, minimal):
    T = TaylorComplex(R, [R.parse(s) for s in gens])
    ctr = minimalize(T.complex)
    assert ctr.small.poincare_coeffs() == minimal
    ctr.verify()
    ctr.small.check_dd_zero()
    for n in range(1, len(minimal) - 1):
        assert ctr.small.homology_is_zero(n)


def test_minimalize_three_vars():
    R3 = PolyRing(P, ("x", "y", "z"))
    T = TaylorComplex(R3, [R3.parse(t) for t in ["x^2", "x*y", "x*z", "y^2", "y*z", "z^2"]],
                      verify=False)
    ctr = minimalize(T.complex)
    assert ctr.small.poincare_coeffs() == [1, 6, 8, 3]
    ctr.verify()
