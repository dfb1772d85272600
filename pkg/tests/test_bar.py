import pytest

from burchlab.ainfty import AInfAlgebra, AInfModule
from burchlab.bar import AInfBarOps, BarComplex, DgBarOps
from burchlab.contraction import minimalize
from burchlab.dgmodule import build_semifree_resolution, taylor_module_fast_path
from burchlab.groebner import Ideal
from burchlab.resolve import ModulePresentation, resolve_over_R
from burchlab.ring import PolyRing
from burchlab.taylor import TaylorComplex

P = 32003


@pytest.fixture(scope="module")
def hyper_pair(hyper_ideal):
    R = hyper_ideal.ring
    X = TaylorComplex(R, [R.parse("x^2")])
    k = ModulePresentation.residue_field(hyper_ideal)
    Y, psi = build_semifree_resolution(k, X, up_to=10)
    return X, Y, psi


def test_bar_of_ring_over_itself(hyper_ideal):
    R = hyper_ideal.ring
    X = TaylorComplex(R, [R.parse("x^2")])
    rm = ModulePresentation.cyclic(hyper_ideal, [])
    Y, _psi = build_semifree_resolution(rm, X, up_to=8)
    B = BarComplex(DgBarOps(X, Y), hyper_ideal, cap=8)
    assert B.rank_formula_check() == [1] * 9
    B.exactness_check()
    assert B.h0_dims(2) == [1, 1, 0]  # H_0 = R = k[x]/(x^2)


def test_ainf_bar_periodicity_matches_resolution_oracle(hyper_ideal, hyper_pair):
    X, Y, _ = hyper_pair
    algX = AInfAlgebra(minimalize(X.complex), X, arity_cap=4, degree_cap=10)
    ctrY = minimalize(Y.complex).truncated(8)
    mod = AInfModule(algX, ctrY, Y, arity_cap=4, degree_cap=10)
    B = BarComplex(AInfBarOps(algX, mod), hyper_ideal, cap=8)
    ranks = B.rank_formula_check()
    # independent oracle: the minimal R-free resolution of k
    k = ModulePresentation.residue_field(hyper_ideal)
    res = resolve_over_R(k, 8)
    assert ranks == res.poincare_coeffs() == [1] * 9
    B.exactness_check(7)
    assert B.minimality_report() == []
    assert B.h0_dims(2) == [1, 0, 0]


@pytest.mark.parametrize("regime", ["dg", "ainf"])
def test_bar_on_sign_sensitive_ring(bione_ideal, regime):
    # n^2 is not inside I here, so wrong bar signs cannot hide modulo I
    R = bione_ideal.ring
    X, Ymod, _psi = taylor_module_fast_path(bione_ideal, [R.parse("x^2"), R.parse("y")])
    if regime == "dg":
        B = BarComplex(DgBarOps(X, Ymod), bione_ideal, cap=6)
    else:
        alg = AInfAlgebra(minimalize(X.complex), X, arity_cap=4, degree_cap=10)
        mod = AInfModule(alg, minimalize(Ymod.complex), Ymod, arity_cap=4, degree_cap=10)
        B = BarComplex(AInfBarOps(alg, mod), bione_ideal, cap=6)
    B.rank_formula_check()
    B.exactness_check(5)
    M = ModulePresentation.cyclic(bione_ideal, [R.parse("x^2"), R.parse("y")])
    assert B.h0_dims(3) == M.dims(3)


def test_dg_bar_rank_formula_mixed_shape(m2_ideal):
    # ranks (1,3,3,1) x (1,2,1)-shaped Y: the composition count must match
    # the generating function expansion exactly
    R = m2_ideal.ring
    X, Ymod, _psi = taylor_module_fast_path(m2_ideal, [R.parse("x"), R.parse("y")])
    B = BarComplex(DgBarOps(X, Ymod), m2_ideal, cap=6)
    ranks = B.rank_formula_check()
    # hand expansion of (1+t)^5 / (1 - t((1+t)^3 - 1)) through degree 4
    assert ranks[:5] == [1, 5, 13, 28, 60]


def test_ainf_bar_golod_ranks(m2_ideal, m23_ideal):
    R = m2_ideal.ring
    X, Ymod, _ = taylor_module_fast_path(m2_ideal, [R.parse("x"), R.parse("y")])
    alg = AInfAlgebra(minimalize(X.complex), X)
    mod = AInfModule(alg, minimalize(Ymod.complex), Ymod)
    B = BarComplex(AInfBarOps(alg, mod), m2_ideal, cap=8)
    assert B.rank_formula_check() == [2 ** i for i in range(9)]
    assert B.minimality_report() == []
    B.exactness_check(7)

    R3 = m23_ideal.ring
    X3, Y3, _ = taylor_module_fast_path(m23_ideal, [R3.var(i) for i in range(3)])
    alg3 = AInfAlgebra(minimalize(X3.complex), X3)
    mod3 = AInfModule(alg3, minimalize(Y3.complex), Y3)
    B3 = BarComplex(AInfBarOps(alg3, mod3), m23_ideal, cap=6)
    assert B3.rank_formula_check() == [3 ** i for i in range(7)]
    assert B3.minimality_report() == []
    B3.exactness_check(5)
