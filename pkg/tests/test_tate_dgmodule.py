import pytest

from burchlab.dgmodule import build_semifree_resolution, taylor_module_fast_path
from burchlab.matrices import FreeModuleElement
from burchlab.resolve import ModulePresentation
from burchlab.tate import TateAlgebra, acyclic_closure
from burchlab.taylor import TaylorComplex

P = 32003


def test_hypersurface_closure_is_koszul(hyper_ideal):
    A = acyclic_closure(hyper_ideal, through=6)
    assert A.complex.poincare_coeffs() == [1, 1]
    A.check_unit()
    A.check_leibniz()


def test_m2_acyclic_closure_ranks(m2_ideal):
    A = acyclic_closure(m2_ideal, through=6, basis_guard=100000)
    assert A.complex.poincare_coeffs() == [1, 3, 5, 10, 24, 55, 118]
    A.check_unit()
    A.check_leibniz(4)
    A.check_commutative(4)
    A.check_associative(4)
    A.complex.check_dd_zero()
    for n in range(1, 5):
        assert A.complex.homology_is_zero(n)


def test_divided_power_arithmetic(m2_ideal):
    A = acyclic_closure(m2_ideal, through=6, basis_guard=100000)
    # gamma_a(v) * gamma_b(v) = binom(a+b, a) gamma_{a+b}(v) for a degree-2 variable
    v = next(i for i, d in enumerate(A.var_degrees) if d == 2)
    hit = A.mul_keys(((v, 1),), ((v, 1),))
    assert hit is not None
    sign, coeff, key = hit
    assert (sign, coeff, key) == (1, 2, ((v, 2),))


def test_fast_path_module(m2_ideal):
    R = m2_ideal.ring
    X, Y, psi = taylor_module_fast_path(m2_ideal, [R.parse("x"), R.parse("y")])
    assert X.complex.poincare_coeffs() == [1, 3, 3, 1]
    assert Y.complex.poincare_coeffs() == [1, 5, 10, 10, 5, 1]
    Y.check_unit()
    Y.check_leibniz()
    Y.check_associative(5)
    for n in range(1, 5):
        assert Y.complex.homology_is_zero(n)
    # psi is a map of dg algebras: psi(a * b) = psi(a) * psi(b)
    for da in range(X.complex.top() + 1):
        for db in range(X.complex.top() + 1 - da):
            for ia in range(X.complex.rank(da)):
                for ib in range(X.complex.rank(db)):
                    left = psi.apply(da + db, X.product_basis(da, ia, db, ib))
                    right = Y.full.product_elements(
                        da, psi.apply(da, FreeModuleElement.basis(R, ia)),
                        db, psi.apply(db, FreeModuleElement.basis(R, ib)))
                    assert left == right


def test_semifree_resolution_over_koszul(hyper_ideal):
    X = TaylorComplex(hyper_ideal.ring, [hyper_ideal.ring.parse("x^2")])
    k = ModulePresentation.residue_field(hyper_ideal)
    Y, psi = build_semifree_resolution(k, X, up_to=7)
    assert Y.complex.poincare_coeffs()[:7] == [1, 2, 2, 2, 2, 2, 2]
    Y.check_unit()
    Y.check_leibniz()
    Y.check_associative(5)
    psi.check_chain_map()
    for n in range(1, 6):
        assert Y.complex.homology_is_zero(n)


def test_semifree_trivial_module_is_the_algebra(m2_ideal):
    X = TaylorComplex(m2_ideal.ring, m2_ideal.gens)
    rm = ModulePresentation.cyclic(m2_ideal, [])
    Y, psi = build_semifree_resolution(rm, X, up_to=4)
    assert Y.complex.poincare_coeffs() == X.complex.poincare_coeffs()


def test_semifree_generators_count_betti(m2_ideal):
    # generators adjoined in degree n match beta_n^R(k) = 2^n
    X = TaylorComplex(m2_ideal.ring, m2_ideal.gens)
    k = ModulePresentation.residue_field(m2_ideal)
    Y, psi = build_semifree_resolution(k, X, up_to=6)
    from collections import Counter
    counts = Counter(Y.gen_hom_degrees)
    assert [counts[n] for n in range(5)] == [1, 2, 4, 8, 16]
    psi.check_chain_map()
