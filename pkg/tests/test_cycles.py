import pytest

from burchlab.ainfty import AInfAlgebra, AInfModule
from burchlab.bar import AInfBarOps, BarComplex, DgBarOps
from burchlab.burch import burch_data
from burchlab.contraction import minimalize
from burchlab.cycles import (burch_cycles, project_to_minimal, rho_cycles_general,
                             rho_cycles_golod, splitting_check)
from burchlab.dgmodule import build_semifree_resolution, taylor_module_fast_path
from burchlab.errors import InputError
from burchlab.matrices import FreeModuleElement
from burchlab.resolve import ModulePresentation
from burchlab.taylor import TaylorComplex

P = 32003


@pytest.fixture(scope="module")
def bione_data(bione_ideal):
    bd = burch_data(bione_ideal)
    X = TaylorComplex(bione_ideal.ring, bd.gens)
    return bd, X, burch_cycles(bd, X.complex)


def test_bione_burch_cycle_formula(bione_data):
    bd, X, bcs = bione_data
    R = X.ring
    # the single pair extends x by the independent linear form y; the cycle
    # is y e_2 - x^2 e_1 over the generators (y^2, x^2 y, x^4)
    assert bcs.pairs() == [(0, 1)]
    cyc = bcs.cycles[(0, 1)]
    assert cyc.omega == FreeModuleElement(R, {1: R.parse("y"), 0: R.parse("-x^2")})
    assert X.complex.diff(2).apply(cyc.preimage) == cyc.omega
    assert cyc.preimage.is_reduced_nonzero_mod_max_ideal()


def test_bione_splitting_fails_for_every_witness(bione_data):
    bd, X, bcs = bione_data
    verdict = splitting_check(bcs.cycles[(0, 1)].preimage, X.complex.diff(2), bd)
    assert verdict.kind == "fails"
    assert verdict.boundary_coeffs_in_BI
    assert verdict.witness is None


def test_m2_burch_cycles(m2_ideal):
    bd = burch_data(m2_ideal)
    X = TaylorComplex(m2_ideal.ring, bd.gens)
    bcs = burch_cycles(bd, X.complex)
    assert bcs.pairs() == [(0, 1)]
    assert bcs.pairs(within_b=True) == [(0, 1)]
    R = m2_ideal.ring
    cyc = bcs.cycles[(0, 1)]
    assert X.complex.diff(1).apply(cyc.omega) == FreeModuleElement(R, {})


def test_splitting_zero_boundary_mode(m2_ideal, bione_data):
    bd, X, _ = bione_data
    R = m2_ideal.ring
    # a genuine cycle of the X-level differential: zero boundary reported
    from burchlab.groebner import syzygy_matrix
    v = FreeModuleElement(R, {0: R.one()})
    import burchlab.matrices as mats
    zero = mats.PolyMatrix.zero(R, [0], [3])
    verdict = splitting_check(v, zero, bd)
    assert verdict.kind == "zero_boundary"
    assert verdict.ok


def test_splitting_precondition(m2_ideal):
    bd = burch_data(m2_ideal)
    X = TaylorComplex(m2_ideal.ring, bd.gens)
    R = m2_ideal.ring
    with pytest.raises(InputError):
        splitting_check(FreeModuleElement(R, {0: R.parse("x")}), X.complex.diff(2), bd)


@pytest.fixture(scope="module")
def m2_dg_bar(m2_ideal):
    bd = burch_data(m2_ideal)
    X = TaylorComplex(m2_ideal.ring, bd.gens)
    k = ModulePresentation.residue_field(m2_ideal)
    Y, psi = build_semifree_resolution(k, X, up_to=8)
    B = BarComplex(DgBarOps(X, Y), m2_ideal, cap=7)
    bcs = burch_cycles(bd, X.complex)
    return bd, B, psi, bcs


def test_general_cycles_even_q(m2_dg_bar):
    bd, B, psi, bcs = m2_dg_bar
    for q in (4, 6):
        recs = rho_cycles_general(bcs, B, psi, q)
        assert len(recs) == 1
        for rec in recs:
            # cycle property is verified inside the constructor; re-check here
            assert not B.complex.diff(q).apply(rec.alpha).map_coords(
                B.quotient.normal_form).coords
            verdict = splitting_check(rec.rho, B.complex.diff(q), bd)
            assert verdict.kind == "splits"
            assert str(verdict.witness) == "y"


def test_general_cycle_projection_measured(m2_dg_bar):
    # measured survivor counts are reported; on this ring the nonminimal-bar
    # classes happen to land in the contractible part (see the ledger), so the
    # projection test certifies the mechanism rather than a positive count
    bd, B, psi, bcs = m2_dg_bar
    ctr = minimalize(B.complex, through=7)
    assert ctr.small.poincare_coeffs()[:7] == [2 ** i for i in range(7)]
    recs = rho_cycles_general(bcs, B, psi, 4)
    certs, survivors = project_to_minimal(ctr, recs, B.quotient, 4)
    assert len(certs) == len(recs)
    assert all(c.killed_by_m for c in certs)
    assert survivors >= 0


def test_odd_q_requires_free_algebra(m2_dg_bar):
    bd, B, psi, bcs = m2_dg_bar
    from burchlab.errors import InternalCheckError
    with pytest.raises(InternalCheckError):
        rho_cycles_general(bcs, B, psi, 5)


@pytest.fixture(scope="module")
def m2_golod_bar(m2_ideal):
    R = m2_ideal.ring
    bd = burch_data(m2_ideal)
    X, Ymod, _psi = taylor_module_fast_path(m2_ideal, [R.parse("x"), R.parse("y")])
    alg = AInfAlgebra(minimalize(X.complex), X)
    mod = AInfModule(alg, minimalize(Ymod.complex), Ymod)
    B = BarComplex(AInfBarOps(alg, mod), m2_ideal, cap=8)
    bcs = burch_cycles(bd, alg.complex)
    return bd, B, bcs


def test_golod_cycle_counts_and_splitting(m2_golod_bar):
    bd, B, bcs = m2_golod_bar
    for q in range(3, 8):
        recs = rho_cycles_golod(bcs, B, q)
        assert len(recs) == 3 ** ((q - 3) // 2)
        for rec in recs:
            verdict = splitting_check(rec.rho, B.complex.diff(q), bd)
            assert verdict.kind == "splits"


def test_golod_cycles_survive_in_minimal_bar(m2_golod_bar):
    bd, B, bcs = m2_golod_bar
    ctr = minimalize(B.complex, through=8)
    assert not ctr.htpy  # the bar is already minimal here
    for q in (3, 5, 7):
        recs = rho_cycles_golod(bcs, B, q)
        certs, survivors = project_to_minimal(ctr, recs, B.quotient, q)
        assert survivors == len(recs)
        assert all(c.survives for c in certs)


def test_golod_regime_guard(m2_dg_bar):
    bd, B, psi, bcs = m2_dg_bar
    with pytest.raises(InputError):
        rho_cycles_golod(bcs, B, 4)  # dg regime rejected
