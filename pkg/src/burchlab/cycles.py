"""Burch cycles, the syzygy cycles they generate in bar resolutions, the
splitting criterion, and projection onto minimal resolutions.

From certified Burch data (a_j, x_i, s_i with a_{j_i} = x_i s_i) and a
resolution X of R aligned so that d(e_t) = a_t, the cycle for a pair
(i, j) is

    omega = x_j e_{j_i} - x_i (sum_l r_l e_l),   x_j s_i = sum_l r_l a_l,

with a preimage f in X_2.  In the dg bar resolution the elements

    rho = 1[f|e|...|e]psi(e) - 1[e f|e|...|e]psi(1)      (q >= 4 even)
    rho = 1[e f|e|...|e]psi(e)                           (q >= 5 odd)

are cycles after multiplication by the socle lift s_i; in the minimal
A-infinity bar of a Golod module the simpler family s_i[f|e_{i_1}|..]y
works in every degree q >= 3.  Splitting is certified by the boundary
criterion: d(rho) lies in n*G but not in BI*G, equivalently some socle
element s has s*d(rho) in I*G but outside n*I*G.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

from .bar import BarComplex, BarWord
from .burch import BurchData
from .complexes import ChainMap, GradedFreeComplex
from .errors import InputError, InternalCheckError
from .groebner import Ideal, SubmoduleBasis, lift_through, maximal_ideal, syzygies_of
from .linalg import SparseEchelon
from .matrices import FreeModuleElement, PolyMatrix
from .resolve import kernel_gens_over_R
from .ring import Polynomial


@dataclass
class BurchCycle:
    pair: tuple           # (i, j), 0-based, i < j, i < b
    omega: FreeModuleElement   # cycle in X_1
    preimage: FreeModuleElement  # f in X_2 with d(f) = omega
    r_coeffs: FreeModuleElement  # expansion of x_j s_i over the generators


@dataclass
class BurchCycleSet:
    data: BurchData
    complex: GradedFreeComplex
    cycles: dict = field(default_factory=dict)  # (i, j) -> BurchCycle

    def pairs(self, within_b: bool = False):
        b = self.data.b
        out = [p for p in sorted(self.cycles) if (p[1] < b if within_b else True)]
        return out


def burch_cycles(bd: BurchData, X: GradedFreeComplex) -> BurchCycleSet:
    """Construct omega and f for every pair i < j with i < b.

    X_1 must be aligned with bd.gens: column t of d_1 equals gens[t].
    Verifies: cycles, preimages, f not in n X_2, d(f) outside BI X_1 when
    j < b, and independence of the omegas in Z_1/n Z_1.
    """
    ring = bd.ideal.ring
    d1 = X.diff(1)
    if d1.cols != len(bd.gens):
        raise InputError("X_1 rank does not match the generator count")
    for t, a in enumerate(bd.gens):
        col = d1.column(t)
        if col.coords.get(0, ring.zero()) != a or len(col.coords) > 1:
            raise InputError("X_1 basis is not aligned with the Burch generators")

    gens_cols = [FreeModuleElement(ring, {0: g}) for g in bd.gens]
    d2_cols = [X.diff(2).column(j) for j in range(X.rank(2))]
    out = BurchCycleSet(data=bd, complex=X)
    n_lin = len(bd.xs)
    for i in range(bd.b):
        for j in range(i + 1, n_lin):
            xs_j, xs_i = bd.xs[j], bd.xs[i]
            s_i, ji = bd.socle_lifts[i], bd.j_indices[i]
            target = FreeModuleElement(ring, {0: xs_j * s_i})
            r = lift_through(gens_cols, 1, target, ring)
            if r is None:
                raise InternalCheckError("x_j * s_i failed to lift into I")
            omega = FreeModuleElement(ring, {ji: xs_j})
            for l, rl in r.coords.items():
                omega = omega - FreeModuleElement(ring, {l: xs_i * rl})
            if d1.apply(omega).coords:
                raise InternalCheckError("omega is not a cycle")
            f = lift_through(d2_cols, X.rank(1), omega, ring)
            if f is None:
                raise InternalCheckError("omega is not a boundary; X is not a resolution")
            if not f.is_reduced_nonzero_mod_max_ideal():
                raise InternalCheckError("preimage f lies in n X_2")
            out.cycles[(i, j)] = BurchCycle(pair=(i, j), omega=omega, preimage=f, r_coeffs=r)

    # d(f) = omega avoids BI X_1 for the theorem pairs (both indices < b)
    BI = bd.burch_ideal
    for (i, j), cyc in out.cycles.items():
        if j < bd.b:
            if all(BI.contains(c) for c in cyc.omega.coords.values()):
                raise InternalCheckError(f"omega for pair {(i, j)} lies in BI X_1")

    # independence of the omegas in Z_1 / n Z_1
    z1 = syzygies_of([d1.column(t) for t in range(d1.cols)], 1, ring)
    degrees = X.basis_degrees(1)
    from .resolve import minimal_module_generators

    zero_ideal = Ideal(ring, [])
    omegas = [cyc.omega for cyc in out.cycles.values()]
    kept = minimal_module_generators(omegas, degrees, zero_ideal,
                                     extra_span=[w.mul_poly(g) for w in z1
                                                 for g in ring.maximal_ideal_gens()])
    if len(kept) != len(omegas):
        raise InternalCheckError("Burch cycles are dependent modulo n Z_1")
    return out


def _word_combo_element(B: BarComplex, q: int, combos) -> FreeModuleElement:
    """combos: list of ({word: coeff}) to sum into an element of B_q."""
    total = {}
    red = B.quotient.normal_form
    for combo in combos:
        for w, c in combo.items():
            cur = total.get(w, B.ring.zero()) + c
            cur = red(cur)
            if cur:
                total[w] = cur
            else:
                total.pop(w, None)
    return B.element_from_words(q, total)


def _expand_word(B, slots, yslot) -> dict:
    """Words from slot elements: slots = [(deg, element in X)], y = (deg, element)."""
    combos = [((), B.ring.one())]
    for d, v in slots:
        nxt = []
        for xs, c in combos:
            for i, f in v.coords.items():
                nxt.append((xs + ((d, i),), c * f))
        combos = nxt
    yd, yv = yslot
    out = {}
    red = B.quotient.normal_form
    for xs, c in combos:
        for iy, fy in yv.coords.items():
            w = BarWord(xs, (yd, iy))
            val = red(out.get(w, B.ring.zero()) + c * fy)
            if val:
                out[w] = val
            else:
                out.pop(w, None)
    return out


@dataclass
class RhoCycle:
    pair: tuple
    label: str
    rho: FreeModuleElement     # basis-part element of B_q
    alpha: FreeModuleElement   # s_i * rho, a cycle
    socle: Polynomial
    q: int


def rho_cycles_general(bcs: BurchCycleSet, B: BarComplex, psi: ChainMap, q: int,
                       e_index: int = 0):
    """Theorem-A cycles in the dg bar resolution, all pairs i < j, i < b."""
    if B.regime != "dg":
        raise InputError("general-case cycles require the dg regime")
    if q < 4:
        raise InputError("general-case cycles need q >= 4 (odd: q >= 5)")
    ring = B.ring
    X = B.ops.algebra
    e_elt = FreeModuleElement.basis(ring, e_index)
    psi_e = psi.apply(1, e_elt)
    psi_1 = psi.apply(0, FreeModuleElement.basis(ring, 0))
    out = []
    for (i, j) in bcs.pairs():
        cyc = bcs.cycles[(i, j)]
        f = cyc.preimage
        ef = X.product_elements(1, e_elt, 2, f)
        if q % 2 == 0:
            k = (q - 4) // 2
            w1 = _expand_word(B, [(2, f)] + [(1, e_elt)] * k, (1, psi_e))
            w2 = _expand_word(B, [(3, ef)] + [(1, e_elt)] * k, (0, psi_1))
            rho = _word_combo_element(B, q, [w1, {w: -c for w, c in w2.items()}])
        else:
            k = (q - 5) // 2
            if not ef.coords:
                raise InternalCheckError(
                    "e*f vanishes; the odd case needs a free-algebra resolution of R")
            w1 = _expand_word(B, [(3, ef)] + [(1, e_elt)] * k, (1, psi_e))
            rho = _word_combo_element(B, q, [w1])
        s = bcs.data.socle_lifts[i]
        alpha = rho.map_coords(lambda c: B.quotient.normal_form(c * s))
        boundary = B.complex.diff(q).apply(alpha).map_coords(B.quotient.normal_form)
        if boundary.coords:
            raise InternalCheckError(f"alpha for pair {(i, j)} at q={q} is not a cycle")
        out.append(RhoCycle(pair=(i, j), label=f"general q={q} pair={(i+1,j+1)}",
                            rho=rho, alpha=alpha, socle=s, q=q))
    return out


def rho_cycles_golod(bcs: BurchCycleSet, B: BarComplex, q: int, y_ref=None):
    """Theorem-B cycles s_i [f_{x_j,x_i} | e_{i_1} | ... | e_{i_d}] y in the
    minimal A-infinity bar, for 1 <= i < j <= b; exactly C(b,2) m^d of them."""
    if B.regime != "ainf":
        raise InputError("Golod cycles require the A-infinity regime")
    if q < 3:
        raise InputError("Golod cycles need q >= 3")
    if not B.ops.x_complex.is_minimal() or not B.ops.y_complex.is_minimal():
        raise InputError("Golod cycles need minimal X and Y")
    ring = B.ring
    d, r = divmod(q - 3, 2)
    if y_ref is None:
        if B.ops.y_complex.rank(r) == 0:
            raise InputError(f"Y has no basis in degree {r}")
        y_ref = (r, 0)
    m = B.ops.x_complex.rank(1)
    out = []
    for (i, j) in bcs.pairs(within_b=True):
        cyc = bcs.cycles[(i, j)]
        f = cyc.preimage
        s = bcs.data.socle_lifts[i]
        for tup in _index_tuples(m, d):
            slots = [(2, f)] + [(1, FreeModuleElement.basis(ring, t)) for t in tup]
            words = _expand_word(B, slots, (y_ref[0], FreeModuleElement.basis(ring, y_ref[1])))
            rho = _word_combo_element(B, q, [words])
            alpha = rho.map_coords(lambda c: B.quotient.normal_form(c * s))
            boundary = B.complex.diff(q).apply(alpha).map_coords(B.quotient.normal_form)
            if boundary.coords:
                raise InternalCheckError(
                    f"Golod cycle {(i, j)} {tup} at q={q} is not a cycle")
            out.append(RhoCycle(pair=(i, j), label=f"golod q={q} pair={(i+1,j+1)} e={tup}",
                                rho=rho, alpha=alpha, socle=s, q=q))
    expected = comb(bcs.data.b, 2) * (m ** d)
    if len(out) != expected:
        raise InternalCheckError(f"emitted {len(out)} cycles, expected {expected}")
    # independence modulo m B_q: unit coordinate parts must have full rank
    ech = SparseEchelon(ring.p)
    for rec in out:
        vec = {t: c.constant_coeff() for t, c in rec.rho.coords.items() if c.constant_coeff()}
        piv, _ = ech.insert(vec)
        if piv is None:
            raise InternalCheckError("Golod cycles are dependent modulo m B_q")
    return out


def _index_tuples(m, d):
    if d == 0:
        yield ()
        return
    def rec(prefix):
        if len(prefix) == d:
            yield tuple(prefix)
            return
        for t in range(m):
            prefix.append(t)
            yield from rec(prefix)
            prefix.pop()
    yield from rec([])


@dataclass
class SplitVerdict:
    kind: str                 # "splits" | "zero_boundary" | "fails"
    witness: Polynomial | None
    reason: str
    boundary_coeffs_in_BI: bool

    @property
    def ok(self) -> bool:
        return self.kind in ("splits", "zero_boundary")


def splitting_check(rho: FreeModuleElement, diff: PolyMatrix, bd: BurchData) -> SplitVerdict:
    """The direct-summand criterion for an element of a free module.

    rho must be part of a basis (nonzero modulo n F); its boundary must lie
    in n G but escape BI G, equivalently some socle element s has
    s d(rho) in I G but not in n I G.  Both formulations are evaluated and
    must agree.
    """
    ring = rho.ring
    if not rho.is_reduced_nonzero_mod_max_ideal():
        raise InputError("rho lies in m F; it is not part of a basis")
    w = diff.apply(rho)
    if not w.coords:
        return SplitVerdict("zero_boundary", None, "boundary vanishes identically", False)
    for c in w.coords.values():
        if c.constant_coeff():
            return SplitVerdict("fails", None, "boundary has a unit coefficient", False)
    BI = bd.burch_ideal
    outside_BI = any(not BI.contains(c) for c in w.coords.values())
    nI = maximal_ideal(ring).product(bd.ideal)
    witness = None
    from .burch import minimal_generators

    for s in minimal_generators(bd.socle.gens, ring):
        if any(nI.normal_form(s * c) for c in w.coords.values()):
            witness = s
            break
    if (witness is not None) != outside_BI:
        raise InternalCheckError("socle-witness and BI-membership tests disagree")
    if witness is not None:
        return SplitVerdict("splits", witness, "boundary escapes BI G", False)
    return SplitVerdict("fails", None,
                        "s d(rho) in n I G for every socle witness", True)


@dataclass
class ProjectionCertificate:
    label: str
    nonzero: bool
    killed_by_m: bool
    outside_m_kernel: bool

    @property
    def survives(self) -> bool:
        return self.nonzero and self.killed_by_m and self.outside_m_kernel


def project_to_minimal(ctr, cycles, quotient: Ideal, q: int):
    """Project cycles through a contraction of the bar complex and certify
    each image as a k-summand generator of ker(d_q) of the minimal complex.

    The direct test: u generates a k-summand of K iff m u = 0 and u is
    nonzero in K/mK.  Returns (certificates, survivor count = rank of the
    projected span modulo m K).
    """
    ring = quotient.ring
    small = ctr.small
    proj = ctr.proj_at(q)
    red = quotient.normal_form
    kergens = kernel_gens_over_R(small.diff(q), quotient)
    gen_degrees = small.basis_degrees(q)

    # strand span of m * K per internal degree, built on demand
    spans = {}

    def span_for(d):
        if d not in spans:
            idx = [(i, mm) for i, bdeg in enumerate(gen_degrees)
                   for mm in quotient.standard_monomials(d - bdeg)]
            pos = {key: t for t, key in enumerate(idx)}
            ech = SparseEchelon(ring.p)
            for g in kergens:
                gdeg = g.degree(gen_degrees)
                for mm in quotient.standard_monomials(d - gdeg):
                    if sum(mm) == 0:
                        continue
                    w = g.mul_term(mm, 1).map_coords(red)
                    vec = {}
                    for i2, f in w.coords.items():
                        for m2, c in f.terms.items():
                            t = pos[(i2, m2)]
                            vec[t] = (vec.get(t, 0) + c) % ring.p
                    ech.insert({k: v for k, v in vec.items() if v})
            spans[d] = (pos, ech)
        return spans[d]

    certs = []
    residual_rank = SparseEchelon(ring.p)
    for rec in cycles:
        v = proj.apply(rec.alpha).map_coords(red)
        nonzero = bool(v.coords)
        killed = True
        outside = False
        if nonzero:
            for g in ring.maximal_ideal_gens():
                if v.mul_poly(g).map_coords(red).coords:
                    killed = False
                    break
            # sanity: the projection is still a cycle
            if small.diff(q).apply(v).map_coords(red).coords:
                raise InternalCheckError("projected element is not a cycle")
        if nonzero and killed:
            dsum = v.degree(gen_degrees)
            pos, ech = span_for(dsum)
            vec = {}
            for i2, f in v.coords.items():
                for m2, c in f.terms.items():
                    vec[pos[(i2, m2)]] = c
            res, _ = ech.reduce(vec)
            outside = bool(res)
            if outside:
                # survivor count = rank of the projected span modulo m K
                residual_rank.insert({(dsum, t): c for t, c in res.items()})
        certs.append(ProjectionCertificate(
            label=rec.label, nonzero=nonzero, killed_by_m=killed,
            outside_m_kernel=outside))
    return certs, residual_rank.rank
