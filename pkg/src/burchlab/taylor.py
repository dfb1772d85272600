"""Dg algebra structures on free complexes; the Taylor complex in particular.

A DgAlgebra bundles a complex with a basis-level product table and a unit.
The Taylor complex of monomials m_1..m_s has basis e_S indexed by subsets,
differential d(e_S) = sum_k (-1)^k (lcm S / lcm S\\u_k) e_(S\\u_k), and
product e_S * e_T = sign * (lcm S * lcm T / lcm(S u T)) e_(S u T) for
disjoint S, T (zero otherwise), the sign being the shuffle sign of the
index merge.  It resolves Q/(m_1..m_s) for any monomial generating set and
is the workhorse dg resolution for monomial quotients.
"""

from __future__ import annotations

from itertools import combinations

from .complexes import GradedFreeComplex
from .errors import InternalCheckError, ResourceCapError
from .matrices import FreeModuleElement, PolyMatrix
from .ring import PolyRing, mono_deg, mono_div, mono_lcm, mono_mul

TAYLOR_GENERATOR_CAP = 12


class DgAlgebra:
    """A complex with unit and associative graded-commutative product.

    Subclasses implement product_basis(da, ia, db, ib) returning an element
    of degree da+db; element-level products extend bilinearly (polynomial
    coefficients are central, so no Koszul signs enter here).
    """

    complex: GradedFreeComplex

    @property
    def ring(self) -> PolyRing:
        return self.complex.ring

    def unit_element(self) -> FreeModuleElement:
        return FreeModuleElement.basis(self.ring, 0)

    def product_basis(self, da, ia, db, ib) -> FreeModuleElement:
        raise NotImplementedError

    def diff_basis(self, d, i) -> FreeModuleElement:
        return self.complex.diff(d).column(i)

    def product_elements(self, da, va: FreeModuleElement, db, vb: FreeModuleElement) -> FreeModuleElement:
        out = FreeModuleElement(self.ring, {})
        for ia, fa in va.coords.items():
            for ib, fb in vb.coords.items():
                base = self.product_basis(da, ia, db, ib)
                if base.coords:
                    out = out + base.mul_poly(fa * fb)
        return out

    # -- mechanical dg checks -------------------------------------------------

    def check_unit(self):
        for d in range(self.complex.top() + 1):
            for i in range(self.complex.rank(d)):
                left = self.product_basis(0, 0, d, i)
                right = self.product_basis(d, i, 0, 0)
                want = FreeModuleElement.basis(self.ring, i)
                if left != want or right != want:
                    raise InternalCheckError(f"unit law fails on basis ({d},{i})")

    def check_leibniz(self, through: int | None = None):
        top = self.complex.top() if through is None else through
        for da in range(top + 1):
            for db in range(top + 1 - da):
                for ia in range(self.complex.rank(da)):
                    for ib in range(self.complex.rank(db)):
                        prod = self.product_basis(da, ia, db, ib)
                        lhs = (
                            self.complex.diff(da + db).apply(prod)
                            if da + db >= 1
                            else FreeModuleElement(self.ring, {})
                        )
                        rhs = FreeModuleElement(self.ring, {})
                        if da >= 1:
                            rhs = rhs + self.product_elements(da - 1, self.diff_basis(da, ia), db,
                                                              FreeModuleElement.basis(self.ring, ib))
                        term = self.product_elements(da, FreeModuleElement.basis(self.ring, ia),
                                                     db - 1, self.diff_basis(db, ib)) if db >= 1 else None
                        if term is not None:
                            rhs = rhs + (term if da % 2 == 0 else -term)
                        if lhs != rhs:
                            raise InternalCheckError(
                                f"Leibniz fails on basis pair ({da},{ia}) ({db},{ib})")

    def check_commutative(self, through: int | None = None):
        top = self.complex.top() if through is None else through
        for da in range(top + 1):
            for db in range(da, top + 1 - da):
                for ia in range(self.complex.rank(da)):
                    for ib in range(self.complex.rank(db)):
                        ab = self.product_basis(da, ia, db, ib)
                        ba = self.product_basis(db, ib, da, ia)
                        if (da * db) % 2 == 1:
                            ba = -ba
                        if ab != ba:
                            raise InternalCheckError(
                                f"graded commutativity fails on ({da},{ia}) ({db},{ib})")

    def check_associative(self, degree_cap: int):
        top = self.complex.top()
        for da in range(degree_cap + 1):
            for db in range(degree_cap + 1 - da):
                for dc in range(degree_cap + 1 - da - db):
                    if da + db + dc > top:
                        continue  # both sides land in zero modules
                    for ia in range(self.complex.rank(da)):
                        va = FreeModuleElement.basis(self.ring, ia)
                        for ib in range(self.complex.rank(db)):
                            ab = self.product_basis(da, ia, db, ib)
                            vb = FreeModuleElement.basis(self.ring, ib)
                            for ic in range(self.complex.rank(dc)):
                                vc = FreeModuleElement.basis(self.ring, ic)
                                left = self.product_elements(da + db, ab, dc, vc)
                                bc = self.product_basis(db, ib, dc, ic)
                                right = self.product_elements(da, va, db + dc, bc)
                                if left != right:
                                    raise InternalCheckError(
                                        f"associativity fails on ({da},{ia}) ({db},{ib}) ({dc},{ic})")


def _shuffle_sign(S, T) -> int:
    inv = 0
    for s in S:
        for t in T:
            if t < s:
                inv += 1
    return -1 if inv % 2 else 1


class TaylorComplex(DgAlgebra):
    """Taylor complex of a finite monomial list with its standard dg product."""

    def __init__(self, ring: PolyRing, monomials, verify: bool = True):
        if not monomials:
            raise ValueError("need at least one monomial")
        if len(monomials) > TAYLOR_GENERATOR_CAP:
            raise ResourceCapError(
                f"{len(monomials)} generators exceed the Taylor cap {TAYLOR_GENERATOR_CAP}")
        self.monomials = [m if isinstance(m, tuple) else m.lead_monomial() for m in monomials]
        self.ringref = ring
        s = len(self.monomials)
        self.subsets = {n: sorted(combinations(range(s), n)) for n in range(s + 1)}
        self.position = {n: {S: t for t, S in enumerate(subs)} for n, subs in self.subsets.items()}
        self._lcm = {}
        for n, subs in self.subsets.items():
            for S in subs:
                acc = (0,) * ring.nvars
                for k in S:
                    acc = mono_lcm(acc, self.monomials[k])
                self._lcm[S] = acc

        degrees = {n: [mono_deg(self._lcm[S]) for S in subs] for n, subs in self.subsets.items()}
        diffs = {}
        for n in range(1, s + 1):
            m = PolyMatrix(ring, degrees[n - 1], degrees[n])
            for j, S in enumerate(self.subsets[n]):
                lc = self._lcm[S]
                for k in range(n):
                    rem = S[:k] + S[k + 1:]
                    coeff = mono_div(lc, self._lcm[rem])
                    f = ring.monomial(coeff, 1 if k % 2 == 0 else ring.p - 1)
                    m.set_entry(self.position[n - 1][rem], j, f)
            diffs[n] = m
        self.complex = GradedFreeComplex(
            ring, degrees, diffs,
            labels={n: ["e" + "".join(str(k + 1) for k in S) if S else "1" for S in subs]
                    for n, subs in self.subsets.items()},
        )
        if verify:
            self.complex.check_dd_zero()
            self.check_unit()
            self.check_leibniz()

    def product_basis(self, da, ia, db, ib) -> FreeModuleElement:
        S = self.subsets[da][ia]
        T = self.subsets[db][ib]
        if set(S) & set(T):
            return FreeModuleElement(self.ring, {})
        U = tuple(sorted(S + T))
        coeff = mono_div(mono_mul(self._lcm[S], self._lcm[T]), self._lcm[U])
        sign = _shuffle_sign(S, T)
        f = self.ring.monomial(coeff, 1 if sign > 0 else self.ring.p - 1)
        return FreeModuleElement(self.ring, {self.position[da + db][U]: f})


def koszul_complex(ring: PolyRing, elements) -> TaylorComplex:
    """Koszul complex on monomials as the Taylor complex of the list."""
    return TaylorComplex(ring, elements)
