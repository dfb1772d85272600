"""Dg module resolutions Y of an R-module M over a dg algebra resolution X,
with a degreewise split dg-module map psi: X -> Y.

Two constructions:

* SemifreeDgModule.build(): start from Y(0) = X tensor Q^a lifting a
  presentation Q^a ->> M, adjoin generators killing the relations, then
  keep adjoining generators that kill homology degree by degree.  psi is
  the inclusion of the first ambient coordinate.

* taylor_module_fast_path(): when M = R/J is cyclic with monomial J whose
  generator list starts with the generators of I, the Taylor complex of
  the J-list is itself a dg algebra containing the Taylor complex of I as
  a subalgebra; psi is the basis inclusion.
"""

from __future__ import annotations

from .complexes import ChainMap, GradedFreeComplex
from .errors import InternalCheckError, ResourceCapError
from .groebner import Ideal
from .matrices import FreeModuleElement, PolyMatrix
from .resolve import ModulePresentation
from .ring import mono_deg, mono_divides
from .taylor import DgAlgebra, TaylorComplex
from .tate import homology_cycle_generators


class DgModule:
    """Interface: a complex with a dg action of a DgAlgebra on basis elements."""

    algebra: DgAlgebra
    complex: GradedFreeComplex

    @property
    def ring(self):
        return self.complex.ring

    def action_basis(self, dx, ix, ny, iy) -> FreeModuleElement:
        raise NotImplementedError

    def action_elements(self, dx, vx: FreeModuleElement, ny, vy: FreeModuleElement) -> FreeModuleElement:
        out = FreeModuleElement(self.ring, {})
        for ix, fx in vx.coords.items():
            for iy, fy in vy.coords.items():
                base = self.action_basis(dx, ix, ny, iy)
                if base.coords:
                    out = out + base.mul_poly(fx * fy)
        return out

    # -- mechanical dg-module checks ----------------------------------------

    def check_unit(self, through: int | None = None):
        top = self.complex.top() if through is None else through
        for ny in range(top + 1):
            for iy in range(self.complex.rank(ny)):
                got = self.action_basis(0, 0, ny, iy)
                if got != FreeModuleElement.basis(self.ring, iy):
                    raise InternalCheckError(f"unit does not act as identity on ({ny},{iy})")

    def check_leibniz(self, through: int | None = None):
        top = self.complex.top() if through is None else through
        X = self.algebra.complex
        for dx in range(top + 1):
            for ny in range(top + 1 - dx):
                for ix in range(X.rank(dx)):
                    for iy in range(self.complex.rank(ny)):
                        prod = self.action_basis(dx, ix, ny, iy)
                        lhs = (self.complex.diff(dx + ny).apply(prod)
                               if dx + ny >= 1 else FreeModuleElement(self.ring, {}))
                        rhs = FreeModuleElement(self.ring, {})
                        if dx >= 1:
                            rhs = rhs + self.action_elements(
                                dx - 1, self.algebra.diff_basis(dx, ix),
                                ny, FreeModuleElement.basis(self.ring, iy))
                        if ny >= 1:
                            term = self.action_elements(
                                dx, FreeModuleElement.basis(self.ring, ix),
                                ny - 1, self.complex.diff(ny).column(iy))
                            rhs = rhs + (term if dx % 2 == 0 else -term)
                        if lhs != rhs:
                            raise InternalCheckError(
                                f"module Leibniz fails on ({dx},{ix}) acting on ({ny},{iy})")

    def check_associative(self, degree_cap: int):
        X = self.algebra.complex
        top = self.complex.top()
        for da in range(degree_cap + 1):
            for db in range(degree_cap + 1 - da):
                for ny in range(degree_cap + 1 - da - db):
                    if da + db + ny > top:
                        continue
                    for ia in range(X.rank(da)):
                        va = FreeModuleElement.basis(self.ring, ia)
                        for ib in range(X.rank(db)):
                            ab = self.algebra.product_basis(da, ia, db, ib)
                            for iy in range(self.complex.rank(ny)):
                                vy = FreeModuleElement.basis(self.ring, iy)
                                left = self.action_elements(da + db, ab, ny, vy)
                                by = self.action_basis(db, ib, ny, iy)
                                right = self.action_elements(da, va, db + ny, by)
                                if left != right:
                                    raise InternalCheckError(
                                        f"action associativity fails on ({da},{ia}) ({db},{ib}) ({ny},{iy})")


class SemifreeDgModule(DgModule):
    """X-semifree module with generator basis (t, i) = (generator, algebra basis)."""

    @property
    def ring(self):
        return self.algebra.ring

    def __init__(self, algebra: DgAlgebra, degree_cap: int | None = None):
        self.algebra = algebra
        self.degree_cap = degree_cap    # drop basis above this homological degree
        self.gen_hom_degrees = []       # homological degree of each generator
        self.gen_int_degrees = []       # internal degree label
        self.gen_diffs = []             # FreeModuleElement in Y_{deg-1}, or None
        self._stale = True
        self._basis = None              # n -> list of (t, i) with i in X_{n - gdeg_t}
        self._pos = None
        self._complex = None

    def add_generator(self, hom_degree: int, int_degree: int, diff: FreeModuleElement | None):
        self.gen_hom_degrees.append(hom_degree)
        self.gen_int_degrees.append(int_degree)
        self.gen_diffs.append(diff)
        self._stale = True
        return len(self.gen_hom_degrees) - 1

    def _refresh(self):
        if not self._stale:
            return
        X = self.algebra.complex
        ring = self.ring
        top = X.top() + max(self.gen_hom_degrees, default=0)
        if self.degree_cap is not None:
            top = min(top, self.degree_cap)
        basis = {}
        for t, gdeg in enumerate(self.gen_hom_degrees):
            for d in range(X.top() + 1):
                n = d + gdeg
                if n > top:
                    continue
                for i in range(X.rank(d)):
                    basis.setdefault(n, []).append((t, i))
        # (t, i) with t ascending keeps earlier positions stable across adjoins
        self._basis = {n: sorted(pairs) for n, pairs in basis.items()}
        self._pos = {n: {pair: a for a, pair in enumerate(pairs)}
                     for n, pairs in self._basis.items()}
        # basis tables are ready; differential assembly below may re-enter
        # through action_basis, which only needs those tables
        self._stale = False
        degrees = {}
        for n, pairs in self._basis.items():
            degs = []
            for (t, i) in pairs:
                d = n - self.gen_hom_degrees[t]
                degs.append(X.basis_degrees(d)[i] + self.gen_int_degrees[t])
            degrees[n] = degs
        diffs = {}
        for n in sorted(self._basis):
            if n == 0:
                continue
            mat = PolyMatrix(ring, degrees.get(n - 1, []), degrees[n])
            for a, (t, i) in enumerate(self._basis[n]):
                img = self._diff_pair(t, i, n)
                for b, f in img.coords.items():
                    mat.set_entry(b, a, f)
            diffs[n] = mat
        self._complex = GradedFreeComplex(ring, degrees, diffs)

    def _diff_pair(self, t, i, n) -> FreeModuleElement:
        """d(b (x) g_t) = d(b) (x) g_t + (-1)^|b| b * d(g_t), in Y_(n-1) coords."""
        X = self.algebra.complex
        ring = self.ring
        d = n - self.gen_hom_degrees[t]
        out = {}
        if d >= 1:
            for i2, f in X.diff(d).columns.get(i, {}).items():
                b = self._pos[n - 1][(t, i2)]
                g = out.get(b, ring.zero()) + f
                if g:
                    out[b] = g
                else:
                    out.pop(b, None)
        gd = self.gen_diffs[t]
        if gd is not None and gd.coords:
            gdeg = self.gen_hom_degrees[t]
            term = self.action_elements(d, FreeModuleElement.basis(ring, i), gdeg - 1, gd)
            if d % 2 == 1:
                term = -term
            for b, f in term.coords.items():
                g = out.get(b, ring.zero()) + f
                if g:
                    out[b] = g
                else:
                    out.pop(b, None)
        return FreeModuleElement(ring, out)

    @property
    def complex(self) -> GradedFreeComplex:
        self._refresh()
        return self._complex

    def basis_pairs(self, n: int):
        self._refresh()
        return self._basis.get(n, [])

    def position(self, n: int, pair) -> int:
        self._refresh()
        return self._pos[n][pair]

    def action_basis(self, dx, ix, ny, iy) -> FreeModuleElement:
        self._refresh()
        t, i = self._basis[ny][iy]
        d = ny - self.gen_hom_degrees[t]
        prod = self.algebra.product_basis(dx, ix, d, i)
        out = {}
        for i2, f in prod.coords.items():
            out[self._pos[dx + ny][(t, i2)]] = f
        return FreeModuleElement(self.ring, out)


def build_semifree_resolution(pres: ModulePresentation, algebra: DgAlgebra,
                              up_to: int, rank_guard: int = 6000,
                              degree_cap: int | None = None):
    """Semifree dg X-module resolution of M to homological degree up_to,
    with the split dg-module map psi: X -> first-coordinate component.

    Y(0) = X^a already has H_0 = M once generators killing the relation
    columns are adjoined (the ideal I is hit by X_1 acting on Y_0); higher
    homology is killed degree by degree with fresh generators whose
    boundaries are the deterministic minimal homology generators.  The
    basis is only enumerated through degree_cap (default up_to + 1).
    """
    Y = SemifreeDgModule(algebra, degree_cap=up_to + 1 if degree_cap is None else degree_cap)
    for r, gdeg in enumerate(pres.gen_degrees):
        Y.add_generator(0, gdeg, None)
    # relation killers in homological degree 1
    for v in pres.relations:
        Y._refresh()
        coords = {Y.position(0, (r, 0)): f for r, f in v.coords.items()}
        target = FreeModuleElement(Y.ring, coords)
        Y.add_generator(1, v.degree(pres.gen_degrees), target)
    for n in range(1, up_to):
        cx = Y.complex
        if sum(cx.rank(t) for t in range(cx.top() + 1)) > rank_guard:
            raise ResourceCapError(f"semifree module rank guard {rank_guard} exceeded")
        gens = homology_cycle_generators(cx, n)
        for g in gens:
            Y.add_generator(n + 1, g.degree(cx.basis_degrees(n)), g)
        if gens and homology_cycle_generators(Y.complex, n):
            raise InternalCheckError(f"module homology at degree {n} survived adjunction")
    Y._refresh()
    psi = psi_inclusion(Y, coordinate=0)
    return Y, psi


def psi_inclusion(Y: SemifreeDgModule, coordinate: int = 0) -> ChainMap:
    """The split inclusion X -> Y onto the X-span of one ambient generator."""
    X = Y.algebra.complex
    maps = {}
    for d in range(X.top() + 1):
        if X.rank(d) == 0:
            continue
        n = d + Y.gen_hom_degrees[coordinate]
        if Y.degree_cap is not None and n > Y.degree_cap:
            continue
        m = PolyMatrix(Y.ring, Y.complex.basis_degrees(n), X.basis_degrees(d))
        for i in range(X.rank(d)):
            m.set_entry(Y.position(n, (coordinate, i)), i, Y.ring.one())
        maps[d] = m
    return ChainMap(X, Y.complex, maps)


class TaylorDgModule(DgModule):
    """Taylor complex of a monomial list as a dg module over the Taylor
    complex of a prefix sublist (psi = subset inclusion of bases)."""

    def __init__(self, sub: TaylorComplex, full: TaylorComplex, prefix_len: int):
        self.algebra = sub
        self.full = full
        self.prefix_len = prefix_len
        self.complex = full.complex

    def action_basis(self, dx, ix, ny, iy) -> FreeModuleElement:
        # prefix indices embed identically into the full Taylor basis
        S = self.algebra.subsets[dx][ix]
        return self.full.product_basis(dx, self.full.position[dx][S], ny, iy)


def taylor_module_fast_path(I: Ideal, extra_gens, up_to_unused: int = 0):
    """Y = Taylor(I-gens + extra monomial gens) over X = Taylor(I-gens).

    Requires monomial data; resolves R/(extra)R = Q/(I + extra).  Returns
    (X, Y, psi) with psi the basis inclusion, verified to be a chain map.
    """
    from .burch import minimal_generators

    ring = I.ring
    if not I.is_monomial():
        raise InternalCheckError("fast path needs a monomial ideal")
    base = [g.lead_monomial() for g in minimal_generators(I.gens, ring)]
    extra = []
    for g in extra_gens:
        if len(g.terms) != 1:
            raise InternalCheckError("fast path needs monomial module generators")
        m = g.lead_monomial()
        if m not in base and m not in extra:
            extra.append(m)
    X = TaylorComplex(ring, [ring.monomial(m) for m in base])
    Y = TaylorComplex(ring, [ring.monomial(m) for m in base + extra])
    mod = TaylorDgModule(X, Y, len(base))
    maps = {}
    for d in range(X.complex.top() + 1):
        m = PolyMatrix(ring, Y.complex.basis_degrees(d), X.complex.basis_degrees(d))
        for i, S in enumerate(X.subsets[d]):
            m.set_entry(Y.position[d][S], i, ring.one())
        maps[d] = m
    psi = ChainMap(X.complex, Y.complex, maps)
    psi.check_chain_map()
    return X, mod, psi
