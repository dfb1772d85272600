"""Minimalization of graded free complexes with full contraction data.

minimalize() runs iterated Gaussian elimination on scalar (degree-zero)
unit entries of the differentials.  Each elimination removes one basis pair
(e_c in degree n, e_r in degree n-1) and performs a Schur update; the
inclusion i, projection p and homotopy h onto the shrinking complex are
accumulated so that p i = id, id - i p = dh + hd, and the side conditions
h i = 0, p h = 0, h h = 0 hold on the nose.

Eliminations run lowest homological degree first; inside a degree the
first unit in column-major (column, then row) order wins, which makes the
output deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass

from .complexes import GradedFreeComplex
from .errors import InternalCheckError
from .matrices import PolyMatrix


@dataclass
class Contraction:
    """Deformation retract datum between a complex and its minimal summand."""

    big: GradedFreeComplex
    small: GradedFreeComplex
    incl: dict    # n -> PolyMatrix small_n -> big_n
    proj: dict    # n -> PolyMatrix big_n -> small_n
    htpy: dict    # n -> PolyMatrix big_n -> big_{n+1}
    alive: dict   # n -> list of retained original basis indices

    def incl_at(self, n):
        return self.incl.get(n) or PolyMatrix(
            self.big.ring, self.big.basis_degrees(n), self.small.basis_degrees(n))

    def proj_at(self, n):
        return self.proj.get(n) or PolyMatrix(
            self.big.ring, self.small.basis_degrees(n), self.big.basis_degrees(n))

    def htpy_at(self, n):
        return self.htpy.get(n) or PolyMatrix(
            self.big.ring, self.big.basis_degrees(n + 1), self.big.basis_degrees(n))

    def truncated(self, through: int) -> "Contraction":
        """Drop small-complex data above a degree (for feeding consumers that
        must not see the minimal model of the truncation tail)."""
        small = GradedFreeComplex(
            self.small.ring,
            {n: ds for n, ds in self.small.degrees.items() if n <= through},
            {n: m for n, m in self.small.diffs.items() if n <= through},
            quotient=self.small.quotient,
        )
        return Contraction(
            big=self.big,
            small=small,
            incl={n: m for n, m in self.incl.items() if n <= through},
            proj={n: m for n, m in self.proj.items() if n <= through},
            htpy=self.htpy,
            alive={n: idxs for n, idxs in self.alive.items() if n <= through},
        )

    def verify(self, through: int | None = None):
        """Check every contraction identity mechanically."""
        red = self.big.reduce_poly
        top = self.big.top() if through is None else through
        ring = self.big.ring

        def is_zero(mat):
            return mat.map_entries(red).is_zero()

        for n in range(top + 1):
            i_n, p_n, h_n = self.incl_at(n), self.proj_at(n), self.htpy_at(n)
            # p i = id
            pi = p_n.compose(i_n).map_entries(red)
            ident = PolyMatrix.identity(ring, self.small.basis_degrees(n))
            if not pi.add(ident.negate()).map_entries(red).is_zero():
                raise InternalCheckError(f"p i != id at degree {n}")
            # id - i p = d h + h d
            ip = i_n.compose(p_n)
            dh = self.big.diff(n + 1).compose(h_n)
            hd = self.htpy_at(n - 1).compose(self.big.diff(n))
            lhs = PolyMatrix.identity(ring, self.big.basis_degrees(n)).add(ip.negate())
            rhs = dh.add(hd)
            if not lhs.add(rhs.negate()).map_entries(red).is_zero():
                raise InternalCheckError(f"id - ip != dh + hd at degree {n}")
            # side conditions
            if not is_zero(h_n.compose(i_n)):
                raise InternalCheckError(f"h i != 0 at degree {n}")
            if not is_zero(self.proj_at(n + 1).compose(h_n)):
                raise InternalCheckError(f"p h != 0 at degree {n}")
            if not is_zero(self.htpy_at(n + 1).compose(h_n)):
                raise InternalCheckError(f"h h != 0 at degree {n}")
            # chain maps
            if n >= 1:
                left = self.big.diff(n).compose(i_n)
                right = self.incl_at(n - 1).compose(self.small.diff(n))
                if not left.add(right.negate()).map_entries(red).is_zero():
                    raise InternalCheckError(f"i is not a chain map at degree {n}")
                left = self.small.diff(n).compose(p_n)
                right = self.proj_at(n - 1).compose(self.big.diff(n))
                if not left.add(right.negate()).map_entries(red).is_zero():
                    raise InternalCheckError(f"p is not a chain map at degree {n}")
        if not self.small.is_minimal(through=top):
            raise InternalCheckError("small complex is not minimal")
        return True


def _unit_value(f, reduce):
    """Nonzero scalar of a degree-zero entry, else None."""
    g = reduce(f)
    if not g:
        return None
    c = g.constant_coeff()
    if c and len(g.terms) == 1:
        return c
    return None


def minimalize(complex_: GradedFreeComplex, through: int | None = None) -> Contraction:
    """Contract a complex onto a minimal one (all differential entries in n).

    Works over Q or over R; over R entries are normal-formed after each
    update.  Only degrees <= through are processed, which yields contraction
    data valid in degrees < through even when the complex is a truncation.
    """
    ring = complex_.ring
    red = complex_.reduce_poly
    top = complex_.top() if through is None else min(through, complex_.top())

    # mutable copies: D[n][col][row], with row index rows_of[n][row] = set of cols
    D, rows_of = {}, {}
    for n in range(1, top + 1):
        mat = complex_.diff(n)
        D[n] = {}
        rows_of[n] = {}
        for j, col in mat.columns.items():
            newcol = {}
            for i, f in col.items():
                g = red(f)
                if g:
                    newcol[i] = g
                    rows_of[n].setdefault(i, set()).add(j)
            if newcol:
                D[n][j] = newcol

    alive = {n: set(range(complex_.rank(n))) for n in complex_.degrees}
    # contraction data over original indices
    i_cols = {n: {j: {j: ring.one()} for j in alive[n]} for n in alive}
    p_rows = {n: {i: {i: ring.one()} for i in alive[n]} for n in alive}
    h_cols = {n: {} for n in alive}  # degree n -> {col (deg n): {row (deg n+1): poly}}

    def find_unit(n):
        for j in sorted(D.get(n, {})):
            col = D[n][j]
            for i in sorted(col):
                u = _unit_value(col[i], red)
                if u is not None:
                    return j, i, u
        return None

    def eliminate(n, c, r, u):
        inv = ring.inv(u)
        col_c = D[n].pop(c)
        col_c.pop(r)
        gamma = col_c  # remaining rows of column c
        for i in gamma:
            rows_of[n][i].discard(c)
        row_r = rows_of[n].pop(r)
        delta = {}
        for j in row_r:
            if j == c:
                continue
            delta[j] = D[n][j].pop(r)

        # h_{n-1} += inv * i_col(c) (x) p_row(r)   [old i, p]
        ic = i_cols[n][c]
        pr = p_rows[n - 1][r]
        if ic and pr:
            hc = h_cols.setdefault(n - 1, {})
            for v, pv in pr.items():
                dest = hc.setdefault(v, {})
                for w, iw in ic.items():
                    val = red(dest.get(w, ring.zero()) + (pv * iw).scale(inv))
                    if val:
                        dest[w] = val
                    else:
                        dest.pop(w, None)
                if not dest:
                    hc.pop(v, None)

        # i update at degree n: col(c') -= inv*delta[c'] * col(c); drop c
        for j, dj in delta.items():
            target = i_cols[n][j]
            coeff = dj.scale(inv)
            for w, iw in ic.items():
                val = red(target.get(w, ring.zero()) - coeff * iw)
                if val:
                    target[w] = val
                else:
                    target.pop(w, None)
        del i_cols[n][c]
        # p update at degree n-1: row(r') -= inv*gamma[r'] * row(r); drop r
        for i2, gi in gamma.items():
            target = p_rows[n - 1][i2]
            coeff = gi.scale(inv)
            for v, pv in pr.items():
                val = red(target.get(v, ring.zero()) - coeff * pv)
                if val:
                    target[v] = val
                else:
                    target.pop(v, None)
        del p_rows[n - 1][r]
        # i at degree n-1 drops column r; p at degree n drops row c
        del i_cols[n - 1][r]
        del p_rows[n][c]

        # Schur update on D[n]
        for j, dj in delta.items():
            coeff = dj.scale(inv)
            colj = D[n].setdefault(j, {})
            for i2, gi in gamma.items():
                val = red(colj.get(i2, ring.zero()) - gi * coeff)
                if val:
                    colj[i2] = val
                    rows_of[n].setdefault(i2, set()).add(j)
                else:
                    if i2 in colj:
                        del colj[i2]
                        rows_of[n][i2].discard(j)
            if not colj:
                D[n].pop(j, None)

        # delete row c from D[n+1], column r from D[n-1]
        up = D.get(n + 1)
        if up is not None:
            for j in list(rows_of.get(n + 1, {}).get(c, ())):
                up[j].pop(c, None)
                if not up[j]:
                    del up[j]
            rows_of.get(n + 1, {}).pop(c, None)
        down = D.get(n - 1)
        if down is not None and r in down:
            for i2 in down.pop(r):
                rows_of[n - 1][i2].discard(r)

        alive[n].discard(c)
        alive[n - 1].discard(r)

    for n in range(1, top + 1):
        while True:
            hit = find_unit(n)
            if hit is None:
                break
            c, r, u = hit
            eliminate(n, c, r, u)

    # assemble the small complex and the contraction matrices
    alive_sorted = {n: sorted(alive.get(n, ())) for n in complex_.degrees if alive.get(n)}
    small_degrees = {
        n: [complex_.basis_degrees(n)[i] for i in idxs] for n, idxs in alive_sorted.items()
    }
    pos = {n: {orig: t for t, orig in enumerate(idxs)} for n, idxs in alive_sorted.items()}

    incl, proj, htpy = {}, {}, {}
    for n, idxs in alive_sorted.items():
        im = PolyMatrix(ring, complex_.basis_degrees(n), small_degrees[n])
        for t, orig in enumerate(idxs):
            for w, f in i_cols[n][orig].items():
                im.set_entry(w, t, f)
        incl[n] = im
        pm = PolyMatrix(ring, small_degrees[n], complex_.basis_degrees(n))
        for t, orig in enumerate(idxs):
            for v, f in p_rows[n][orig].items():
                pm.set_entry(t, v, f)
        proj[n] = pm

    small_diffs = {}
    for n in range(1, top + 1):
        if n not in alive_sorted or (n - 1) not in alive_sorted:
            continue
        m = PolyMatrix(ring, small_degrees[n - 1], small_degrees[n])
        for j, col in D.get(n, {}).items():
            for i, f in col.items():
                m.set_entry(pos[n - 1][i], pos[n][j], f)
        small_diffs[n] = m
    # degrees above the processed range need the projection correction
    for n in range(top + 1, complex_.top() + 1):
        if n not in alive_sorted or (n - 1) not in alive_sorted:
            continue
        m = proj[n - 1].compose(complex_.diff(n)).compose(incl[n]).map_entries(red)
        small_diffs[n] = m
    small = GradedFreeComplex(ring, small_degrees, small_diffs, quotient=complex_.quotient)
    for n, hc in h_cols.items():
        if not hc:
            continue
        hm = PolyMatrix(ring, complex_.basis_degrees(n + 1), complex_.basis_degrees(n))
        for v, dest in hc.items():
            for w, f in dest.items():
                hm.set_entry(w, v, f)
        htpy[n] = hm

    return Contraction(big=complex_, small=small, incl=incl, proj=proj, htpy=htpy, alive=alive_sorted)
