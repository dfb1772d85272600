"""Chain complexes of graded free modules, over Q or over R = Q/I.

A complex stores per homological degree the list of internal basis degrees
and the differential as a PolyMatrix.  Complexes over R carry the quotient
ideal; their entries are kept in normal form and their graded strands use
the standard monomials of R as coefficient bases.

Exactness is checked two ways: over Q by a Groebner argument
(ker(d_n) <= im(d_{n+1}) as submodules), over Artinian R strand by strand
with k-linear algebra.
"""

from __future__ import annotations

from .errors import InternalCheckError
from .groebner import Ideal, SubmoduleBasis, syzygies_of
from .linalg import SparseEchelon, kernel_basis
from .matrices import FreeModuleElement, PolyMatrix
from .ring import PolyRing, mono_deg, mono_mul, monomials_of_degree


class GradedFreeComplex:
    """Nonnegatively graded complex of free modules with homogeneous differentials."""

    __slots__ = ("ring", "degrees", "diffs", "quotient", "labels")

    def __init__(self, ring: PolyRing, degrees: dict, diffs: dict, quotient: Ideal | None = None, labels: dict | None = None):
        self.ring = ring
        self.degrees = {n: list(ds) for n, ds in degrees.items() if ds}
        self.diffs = diffs  # n -> PolyMatrix: C_n -> C_{n-1}
        self.quotient = quotient
        self.labels = labels or {}  # optional n -> list of printable basis labels

    def top(self) -> int:
        return max(self.degrees, default=-1)

    def rank(self, n: int) -> int:
        return len(self.degrees.get(n, []))

    def basis_degrees(self, n: int):
        return self.degrees.get(n, [])

    def diff(self, n: int) -> PolyMatrix:
        m = self.diffs.get(n)
        if m is None:
            return PolyMatrix(self.ring, self.degrees.get(n - 1, []), self.degrees.get(n, []))
        return m

    def reduce_poly(self, f):
        return self.quotient.normal_form(f) if self.quotient is not None else f

    def coefficient_basis(self, d: int):
        if self.quotient is not None:
            return self.quotient.standard_monomials(d)
        return monomials_of_degree(self.ring.nvars, d)

    # -- checks ---------------------------------------------------------------

    def check_homogeneous(self):
        for n in sorted(self.diffs):
            self.diff(n).check_homogeneous()

    def check_dd_zero(self, through: int | None = None):
        top = self.top() if through is None else through
        for n in range(2, top + 1):
            if self.rank(n) == 0:
                continue
            comp = self.diff(n - 1).compose(self.diff(n))
            if self.quotient is not None:
                comp = comp.map_entries(self.quotient.normal_form)
            if not comp.is_zero():
                raise InternalCheckError(f"d_{n-1} o d_{n} != 0")

    # -- strands ---------------------------------------------------------------

    def strand_index(self, n: int, d: int):
        """Flat index of the degree-d piece of C_n: list of (basis, monomial)."""
        out = []
        for i, bdeg in enumerate(self.basis_degrees(n)):
            for m in self.coefficient_basis(d - bdeg):
                out.append((i, m))
        return out

    def strand_columns(self, n: int, d: int):
        """Columns of the strand of d_n at internal degree d, as F_p vectors.

        Returns (source_index, target_pos, columns) where columns[j] is the
        image of source_index[j].
        """
        src = self.strand_index(n, d)
        tgt = self.strand_index(n - 1, d)
        tgt_pos = {key: t for t, key in enumerate(tgt)}
        mat = self.diff(n)
        cols = []
        for (j, m) in src:
            col = {}
            column = mat.columns.get(j, {})
            for i, g in column.items():
                prod = self.reduce_poly(g.mul_term(m, 1))
                for mm, c in prod.terms.items():
                    t = tgt_pos.get((i, mm))
                    if t is None:
                        raise InternalCheckError("strand image outside target basis")
                    v = (col.get(t, 0) + c) % self.ring.p
                    if v:
                        col[t] = v
                    else:
                        col.pop(t, None)
            cols.append(col)
        return src, tgt_pos, cols

    def internal_degree_range(self, n: int):
        degs = self.basis_degrees(n)
        if not degs:
            return []
        lo = min(degs)
        if self.quotient is not None:
            top = self.quotient.quotient_top_degree()
            if top is None:
                raise InternalCheckError("strand ranges need an Artinian quotient")
            return range(lo, max(degs) + top + 1)
        return None  # unbounded over Q

    def homology_dims(self, n: int) -> dict:
        """Strand dimensions of H_n, for complexes over an Artinian quotient."""
        rng = self.internal_degree_range(n)
        if rng is None:
            raise InternalCheckError("homology_dims is for complexes over Artinian R")
        out = {}
        for d in rng:
            _, _, cols = self.strand_columns(n, d)
            rank_n, kern = kernel_basis(cols, self.ring.p)
            dim_ker = len(kern)
            _, _, cols_up = self.strand_columns(n + 1, d)
            ech = SparseEchelon(self.ring.p)
            for c in cols_up:
                ech.insert(dict(c))
            h = dim_ker - ech.rank
            if h < 0:
                raise InternalCheckError("image larger than kernel; not a complex?")
            if h:
                out[d] = h
        return out

    def homology_is_zero(self, n: int) -> bool:
        """Exactness at position n (1 <= n), valid over Q and over Artinian R."""
        if self.quotient is None:
            cols = [self.diff(n).column(j) for j in range(self.rank(n))]
            syz = syzygies_of(cols, self.rank(n - 1), self.ring)
            if not syz:
                return True
            up = SubmoduleBasis(self.ring, self.rank(n),
                                [self.diff(n + 1).column(j) for j in range(self.rank(n + 1))])
            return all(up.contains(w) for w in syz)
        return not self.homology_dims(n)

    def is_minimal(self, through: int | None = None) -> bool:
        top = self.top() if through is None else through
        for n in range(1, top + 1):
            for col in self.diff(n).columns.values():
                for f in col.values():
                    if self.reduce_poly(f).constant_coeff():
                        return False
        return True

    def poincare_coeffs(self, through: int | None = None):
        top = self.top() if through is None else through
        return [self.rank(n) for n in range(top + 1)]

    def __repr__(self):
        ranks = ", ".join(str(self.rank(n)) for n in range(self.top() + 1))
        over = "R" if self.quotient is not None else "Q"
        return f"GradedFreeComplex over {over} with ranks ({ranks})"


class ChainMap:
    """Degreewise map between complexes, stored as PolyMatrices."""

    __slots__ = ("source", "target", "maps")

    def __init__(self, source: GradedFreeComplex, target: GradedFreeComplex, maps: dict):
        self.source = source
        self.target = target
        self.maps = maps

    def component(self, n: int) -> PolyMatrix:
        m = self.maps.get(n)
        if m is None:
            return PolyMatrix(
                self.source.ring, self.target.basis_degrees(n), self.source.basis_degrees(n)
            )
        return m

    def apply(self, n: int, v: FreeModuleElement) -> FreeModuleElement:
        return self.component(n).apply(v)

    def check_chain_map(self, through: int | None = None, reduce=None):
        top = self.source.top() if through is None else through
        red = reduce or (lambda f: f)
        for n in range(1, top + 1):
            left = self.target.diff(n).compose(self.component(n)).map_entries(red)
            right = self.component(n - 1).compose(self.source.diff(n)).map_entries(red)
            delta = left.add(right.negate()).map_entries(red)
            if not delta.is_zero():
                raise InternalCheckError(f"chain map fails to commute at degree {n}")
