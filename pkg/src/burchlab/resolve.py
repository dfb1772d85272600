"""Free resolutions over Q and over R = Q/I.

Over Q resolutions are iterated Groebner syzygies with minimal-generator
trimming (length is bounded by the number of variables).  Over an Artinian
graded R the kernel of a homogeneous matrix is computed strand by strand
with k-linear algebra, trimming generators degree by degree, which keeps
the work proportional to the (sparse) strand data; a lift-to-Q Groebner
path is kept alongside as an independent cross-check for small inputs.
Either way the output is a minimal resolution: every differential entry
lies in the maximal ideal.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .complexes import GradedFreeComplex
from .errors import InputError, InternalCheckError, ResourceCapError
from .groebner import Ideal, syzygies_of
from .linalg import SparseEchelon, kernel_basis
from .matrices import FreeModuleElement, PolyMatrix
from .ring import PolyRing, mono_deg, monomials_of_degree, poly_sort_key


@dataclass
class ModulePresentation:
    """Finitely presented graded module over R = Q/I (I = 0 presents over Q).

    relations are homogeneous columns in Q^ambient, kept in normal form
    modulo I coordinatewise.
    """

    ring: PolyRing
    quotient: Ideal
    gen_degrees: list
    relations: list = field(default_factory=list)

    def __post_init__(self):
        red = self.quotient.normal_form
        cleaned = []
        for v in self.relations:
            w = v.map_coords(red)
            if w.coords:
                w.degree(self.gen_degrees)  # raises if inhomogeneous
                cleaned.append(w)
        self.relations = cleaned

    @classmethod
    def cyclic(cls, quotient: Ideal, extra_gens) -> "ModulePresentation":
        """R/(extra)R as an R-module."""
        ring = quotient.ring
        rels = [FreeModuleElement(ring, {0: g}) for g in extra_gens if g]
        return cls(ring, quotient, [0], rels)

    @classmethod
    def residue_field(cls, quotient: Ideal) -> "ModulePresentation":
        return cls.cyclic(quotient, quotient.ring.maximal_ideal_gens())

    @classmethod
    def free(cls, quotient: Ideal, degrees) -> "ModulePresentation":
        return cls(quotient.ring, quotient, list(degrees), [])

    @property
    def ambient_rank(self) -> int:
        return len(self.gen_degrees)

    def strand_index(self, d: int):
        out = []
        for i, bdeg in enumerate(self.gen_degrees):
            for m in self.quotient.standard_monomials(d - bdeg):
                out.append((i, m))
        return out

    def dims(self, through: int) -> list:
        """k-dimensions of the module's graded pieces M_d for d = 0..through."""
        out = []
        for d in range(through + 1):
            idx = self.strand_index(d)
            pos = {key: t for t, key in enumerate(idx)}
            ech = SparseEchelon(self.ring.p)
            for v in self.relations:
                vdeg = v.degree(self.gen_degrees)
                if vdeg > d:
                    continue
                for m in self.quotient.standard_monomials(d - vdeg):
                    w = v.mul_term(m, 1).map_coords(self.quotient.normal_form)
                    vec = {}
                    for i, f in w.coords.items():
                        for mm, c in f.terms.items():
                            vec[pos[(i, mm)]] = c
                    ech.insert(vec)
            out.append(len(idx) - ech.rank)
        return out

    def total_dim_bound(self, cap: int = 100000) -> int:
        top = self.quotient.quotient_top_degree()
        if top is None:
            raise InputError("module is not finite dimensional (quotient not Artinian)")
        return sum(self.dims(max(self.gen_degrees) + top))


# ---------------------------------------------------------------------------
# minimal generators of submodules
# ---------------------------------------------------------------------------


def _module_span_echelon(ring, quotient, gen_degrees, elements, d, min_mult_degree, index_pos):
    """Echelon of degree-d multiples (by standard monomials) of the elements."""
    ech = SparseEchelon(ring.p)
    red = quotient.normal_form
    for v, vdeg in elements:
        need = d - vdeg
        if need < min_mult_degree:
            continue
        for m in quotient.standard_monomials(need):
            w = v.mul_term(m, 1).map_coords(red)
            vec = {}
            for i, f in w.coords.items():
                for mm, c in f.terms.items():
                    t = index_pos.get((i, mm))
                    if t is None:
                        raise InternalCheckError("multiple leaves the strand basis")
                    vec[t] = (vec.get(t, 0) + c) % ring.p
            ech.insert({k: v2 for k, v2 in vec.items() if v2})
    return ech


def minimal_module_generators(elements, gen_degrees, quotient: Ideal, extra_span=None):
    """Greedy minimal generating subset over R, degree by degree.

    Elements must be homogeneous columns in R^ambient (normal form).  The
    selection order is (degree, insertion order), so results are stable.
    extra_span elements are quotiented out in every degree (all multiples),
    so with extra_span = boundaries this picks homology generators.
    """
    ring = quotient.ring
    red = quotient.normal_form
    elems = []
    for v in elements:
        w = v.map_coords(red)
        if w.coords:
            elems.append((w, w.degree(gen_degrees)))
    if not elems:
        return []
    extra = []
    for v in extra_span or []:
        w = v.map_coords(red)
        if w.coords:
            extra.append((w, w.degree(gen_degrees)))
    chosen = []
    for d in sorted({dg for _, dg in elems}):
        idx = [(i, m) for i, bdeg in enumerate(gen_degrees)
               for m in quotient.standard_monomials(d - bdeg)]
        pos = {key: t for t, key in enumerate(idx)}
        ech = _module_span_echelon(ring, quotient, gen_degrees, elems, d, 1, pos)
        for v, vdeg in extra:
            if vdeg > d:
                continue
            for m in quotient.standard_monomials(d - vdeg):
                w = v.mul_term(m, 1).map_coords(red)
                vec = {}
                for i, f in w.coords.items():
                    for mm, c in f.terms.items():
                        t = pos[(i, mm)]
                        vec[t] = (vec.get(t, 0) + c) % ring.p
                ech.insert({k: c for k, c in vec.items() if c})
        for w, dg in elems:
            if dg != d:
                continue
            vec = {}
            for i, f in w.coords.items():
                for mm, c in f.terms.items():
                    vec[pos[(i, mm)]] = c
            piv, _ = ech.insert(vec)
            if piv is not None:
                chosen.append(w)
    return chosen


# ---------------------------------------------------------------------------
# kernels over R
# ---------------------------------------------------------------------------


def kernel_gens_over_R(matrix: PolyMatrix, quotient: Ideal):
    """Minimal generators of ker(matrix) over Artinian R, strand by strand."""
    ring = matrix.ring
    red = quotient.normal_form
    top = quotient.quotient_top_degree()
    if top is None:
        raise InputError("strand kernel engine needs an Artinian quotient")
    if not matrix.col_degrees:
        return []
    gens = []  # list of (element, degree)
    lo = min(matrix.col_degrees)
    hi = max(matrix.col_degrees) + top
    for d in range(lo, hi + 1):
        src = [(j, m) for j, bdeg in enumerate(matrix.col_degrees)
               for m in quotient.standard_monomials(d - bdeg)]
        if not src:
            continue
        src_pos = {key: t for t, key in enumerate(src)}
        tgt = [(i, m) for i, bdeg in enumerate(matrix.row_degrees)
               for m in quotient.standard_monomials(d - bdeg)]
        tgt_pos = {key: t for t, key in enumerate(tgt)}
        cols = []
        for (j, m) in src:
            col = {}
            for i, g in matrix.columns.get(j, {}).items():
                prod = red(g.mul_term(m, 1))
                for mm, c in prod.terms.items():
                    t = tgt_pos[(i, mm)]
                    v = (col.get(t, 0) + c) % ring.p
                    if v:
                        col[t] = v
                    else:
                        col.pop(t, None)
            cols.append(col)
        _, kern = kernel_basis(cols, ring.p)
        if not kern:
            continue
        span = _module_span_echelon(ring, quotient, matrix.col_degrees, gens, d, 1, src_pos)
        for kv in kern:
            piv, _ = span.insert(dict(kv))
            if piv is None:
                continue
            coords = {}
            for t, c in kv.items():
                j, m = src[t]
                f = ring.monomial(m, c)
                coords[j] = coords.get(j, ring.zero()) + f
            elt = FreeModuleElement(ring, {j: f for j, f in coords.items() if f})
            gens.append((elt, d))
    return [g for g, _ in gens]


def kernel_gens_over_R_gb(matrix: PolyMatrix, quotient: Ideal):
    """Kernel generators over R by lifting to Q and appending I-columns."""
    ring = matrix.ring
    cols = [matrix.column(j) for j in range(matrix.cols)]
    aug = list(cols)
    for i in range(matrix.rows):
        for f in quotient.gens:
            aug.append(FreeModuleElement(ring, {i: f}))
    syz = syzygies_of(aug, matrix.rows, ring)
    red = quotient.normal_form
    out = []
    for w in syz:
        v = FreeModuleElement(ring, {j: f for j, f in w.coords.items() if j < matrix.cols})
        v = v.map_coords(red)
        if v.coords:
            out.append(v)
    return minimal_module_generators(out, matrix.col_degrees, quotient)


def resolve_over_R(pres: ModulePresentation, up_to: int, engine: str = "strand",
                   rank_guard: int = 200000) -> GradedFreeComplex:
    """Minimal free resolution of the presented module over R, to degree up_to."""
    quotient = pres.quotient
    ring = pres.ring
    rels = minimal_module_generators(pres.relations, pres.gen_degrees, quotient)
    degrees = {0: list(pres.gen_degrees)}
    diffs = {}
    prev_degrees = pres.gen_degrees
    current = rels
    n = 1
    total = len(pres.gen_degrees)
    while n <= up_to:
        col_degs = [v.degree(prev_degrees) for v in current]
        mat = PolyMatrix.from_columns(ring, prev_degrees, current, col_degs)
        if current:
            degrees[n] = col_degs
            diffs[n] = mat
        total += len(col_degs)
        if total > rank_guard:
            raise ResourceCapError(f"resolution rank guard {rank_guard} exceeded at degree {n}")
        if not current:
            break
        if n == up_to:
            break
        if engine == "strand":
            nxt = kernel_gens_over_R(mat, quotient)
        elif engine == "gb":
            nxt = kernel_gens_over_R_gb(mat, quotient)
        else:
            raise ValueError(f"unknown engine {engine!r}")
        prev_degrees = col_degs
        current = nxt
        n += 1
    cx = GradedFreeComplex(ring, degrees, diffs, quotient=quotient)
    if not cx.is_minimal():
        raise InternalCheckError("resolution over R is not minimal")
    return cx


# ---------------------------------------------------------------------------
# resolutions over Q
# ---------------------------------------------------------------------------


def minimal_module_generators_Q(elements, gen_degrees, ring: PolyRing):
    """Minimal generating subset over Q (span modulo n * submodule)."""
    zero_ideal = Ideal(ring, [])
    return minimal_module_generators(elements, gen_degrees, zero_ideal)


def resolve_over_Q(pres: ModulePresentation, up_to: int | None = None) -> GradedFreeComplex:
    """Minimal Q-free resolution of the module presented over R, viewed over Q.

    The Q-relations are the R-relations plus I times the ambient basis.
    """
    ring = pres.ring
    cols = list(pres.relations)
    for i in range(pres.ambient_rank):
        for f in pres.quotient.gens:
            cols.append(FreeModuleElement(ring, {i: f}))
    cap = ring.nvars if up_to is None else up_to
    zero_ideal = Ideal(ring, [])
    current = minimal_module_generators(cols, pres.gen_degrees, zero_ideal)
    degrees = {0: list(pres.gen_degrees)}
    diffs = {}
    prev_degrees = pres.gen_degrees
    n = 1
    while current and n <= cap:
        col_degs = [v.degree(prev_degrees) for v in current]
        mat = PolyMatrix.from_columns(ring, prev_degrees, current, col_degs)
        degrees[n] = col_degs
        diffs[n] = mat
        syz = syzygies_of(current, len(prev_degrees), ring)
        current = minimal_module_generators(syz, col_degs, zero_ideal)
        prev_degrees = col_degs
        n += 1
    if current:
        raise InternalCheckError("Q-resolution did not terminate within the variable count")
    cx = GradedFreeComplex(ring, degrees, diffs, quotient=None)
    if not cx.is_minimal():
        raise InternalCheckError("Q-resolution is not minimal")
    return cx


def betti_numbers(cx: GradedFreeComplex, through: int | None = None):
    top = cx.top() if through is None else through
    return [cx.rank(n) for n in range(top + 1)]
