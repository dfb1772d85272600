"""Burch ideal, Burch index, and certified Burch generator data.

For a surjection Q -> R = Q/I with I inside the square of the irrelevant
maximal ideal n, the Burch ideal is BI = In : (I : n) and the Burch index
is dim_k n/BI.  Since n^2 <= BI always, the index is computed on linear
parts alone.  burch_data produces the witness tuple behind the index: a
minimal generating set a_1..a_m of I, linear forms x_1..x_b independent
mod BI, and socle lifts s_i with a_{j_i} = x_i * s_i exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import InputError, InternalCheckError
from .groebner import Ideal, maximal_ideal
from .linalg import SparseEchelon
from .ring import Polynomial, PolyRing, grevlex_key, mono_deg, monomials_of_degree, poly_sort_key


def poly_to_vec(f: Polynomial, index: dict) -> dict:
    return {index[m]: c for m, c in f.terms.items()}


class DegreeSpan:
    """Echelonized degree-d piece of a span of polynomial multiples.

    Supports congruence solving: targets are expressed modulo the untagged
    span in terms of tagged basis polynomials.
    """

    def __init__(self, ring: PolyRing, d: int):
        self.ring = ring
        self.d = d
        self.index = {m: i for i, m in enumerate(monomials_of_degree(ring.nvars, d))}
        self.ech = SparseEchelon(ring.p, track_reps=True)

    def add_multiples(self, gens, min_mult_degree=0):
        """Insert m*g for every monomial m with deg(m*g) = d, deg(m) >= min_mult_degree."""
        for g in sorted(gens, key=poly_sort_key):
            if not g:
                continue
            gd = g.degree()
            if self.d - gd < min_mult_degree:
                continue
            for m in monomials_of_degree(self.ring.nvars, self.d - gd):
                self.ech.insert(poly_to_vec(g.mul_term(m, 1), self.index), {})

    def add_tagged(self, tag, f: Polynomial):
        """Insert f carrying a tag; returns True if f was independent."""
        piv, _ = self.ech.insert(poly_to_vec(f, self.index), {tag: 1})
        return piv is not None

    def coefficients_mod_untagged(self, f: Polynomial):
        """Solve f = sum c_tag * tagged + (untagged span); None if unsolvable."""
        sol = self.ech.solve(poly_to_vec(f, self.index))
        return sol

    def contains(self, f: Polynomial) -> bool:
        return self.ech.contains(poly_to_vec(f, self.index))


def minimal_generators(gens, ring: PolyRing):
    """Greedy subset of gens whose images form a basis of I/nI.

    Input generators must be homogeneous; selection is degree by degree in
    ascending grevlex order, so the result is deterministic.
    """
    gens = [g for g in gens if g]
    for g in gens:
        if not g.is_homogeneous():
            raise InputError(f"inhomogeneous generator {g}")
    if not gens:
        return []
    chosen = []
    degrees = sorted({g.degree() for g in gens})
    for d in degrees:
        span = DegreeSpan(ring, d)
        # nI part: multiples of every generator by monomials of degree >= 1
        span.add_multiples(gens, min_mult_degree=1)
        for g in sorted((g for g in gens if g.degree() == d), key=poly_sort_key):
            if span.add_tagged(id(g), g):
                chosen.append(g)
    return chosen


def _linear_part_echelon(I: Ideal):
    """Echelon of the degree-1 piece of an ideal, coordinates = variables."""
    ech = SparseEchelon(I.ring.p)
    for g in I.groebner():
        if g and g.degree() == 1:
            vec = {m.index(1): c for m, c in g.terms.items() if mono_deg(m) == 1}
            ech.insert(vec)
    return ech


def check_in_square(I: Ideal):
    n2 = maximal_ideal(I.ring).product(maximal_ideal(I.ring))
    for g in I.gens:
        if not g.is_homogeneous():
            raise InputError(f"inhomogeneous ideal generator {g}")
        if g and not n2.contains(g):
            raise InputError(f"generator {g} is not in the square of the maximal ideal")
    if not I.is_proper():
        raise InputError("ideal is not proper")


def burch_ideal(I: Ideal) -> Ideal:
    """BI = In : (I : n); returns n itself when I : n = I (depth > 0 or I = 0)."""
    check_in_square(I)
    ring = I.ring
    n = maximal_ideal(ring)
    soc = I.colon(n)
    if soc == I:
        return n
    BI = I.product(n).colon(soc)
    n2 = n.product(n)
    if not BI.contains_ideal(n2):
        raise InternalCheckError("n^2 not contained in the Burch ideal")
    return BI


def burch_index(I: Ideal) -> int:
    """dim_k n/BI, read off from linear parts since n^2 <= BI."""
    BI = burch_ideal(I)
    return I.ring.nvars - _linear_part_echelon(BI).rank


@dataclass
class BurchData:
    """Certified witness for the Burch index.

    gens: minimal generators a_1..a_m of I (possibly rescaled/adapted so
      the factorizations below are exact equalities).
    xs: linear forms spanning n/n^2; the first b are independent mod BI.
    socle_lifts: s_1..s_b in (I : n) with gens[j_indices[i]] = xs[i]*s_i.
    """

    ideal: Ideal
    burch_ideal: Ideal
    socle: Ideal
    gens: list
    xs: list
    socle_lifts: list
    j_indices: list
    b: int

    def verify(self):
        """Re-check every invariant by membership tests only."""
        I, ring = self.ideal, self.ideal.ring
        n = maximal_ideal(ring)
        BI = burch_ideal(I)
        soc = I.colon(n)
        if not (BI == self.burch_ideal and soc == self.socle):
            raise InternalCheckError("stored Burch/socle ideals disagree with recomputation")
        # gens generate I minimally
        if not (Ideal(ring, self.gens) == I):
            raise InternalCheckError("stored generators do not generate I")
        nI = n.product(I)
        d_span = {}
        for j, a in enumerate(self.gens):
            d = a.degree()
            if d not in d_span:
                d_span[d] = DegreeSpan(ring, d)
                d_span[d].add_multiples(self.gens, min_mult_degree=1)
            if not d_span[d].add_tagged(("a", j), a):
                raise InternalCheckError(f"generator {a} is redundant")
        # xs: first b independent mod BI, all n independent mod n^2
        ech_bi = _linear_part_echelon(BI)
        ech_lin = SparseEchelon(ring.p)
        for i, x in enumerate(self.xs):
            if x.degree() != 1:
                raise InternalCheckError(f"x candidate {x} is not linear")
            vec = {m.index(1): c for m, c in x.terms.items()}
            if i < self.b:
                if BI.contains(x):
                    raise InternalCheckError(f"{x} lies in the Burch ideal")
                piv, _ = ech_bi.insert(dict(vec))
                if piv is None:
                    raise InternalCheckError("x's are dependent modulo the Burch ideal")
            piv, _ = ech_lin.insert(dict(vec))
            if piv is None:
                raise InternalCheckError("x's are dependent modulo n^2")
        # factorizations
        for i in range(self.b):
            s, j = self.socle_lifts[i], self.j_indices[i]
            if not soc.contains(s):
                raise InternalCheckError(f"socle lift {s} not in (I : n)")
            if self.xs[i] * s != self.gens[j]:
                raise InternalCheckError(
                    f"factorization a[{j}] = x_{i} * s_{i} is not exact"
                )
            if nI.contains(self.gens[j]):
                raise InternalCheckError(f"a[{j}] is not a minimal generator")
        return True


def burch_data(I: Ideal) -> BurchData:
    """Deterministic certified Burch data; requires burch_index(I) >= 1.

    The x candidates are scanned in variable order; socle lifts in ascending
    grevlex order over the minimal generators of (I : n); the first valid
    factorization wins.  When x*s only agrees with a combination of the
    canonical generators modulo nI, the generating set is adapted by
    replacing one generator with x*s (an invertible change), keeping the
    factorization an exact equality.
    """
    ring = I.ring
    n = maximal_ideal(ring)
    BI = burch_ideal(I)
    soc = I.colon(n)
    b = ring.nvars - _linear_part_echelon(BI).rank
    if b < 1:
        raise InputError("burch_data requires Burch index >= 1")

    gens = minimal_generators(I.gens, ring)

    # choose xs: variables independent mod BI first (b of them), then extend
    # by the remaining variables to a basis of n/n^2
    ech_bi = _linear_part_echelon(BI)
    ech_lin = SparseEchelon(ring.p)
    burch_vars, other_vars = [], []
    for i in range(ring.nvars):
        vec = {i: 1}
        piv, _ = ech_bi.insert(dict(vec))
        if piv is not None and len(burch_vars) < b:
            burch_vars.append(i)
        else:
            other_vars.append(i)
    assert len(burch_vars) == b, "variables must span n/BI since they span n/n^2"
    xs = [ring.var(i) for i in burch_vars + other_vars]

    soc_min = minimal_generators(soc.gens if soc.gens else [], ring)
    soc_min.sort(key=poly_sort_key)
    nI = n.product(I)

    socle_lifts, j_indices = [], []
    assigned = {}
    for i in range(b):
        x = xs[i]
        found = None
        for s in soc_min:
            prod = x * s
            if not prod:
                continue
            d = prod.degree()
            span = DegreeSpan(ring, d)
            span.add_multiples(gens, min_mult_degree=1)
            for j, a in enumerate(gens):
                if a.degree() == d:
                    span.add_tagged(j, a)
            coeffs = span.coefficients_mod_untagged(prod)
            if coeffs is None:
                raise InternalCheckError("x*s not expressible over the generators")
            coeffs = {j: c for j, c in coeffs.items() if c}
            if not coeffs:
                continue  # x*s in nI: not a minimal generator, try next s
            if len(coeffs) == 1:
                j, c = next(iter(coeffs.items()))
                s_scaled = s.scale(ring.inv(c))
                if x * s_scaled == gens[j]:
                    found = (s_scaled, j, None)
                    break
                if j not in assigned:
                    found = (s_scaled, j, x * s_scaled)  # adapt a_j := x*s
                    break
            else:
                # pick the smallest unassigned index carried by the combination
                j = min((jj for jj in coeffs if jj not in assigned), default=None)
                if j is not None:
                    s_scaled = s.scale(ring.inv(coeffs[j]))
                    found = (s_scaled, j, x * s_scaled)
                    break
        if found is None:
            raise InternalCheckError(
                f"no exact factorization for {x}; adaptation conflict or bug"
            )
        s_scaled, j, replacement = found
        if replacement is not None:
            gens = list(gens)
            gens[j] = replacement
        assigned[j] = i
        socle_lifts.append(s_scaled)
        j_indices.append(j)

    data = BurchData(
        ideal=I,
        burch_ideal=BI,
        socle=soc,
        gens=gens,
        xs=xs,
        socle_lifts=socle_lifts,
        j_indices=j_indices,
        b=b,
    )
    data.verify()
    return data
