"""Buchberger machinery for ideals and submodules of free modules over Q.

One engine serves both: an ideal is a submodule of Q^1.  The order is
position-over-term with earlier positions greater, grevlex on monomials;
the reduced basis is unique, so all downstream choices are deterministic.

Syzygies and lifts use the augmentation trick: to study columns g_1..g_s
of Q^a, run the engine on g_i + e_(a+i) inside Q^(a+s); basis elements
supported in the tail positions are syzygies, and tails of normal forms
are lift certificates.
"""

from __future__ import annotations

from .ring import (
    Polynomial,
    PolyRing,
    grevlex_key,
    mono_deg,
    mono_div,
    mono_divides,
    mono_gcd,
    mono_lcm,
    mono_mul,
)
from .matrices import FreeModuleElement, PolyMatrix


def lead_term(v: FreeModuleElement):
    """(position, monomial) lead of a module element: smallest position wins,
    grevlex-largest monomial within it."""
    pos = min(v.coords)
    return pos, v.coords[pos].lead_monomial()


def lead_coeff(v: FreeModuleElement) -> int:
    pos, mono = lead_term(v)
    return v.coords[pos].terms[mono]


def _term_key(t):
    pos, mono = t
    return (-pos, grevlex_key(mono))  # bigger key = bigger term


def reduce_element(v: FreeModuleElement, basis, full: bool = True) -> FreeModuleElement:
    """Normal form of v against basis (list of (lead, elt) with monic elts)."""
    ring = v.ring
    rem = FreeModuleElement(ring, {})
    cur = FreeModuleElement(ring, dict(v.coords))
    while cur.coords:
        pos, mono = lead_term(cur)
        c = cur.coords[pos].terms[mono]
        hit = None
        for (bpos, bmono), g in basis:
            if bpos == pos and mono_divides(bmono, mono):
                hit = (bmono, g)
                break
        if hit is not None:
            bmono, g = hit
            cur = cur - g.mul_term(mono_div(mono, bmono), c)
        else:
            if not full:
                break
            lead_piece = FreeModuleElement(ring, {pos: ring.monomial(mono, c)})
            rem = rem + lead_piece
            cur = cur - lead_piece
    if not full and cur.coords:
        return cur
    return rem


def module_groebner(gens, ring: PolyRing):
    """Reduced Groebner basis of the submodule generated by gens.

    Returns monic FreeModuleElements, fully inter-reduced, sorted by
    ascending lead term.
    """
    basis = []  # (lead, element), monic, distinct leads
    done_pairs = set()

    def insert(elt):
        r = reduce_element(elt, basis, full=False)
        if not r.coords:
            return None
        r = r.scale(ring.inv(lead_coeff(r)))
        basis.append((lead_term(r), r))
        return len(basis) - 1

    work = sorted((g for g in gens if g.coords), key=lambda g: _term_key(lead_term(g)))
    pairs = []
    for g in work:
        k = insert(g)
        if k is None:
            continue
        (pk, mk), _ = basis[k]
        for t in range(k):
            (pt, mt), _ = basis[t]
            if pt == pk:
                lc = mono_lcm(mt, mk)
                pairs.append((mono_deg(lc), grevlex_key(lc), t, k))
    pairs.sort()

    while pairs:
        _, _, i, j = pairs.pop(0)
        done_pairs.add((i, j))
        (pi, mi), gi = basis[i]
        (pj, mj), gj = basis[j]
        lcm = mono_lcm(mi, mj)
        # coprime-lead criterion; only valid when both elements are confined
        # to their common lead position (it fails for genuine module elements)
        if (
            lcm == mono_mul(mi, mj)
            and set(gi.coords) == {pi}
            and set(gj.coords) == {pj}
        ):
            continue
        # chain criterion: some k with lead dividing the lcm and both pairs done
        skip = False
        for k in range(len(basis)):
            if k in (i, j):
                continue
            (pk, mk), _ = basis[k]
            if pk == pi and mono_divides(mk, lcm):
                if (min(i, k), max(i, k)) in done_pairs and (min(j, k), max(j, k)) in done_pairs:
                    skip = True
                    break
        if skip:
            continue
        s = gi.mul_term(mono_div(lcm, mi), 1) - gj.mul_term(mono_div(lcm, mj), 1)
        k = insert(s)
        if k is not None:
            (pk, mk), _ = basis[k]
            for t in range(k):
                (pt, mt), _ = basis[t]
                if pt == pk:
                    lc = mono_lcm(mt, mk)
                    pairs.append((mono_deg(lc), grevlex_key(lc), t, k))
            pairs.sort()

    # minimal basis: drop leads divisible by another kept lead (leads are distinct)
    leads = [lead for lead, _ in basis]
    kept = []
    for idx, (lead, g) in enumerate(basis):
        pos, mono = lead
        if not any(
            o != idx and leads[o][0] == pos and mono_divides(leads[o][1], mono)
            for o in range(len(basis))
        ):
            kept.append((lead, g))
    # full tail reduction gives the unique reduced basis
    reduced = []
    for idx in range(len(kept)):
        others = [kept[t] for t in range(len(kept)) if t != idx]
        r = reduce_element(kept[idx][1], others, full=True)
        if r.coords:
            reduced.append(r.scale(ring.inv(lead_coeff(r))))
    reduced.sort(key=lambda g: _term_key(lead_term(g)))
    return reduced


def module_normal_form(v: FreeModuleElement, gb) -> FreeModuleElement:
    return reduce_element(v, [(lead_term(g), g) for g in gb], full=True)


def _augment(columns, ambient_rank, ring):
    out = []
    for i, col in enumerate(columns):
        coords = dict(col.coords)
        coords[ambient_rank + i] = ring.one()
        out.append(FreeModuleElement(ring, coords))
    return out


def syzygies_of(columns, ambient_rank: int, ring: PolyRing):
    """Generators of {w in Q^s : sum w_i * columns[i] = 0}."""
    gb = module_groebner(_augment(columns, ambient_rank, ring), ring)
    syz = []
    for g in gb:
        if all(pos >= ambient_rank for pos in g.coords):
            syz.append(FreeModuleElement(ring, {pos - ambient_rank: f for pos, f in g.coords.items()}))
    return syz


def lift_through(columns, ambient_rank: int, target: FreeModuleElement, ring: PolyRing):
    """Coefficients w with sum w_i * columns[i] = target, or None."""
    gb = module_groebner(_augment(columns, ambient_rank, ring), ring)
    leads = [(lead_term(g), g) for g in gb]
    r = reduce_element(target, leads, full=True)
    if any(pos < ambient_rank for pos in r.coords):
        return None
    return FreeModuleElement(ring, {pos - ambient_rank: -f for pos, f in r.coords.items()})


class SubmoduleBasis:
    """Cached Groebner data for a submodule of Q^ambient, for repeated queries."""

    __slots__ = ("ring", "ambient", "columns", "_gb", "_leads", "_aug_gb", "_aug_leads")

    def __init__(self, ring, ambient_rank, columns):
        self.ring = ring
        self.ambient = ambient_rank
        self.columns = [c for c in columns if c.coords]
        self._gb = None
        self._leads = None
        self._aug_gb = None
        self._aug_leads = None

    def groebner(self):
        if self._gb is None:
            self._gb = module_groebner(self.columns, self.ring)
            self._leads = [(lead_term(g), g) for g in self._gb]
        return self._gb

    def normal_form(self, v: FreeModuleElement) -> FreeModuleElement:
        self.groebner()
        return reduce_element(v, self._leads, full=True)

    def contains(self, v: FreeModuleElement) -> bool:
        return not self.normal_form(v).coords

    def _aug(self):
        if self._aug_gb is None:
            self._aug_gb = module_groebner(_augment(self.columns, self.ambient, self.ring), self.ring)
            self._aug_leads = [(lead_term(g), g) for g in self._aug_gb]
        return self._aug_gb

    def lift(self, target: FreeModuleElement):
        """w with sum w_i columns[i] = target, or None."""
        self._aug()
        r = reduce_element(target, self._aug_leads, full=True)
        if any(pos < self.ambient for pos in r.coords):
            return None
        return FreeModuleElement(self.ring, {pos - self.ambient: -f for pos, f in r.coords.items()})

    def syzygies(self):
        self._aug()
        out = []
        for g in self._aug_gb:
            if all(pos >= self.ambient for pos in g.coords):
                out.append(FreeModuleElement(self.ring, {pos - self.ambient: f for pos, f in g.coords.items()}))
        return out


# ---------------------------------------------------------------------------
# ideals
# ---------------------------------------------------------------------------


def _wrap(f: Polynomial) -> FreeModuleElement:
    return FreeModuleElement(f.ring, {0: f} if f else {})


def _unwrap(v: FreeModuleElement) -> Polynomial:
    return v.coords.get(0, v.ring.zero())


class Ideal:
    """Homogeneous ideal of Q with a cached reduced Groebner basis."""

    __slots__ = ("ring", "gens", "_gb", "_leads", "_nf_basis")

    def __init__(self, ring: PolyRing, gens):
        self.ring = ring
        self.gens = [g for g in gens if g]
        self._gb = None
        self._leads = None
        self._nf_basis = None

    def groebner(self):
        if self._gb is None:
            if not self.gens:
                self._gb = []
            else:
                gb = module_groebner([_wrap(g) for g in self.gens], self.ring)
                self._gb = [_unwrap(v) for v in gb]
            self._leads = [g.lead_monomial() for g in self._gb]
            self._nf_basis = [(lead_term(_wrap(g)), _wrap(g)) for g in self._gb]
        return self._gb

    def lead_monomials(self):
        self.groebner()
        return self._leads

    def is_zero(self) -> bool:
        return not self.gens

    def normal_form(self, f: Polynomial) -> Polynomial:
        self.groebner()
        if not self._nf_basis:
            return f
        return _unwrap(reduce_element(_wrap(f), self._nf_basis, full=True))

    def contains(self, f: Polynomial) -> bool:
        return not self.normal_form(f)

    def contains_ideal(self, other: "Ideal") -> bool:
        return all(self.contains(g) for g in other.gens)

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.groebner() == other.groebner()

    def __hash__(self):
        return hash(tuple(sorted((m, c) for g in self.groebner() for m, c in g.terms.items())))

    def is_monomial(self) -> bool:
        return all(len(g.terms) == 1 for g in self.gens)

    def monomial_gens(self):
        assert self.is_monomial()
        gens = sorted({g.lead_monomial() for g in self.gens}, key=grevlex_key)
        return [m for m in gens if not any(o != m and mono_divides(o, m) for o in gens)]

    def is_proper(self) -> bool:
        return not self.contains(self.ring.one())

    def sum(self, other: "Ideal") -> "Ideal":
        return Ideal(self.ring, self.gens + other.gens)

    def product(self, other: "Ideal") -> "Ideal":
        if self.is_zero() or other.is_zero():
            return Ideal(self.ring, [])
        return Ideal(self.ring, [f * g for f in self.gens for g in other.gens])

    def intersect(self, other: "Ideal") -> "Ideal":
        if self.is_zero() or other.is_zero():
            return Ideal(self.ring, [])
        if self.is_monomial() and other.is_monomial():
            gens = [self.ring.monomial(mono_lcm(a, b))
                    for a in self.monomial_gens() for b in other.monomial_gens()]
            return Ideal(self.ring, gens)
        cols = [_wrap(g) for g in self.gens] + [_wrap(-g) for g in other.gens]
        out = []
        for w in syzygies_of(cols, 1, self.ring):
            elt = self.ring.zero()
            for i, f in w.coords.items():
                if i < len(self.gens):
                    elt = elt + f * self.gens[i]
            if elt:
                out.append(elt)
        return Ideal(self.ring, out)

    def colon_element(self, f: Polynomial) -> "Ideal":
        """I : (f)."""
        if not f:
            return Ideal(self.ring, [self.ring.one()])
        if self.is_zero():
            return Ideal(self.ring, [])
        if self.is_monomial() and len(f.terms) == 1:
            m = f.lead_monomial()
            gens = [self.ring.monomial(mono_div(g, mono_gcd(g, m))) for g in self.monomial_gens()]
            return Ideal(self.ring, gens)
        cols = [_wrap(g) for g in self.gens] + [_wrap(f)]
        out = [w.coords[len(self.gens)] for w in syzygies_of(cols, 1, self.ring)
               if len(self.gens) in w.coords]
        return Ideal(self.ring, out)

    def colon(self, other: "Ideal") -> "Ideal":
        """I : J = {q in Q : qJ <= I}."""
        if other.is_zero():
            return Ideal(self.ring, [self.ring.one()])
        result = None
        for f in other.gens:
            piece = self.colon_element(f)
            result = piece if result is None else result.intersect(piece)
        return result

    # -- graded structure ----------------------------------------------------

    def standard_monomials(self, d: int):
        """Monomials of degree d outside the lead-term ideal: a k-basis of (Q/I)_d."""
        from .ring import monomials_of_degree

        leads = self.lead_monomials()
        return [m for m in monomials_of_degree(self.ring.nvars, d)
                if not any(mono_divides(lm, m) for lm in leads)]

    def quotient_top_degree(self, cap: int = 200):
        """Largest d with (Q/I)_d != 0, or None if Q/I is not Artinian within cap."""
        leads = self.lead_monomials()
        # Artinian iff every variable has a pure power among the lead terms
        for i in range(self.ring.nvars):
            if not any(all(e == 0 for t, e in enumerate(lm) if t != i) and lm[i] > 0 for lm in leads):
                return None
        top = -1
        d = 0
        while d <= cap:
            if self.standard_monomials(d):
                top = d
                d += 1
            else:
                break
        return top

    def quotient_hilbert(self, through: int):
        return [len(self.standard_monomials(d)) for d in range(through + 1)]

    def __repr__(self):
        return f"Ideal({', '.join(map(str, self.gens))})"


def maximal_ideal(ring: PolyRing) -> Ideal:
    return Ideal(ring, ring.maximal_ideal_gens())


def syzygy_matrix(m: PolyMatrix) -> PolyMatrix:
    """Generating set of ker(m) as columns of a matrix."""
    cols = [m.column(j) for j in range(m.cols)]
    syz = syzygies_of(cols, m.rows, m.ring)
    degs = [w.degree(m.col_degrees) for w in syz]
    order = sorted(range(len(syz)), key=lambda t: (degs[t], t))
    return PolyMatrix.from_columns(
        m.ring, m.col_degrees, [syz[t] for t in order], [degs[t] for t in order]
    )
