"""Free graded-commutative divided-power dg algebras and acyclic closures.

The underlying algebra is free on variables of positive degree: exterior
variables in odd degrees, divided-power variables in even degrees (basis
gamma_k(v), with gamma_a gamma_b = binom(a+b, a) gamma_{a+b} and
d(gamma_k(v)) = d(v) gamma_{k-1}(v)).  Basis monomials are tuples of
(variable, exponent) pairs; products carry the Koszul sign of interleaving
the odd variables.

acyclic_closure() builds a resolution of Q/I of this shape by adjoining,
degree by degree, variables that kill a minimal generating set of the
homology.  Freeness of the underlying algebra is what the general-case
syzygy cycles need: products like e * f of basis variables stay basis
monomials instead of degenerating.
"""

from __future__ import annotations

from math import comb

from .complexes import GradedFreeComplex
from .errors import InternalCheckError, ResourceCapError
from .groebner import Ideal, syzygies_of
from .matrices import FreeModuleElement, PolyMatrix
from .resolve import minimal_module_generators
from .ring import PolyRing, mono_deg
from .taylor import DgAlgebra


class TateAlgebra(DgAlgebra):
    """Free graded-commutative divided-power dg algebra over Q, degree-capped."""

    def __init__(self, ring: PolyRing, degree_cap: int, basis_guard: int = 4000):
        self.ringref = ring
        self.degree_cap = degree_cap
        self.basis_guard = basis_guard
        self.var_degrees = []          # degree of each adjoined variable
        self.var_diffs = []            # mono-keyed elements {mono: Polynomial}
        self.var_names = []
        self._stale = True
        self._basis = None             # d -> sorted list of monomial keys
        self._pos = None               # d -> {key: position}
        self._complex = None

    @property
    def ring(self):
        return self.ringref

    # -- monomial bookkeeping ---------------------------------------------

    def key_degree(self, key) -> int:
        return sum(self.var_degrees[v] * e for v, e in key)

    def adjoin(self, degree: int, diff_elt: dict, name: str | None = None) -> int:
        """Add a variable of the given degree with d(var) = diff_elt (mono-keyed)."""
        if degree < 1:
            raise ValueError("variables must have positive degree")
        idx = len(self.var_degrees)
        self.var_degrees.append(degree)
        self.var_diffs.append(dict(diff_elt))
        self.var_names.append(name or f"T{degree}_{idx}")
        self._stale = True
        return idx

    def _enumerate_basis(self):
        cap = self.degree_cap
        by_degree = {d: [] for d in range(cap + 1)}

        def rec(var_idx, key, deg):
            if var_idx == len(self.var_degrees):
                by_degree[deg].append(tuple(key))
                return
            vdeg = self.var_degrees[var_idx]
            max_e = 1 if vdeg % 2 == 1 else (cap - deg) // vdeg
            e = 0
            while e <= max_e and deg + e * vdeg <= cap:
                if e:
                    key.append((var_idx, e))
                    rec(var_idx + 1, key, deg + e * vdeg)
                    key.pop()
                else:
                    rec(var_idx + 1, key, deg)
                e += 1

        rec(0, [], 0)
        total = sum(len(v) for v in by_degree.values())
        if total > self.basis_guard:
            raise ResourceCapError(f"Tate basis size {total} exceeds guard {self.basis_guard}")
        self._basis = {d: sorted(keys) for d, keys in by_degree.items() if keys}
        self._pos = {d: {k: t for t, k in enumerate(keys)} for d, keys in self._basis.items()}

    def _refresh(self):
        if not self._stale:
            return
        self._enumerate_basis()
        ring = self.ring
        degrees, diffs = {}, {}
        internal = {}
        for d, keys in self._basis.items():
            internal[d] = []
            for k in keys:
                internal[d].append(self._internal_degree(k))
            degrees[d] = internal[d]
        for d in sorted(self._basis):
            if d == 0:
                continue
            mat = PolyMatrix(ring, degrees.get(d - 1, []), degrees[d])
            for j, key in enumerate(self._basis[d]):
                img = self.diff_key(key)
                for k2, f in img.items():
                    mat.set_entry(self._pos[d - 1][k2], j, f)
            diffs[d] = mat
        self._complex = GradedFreeComplex(
            ring, degrees, diffs,
            labels={d: [self.key_name(k) for k in keys] for d, keys in self._basis.items()},
        )
        self._stale = False

    def _internal_degree(self, key) -> int:
        """Internal (polynomial) degree of a basis monomial: sum over factors of
        the internal degree of the variable, inferred from its differential."""
        total = 0
        for v, e in key:
            total += e * self._var_internal(v)
        return total

    def _var_internal(self, v) -> int:
        cache = getattr(self, "_var_internal_cache", None)
        if cache is None:
            cache = self._var_internal_cache = {}
        if v in cache:
            return cache[v]
        diff = self.var_diffs[v]
        if not diff:
            cache[v] = 0
            return 0
        key, f = next(iter(diff.items()))
        val = f.degree() + self._internal_degree(key)
        cache[v] = val
        return val

    def key_name(self, key) -> str:
        if not key:
            return "1"
        parts = []
        for v, e in key:
            nm = self.var_names[v]
            parts.append(nm if e == 1 else f"g{e}({nm})")
        return "*".join(parts)

    @property
    def complex(self) -> GradedFreeComplex:
        self._refresh()
        return self._complex

    def basis_keys(self, d: int):
        self._refresh()
        return self._basis.get(d, [])

    def position(self, d: int, key) -> int:
        self._refresh()
        return self._pos[d][key]

    # -- algebra operations on monomial keys -------------------------------

    def mul_keys(self, k1, k2):
        """(sign, binomial coefficient, product key) or None when it vanishes."""
        odd1 = [v for v, e in k1 if self.var_degrees[v] % 2 == 1]
        odd2 = [v for v, e in k2 if self.var_degrees[v] % 2 == 1]
        if set(odd1) & set(odd2):
            return None
        inv = sum(1 for u in odd1 for w in odd2 if w < u)
        sign = -1 if inv % 2 else 1
        coeff = 1
        exps = dict(k1)
        for v, e in k2:
            if v in exps:
                a, b = exps[v], e
                coeff *= comb(a + b, a)
                exps[v] = a + b
            else:
                exps[v] = e
        key = tuple(sorted(exps.items()))
        if self.key_degree(key) > self.degree_cap:
            return None
        return sign, coeff, key

    def mul_key_elt(self, k1, elt: dict) -> dict:
        """Product (basis monomial) * (mono-keyed element)."""
        out = {}
        for k2, f in elt.items():
            hit = self.mul_keys(k1, k2)
            if hit is None:
                continue
            sign, coeff, key = hit
            c = (sign * coeff) % self.ring.p
            if not c:
                continue
            g = out.get(key, self.ring.zero()) + f.scale(c)
            if g:
                out[key] = g
            else:
                out.pop(key, None)
        return out

    def mul_elt_elt(self, e1: dict, e2: dict) -> dict:
        out = {}
        for k1, f1 in e1.items():
            part = self.mul_key_elt(k1, e2)
            for k, f in part.items():
                g = out.get(k, self.ring.zero()) + f * f1
                if g:
                    out[k] = g
                else:
                    out.pop(k, None)
        return out

    def diff_key(self, key) -> dict:
        """Differential of a basis monomial, mono-keyed.

        Leibniz: d(f1...fk) = sum_i (-1)^deg(prefix) f1..f_{i-1} d(f_i) f_{i+1}..fk
        with d(gamma_e(v)) = d(v) gamma_{e-1}(v).  Each term is evaluated as
        prefix * (d(v) * reduced-tail), so every Koszul sign beyond the
        Leibniz prefactor comes from the product machinery itself.
        """
        out = {}
        ring = self.ring
        prefix: list = []
        prefix_deg = 0
        for t, (v, e) in enumerate(key):
            vdeg = self.var_degrees[v]
            rhs = []
            if vdeg % 2 == 0 and e >= 2:
                rhs.append((v, e - 1))
            rhs.extend(key[t + 1:])
            inner = self.mul_elt_elt(self.var_diffs[v], {tuple(rhs): ring.one()})
            term = self.mul_key_elt(tuple(prefix), inner)
            if prefix_deg % 2:
                term = {k: -f for k, f in term.items()}
            for k, f in term.items():
                g = out.get(k, ring.zero()) + f
                if g:
                    out[k] = g
                else:
                    out.pop(k, None)
            prefix.append((v, e))
            prefix_deg += vdeg * e
        return out

    # -- positional interface (DgAlgebra) -----------------------------------

    def to_element(self, d: int, mk: dict) -> FreeModuleElement:
        self._refresh()
        pos = self._pos.get(d, {})
        coords = {}
        for k, f in mk.items():
            coords[pos[k]] = f
        return FreeModuleElement(self.ring, coords)

    def from_element(self, d: int, v: FreeModuleElement) -> dict:
        self._refresh()
        keys = self._basis.get(d, [])
        return {keys[i]: f for i, f in v.coords.items()}

    def product_basis(self, da, ia, db, ib) -> FreeModuleElement:
        self._refresh()
        k1 = self._basis[da][ia]
        k2 = self._basis[db][ib]
        hit = self.mul_keys(k1, k2)
        if hit is None:
            return FreeModuleElement(self.ring, {})
        sign, coeff, key = hit
        c = (sign * coeff) % self.ring.p
        if not c:
            return FreeModuleElement(self.ring, {})
        return FreeModuleElement(self.ring, {self._pos[da + db][key]: self.ring.const(c)})


def homology_cycle_generators(cx: GradedFreeComplex, d: int):
    """Minimal Q-module generators of H_d(cx), as cycle elements of C_d."""
    ring = cx.ring
    cols = [cx.diff(d).column(j) for j in range(cx.rank(d))]
    cycles = syzygies_of(cols, cx.rank(d - 1), ring)
    if not cycles:
        return []
    boundaries = [cx.diff(d + 1).column(j) for j in range(cx.rank(d + 1))]
    zero_ideal = Ideal(ring, [])
    return minimal_module_generators(
        cycles, cx.basis_degrees(d), zero_ideal, extra_span=boundaries
    )


def acyclic_closure(I: Ideal, through: int, basis_guard: int = 4000) -> TateAlgebra:
    """Tate-style dg algebra resolution of Q/I, exact in degrees 1..through-1.

    Degree-1 exterior variables kill the minimal generators of I; each
    round then adjoins degree-(d+1) variables killing minimal generators
    of H_d.  All choices are the deterministic minimal-generator picks.
    """
    from .burch import minimal_generators

    ring = I.ring
    alg = TateAlgebra(ring, degree_cap=through, basis_guard=basis_guard)
    for t, a in enumerate(minimal_generators(I.gens, ring)):
        alg.adjoin(1, {(): a}, name=f"e{t + 1}")
    counter = {}
    for d in range(1, through):
        gens = homology_cycle_generators(alg.complex, d)
        if not gens:
            continue
        keys = alg.basis_keys(d)
        for g in gens:
            mk = {keys[i]: f for i, f in g.coords.items()}
            counter[d + 1] = counter.get(d + 1, 0) + 1
            alg.adjoin(d + 1, mk, name=f"t{d + 1}_{counter[d + 1]}")
        if homology_cycle_generators(alg.complex, d):
            raise InternalCheckError(f"homology at degree {d} survived adjunction")
    alg.complex.check_dd_zero()
    return alg
