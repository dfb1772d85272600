"""The relative bar resolution B(R, X, Y) of M over R, in two regimes.

Words r[x_1|...|x_p]y index the basis: x_t runs over basis elements of
X_(>=1) (shifted degrees |x_t| + 1), y over basis elements of Y; the
homological degree is sum(|x_t| + 1) + |y|.  Coefficients live in R, so
every polynomial that migrates out of a slot is reduced modulo I; in
particular interior differentials of degree-1 slots land in I and vanish.

dg regime -- differential with explicit signs, epsilon_t = sum of shifted
degrees before slot t:

  sum_t (-1)^eps_{t-1} r[..|dx_t|..]y  +  (-1)^eps_p r[..]dy
  + sum_t (-1)^eps_{t-1} r[..|x_t x_{t+1}|..]y
  + (-1)^eps_{p-1} r[x_1|..|x_{p-1}] (x_p y)

A-infinity regime -- all operations on all substrings, the sign of an
arity-i operation on the block after slot j being (-1)^eps_j times the
suspension sign (-1)^(sum_{u<i} (i-u) |a_u|) of removing i shifts.

d^2 = 0, exactness below the cap and the composition rank formula are all
checked mechanically after assembly.
"""

from __future__ import annotations

from .complexes import GradedFreeComplex
from .errors import ArityCapError, InternalCheckError
from .groebner import Ideal
from .matrices import FreeModuleElement, PolyMatrix
from .ring import Polynomial


class BarWord:
    """Immutable word (xs, y): xs a tuple of (degree, index) into X, y into Y."""

    __slots__ = ("xs", "y")

    def __init__(self, xs, y):
        self.xs = tuple(xs)
        self.y = y

    def degree(self) -> int:
        return sum(d + 1 for d, _ in self.xs) + self.y[0]

    def sort_key(self):
        return (
            len(self.xs),
            tuple(d for d, _ in self.xs),
            self.y[0],
            tuple(i for _, i in self.xs),
            self.y[1],
        )

    def __eq__(self, other):
        return self.xs == other.xs and self.y == other.y

    def __hash__(self):
        return hash((self.xs, self.y))

    def __repr__(self):
        inner = "|".join(f"x({d},{i})" for d, i in self.xs)
        return f"[{inner}]y({self.y[0]},{self.y[1]})"


class DgBarOps:
    """Operation tables of a dg pair (X a DgAlgebra, Y a DgModule over it)."""

    regime = "dg"

    def __init__(self, algebra, module):
        self.algebra = algebra
        self.module = module
        self.x_complex = algebra.complex
        self.y_complex = module.complex

    def max_arity(self):
        return 2

    def m(self, arity, refs):
        if arity == 1:
            d, i = refs[0]
            return self.x_complex.diff(d).column(i)
        if arity == 2:
            (da, ia), (db, ib) = refs
            return self.algebra.product_basis(da, ia, db, ib)
        return FreeModuleElement(self.x_complex.ring, {})

    def mu(self, arity, xrefs, yref):
        if arity == 1:
            d, i = yref
            return self.y_complex.diff(d).column(i)
        if arity == 2:
            (dx, ix) = xrefs[0]
            return self.module.action_basis(dx, ix, yref[0], yref[1])
        return FreeModuleElement(self.y_complex.ring, {})


class AInfBarOps:
    """Operation tables of a transferred A-infinity pair."""

    regime = "ainf"

    def __init__(self, alg, mod):
        self.alg = alg
        self.mod = mod
        self.x_complex = alg.complex
        self.y_complex = mod.complex

    def max_arity(self):
        return max(self.alg.arity_cap, self.mod.arity_cap)

    def m(self, arity, refs):
        return self.alg.op(arity, refs)

    def mu(self, arity, xrefs, yref):
        return self.mod.op(arity, xrefs, yref)


class BarComplex:
    """B(R, X, Y) to a homological cap, with differential matrices over R."""

    def __init__(self, ops, quotient: Ideal, cap: int, check: bool = True):
        self.ops = ops
        self.quotient = quotient
        self.ring = ops.x_complex.ring
        self.cap = cap
        self.regime = ops.regime
        self.words = {}      # n -> list of BarWord
        self.pos = {}        # n -> {word: index}
        self._enumerate()
        self.complex = self._assemble()
        if check:
            self.complex.check_dd_zero()

    # -- basis ------------------------------------------------------------

    def _enumerate(self):
        X, Y = self.ops.x_complex, self.ops.y_complex
        xrefs_by_deg = {d: [(d, i) for i in range(X.rank(d))]
                        for d in range(1, X.top() + 1)}
        yrefs = [(d, i) for d in range(Y.top() + 1) for i in range(Y.rank(d))]
        words_by_degree = {n: [] for n in range(self.cap + 1)}

        def extend(xs, used):
            for (yd, yi) in yrefs:
                n = used + yd
                if n <= self.cap:
                    words_by_degree[n].append(BarWord(xs, (yd, yi)))
            for d, refs in xrefs_by_deg.items():
                if used + d + 1 > self.cap:
                    continue
                for ref in refs:
                    extend(xs + [ref], used + d + 1)

        extend([], 0)
        for n, ws in words_by_degree.items():
            ws.sort(key=BarWord.sort_key)
            self.words[n] = ws
            self.pos[n] = {w: t for t, w in enumerate(ws)}

    def rank(self, n) -> int:
        return len(self.words.get(n, []))

    def word_internal_degree(self, w: BarWord) -> int:
        X, Y = self.ops.x_complex, self.ops.y_complex
        total = Y.basis_degrees(w.y[0])[w.y[1]]
        for d, i in w.xs:
            total += X.basis_degrees(d)[i]
        return total

    # -- differential -------------------------------------------------------

    def differential_of_word(self, w: BarWord) -> dict:
        """Boundary of a word: dict BarWord -> Polynomial (reduced mod I)."""
        red = self.quotient.normal_form
        out = {}

        def add(word, coeff: Polynomial):
            coeff = red(coeff)
            if not coeff:
                return
            cur = out.get(word)
            s = coeff if cur is None else red(cur + coeff)
            if s:
                out[word] = s
            else:
                out.pop(word, None)

        xs = w.xs
        p = len(xs)
        shifted = [d + 1 for d, _ in xs]
        max_arity = self.ops.max_arity()

        # interior operations on blocks xs[j:j+i]; dg structures only have
        # arity <= 2, so the loops coincide there
        for j in range(p):
            eps = sum(shifted[:j]) % 2
            upper = p - j if self.regime == "ainf" else min(2, p - j)
            for i in range(1, upper + 1):
                block = xs[j:j + i]
                if i == 1 and block[0][0] == 1:
                    continue  # boundary lands in I R = 0
                val = self.ops.m(i, block)
                if not val.coords:
                    continue
                sign = -1 if eps else 1
                # de-suspension Koszul sign of the consumed block
                susp = sum((i - 1 - u) * block[u][0] for u in range(i - 1)) % 2
                if susp:
                    sign = -sign
                out_deg = sum(d for d, _ in block) + i - 2
                if out_deg < 1:
                    continue
                for idx, f in val.coords.items():
                    new_xs = xs[:j] + ((out_deg, idx),) + xs[j + i:]
                    add(BarWord(new_xs, w.y), f if sign > 0 else -f)

        # tail operations mu_i on (xs[p-i+1:], y)
        tail_max = p + 1 if self.regime == "ainf" else min(2, p + 1)
        for i in range(1, tail_max + 1):
            take = i - 1
            if take > p:
                continue
            if i == 1 and w.y[0] == 0:
                continue
            xblock = xs[p - take:]
            eps = sum(shifted[:p - take]) % 2
            val = self.ops.mu(i, xblock, w.y)
            if not val.coords:
                continue
            sign = -1 if eps else 1
            # same de-suspension rule, with the y slot as the last factor
            susp = sum((take - u) * xblock[u][0] for u in range(take)) % 2
            if susp:
                sign = -sign
            out_deg = sum(d for d, _ in xblock) + w.y[0] + i - 2
            for idx, f in val.coords.items():
                add(BarWord(xs[:p - take], (out_deg, idx)), f if sign > 0 else -f)

        return out

    def _assemble(self) -> GradedFreeComplex:
        degrees = {n: [self.word_internal_degree(w) for w in ws]
                   for n, ws in self.words.items() if ws}
        diffs = {}
        for n in range(1, self.cap + 1):
            if not self.words.get(n):
                continue
            mat = PolyMatrix(self.ring, degrees.get(n - 1, []), degrees[n])
            tgt = self.pos.get(n - 1, {})
            for a, w in enumerate(self.words[n]):
                for word, coeff in self.differential_of_word(w).items():
                    b = tgt.get(word)
                    if b is None:
                        raise InternalCheckError(f"boundary word {word} missing at degree {n-1}")
                    mat.set_entry(b, a, coeff)
            diffs[n] = mat
        return GradedFreeComplex(self.ring, degrees, diffs, quotient=self.quotient)

    # -- structural checks ----------------------------------------------------

    def rank_formula_check(self):
        """Ranks must match the generating-function expansion
        P_Y(t) / (1 - t (P_X(t) - 1)) coefficientwise."""
        X, Y = self.ops.x_complex, self.ops.y_complex
        g = [0] * (self.cap + 1)
        for d in range(1, X.top() + 1):
            if d + 1 <= self.cap:
                g[d + 1] = X.rank(d)
        py = [Y.rank(n) for n in range(self.cap + 1)]
        series = [0] * (self.cap + 1)
        for n in range(self.cap + 1):
            acc = py[n]
            for k in range(2, n + 1):
                acc += g[k] * series[n - k]
            series[n] = acc
        actual = [self.rank(n) for n in range(self.cap + 1)]
        if series != actual:
            raise InternalCheckError(f"bar rank formula mismatch: {actual} vs {series}")
        return actual

    def exactness_check(self, through: int | None = None):
        top = (self.cap - 1) if through is None else through
        for n in range(1, top + 1):
            dims = self.complex.homology_dims(n)
            if dims:
                raise InternalCheckError(f"bar homology at degree {n}: {dims}")
        return True

    def h0_dims(self, through: int):
        """Graded dimensions of H_0(B) = coker(d_1), to compare against M."""
        out = []
        idx0 = self.complex.strand_index(0, 0)
        for d in range(through + 1):
            tgt = self.complex.strand_index(0, d)
            _, _, cols = self.complex.strand_columns(1, d)
            from .linalg import SparseEchelon

            ech = SparseEchelon(self.ring.p)
            for c in cols:
                ech.insert(dict(c))
            out.append(len(tgt) - ech.rank)
        return out

    def minimality_report(self):
        """Degrees of differential entries with unit parts (empty iff minimal)."""
        bad = []
        for n in range(1, self.cap + 1):
            mat = self.complex.diff(n)
            for j, col in mat.columns.items():
                for i, f in col.items():
                    if f.constant_coeff():
                        bad.append((n, i, j))
        return bad

    def element_from_words(self, n: int, combo: dict) -> FreeModuleElement:
        """Element of B_n from a {BarWord: Polynomial} combination."""
        coords = {}
        red = self.quotient.normal_form
        for w, c in combo.items():
            c = red(c)
            if c:
                coords[self.pos[n][w]] = c
        return FreeModuleElement(self.ring, coords)
