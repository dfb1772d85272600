"""Free-module elements and sparse matrices over the polynomial ring.

A FreeModuleElement is a sparse coordinate vector with Polynomial entries.
A PolyMatrix is a sparse column-major matrix carrying integer degree labels
for its target (rows) and source (columns); a homogeneous matrix satisfies
deg(entry[i][j]) = col_degrees[j] - row_degrees[i] on nonzero entries.
"""

from __future__ import annotations

from .ring import Polynomial, PolyRing, mono_deg


class FreeModuleElement:
    """Sparse element of a free module Q^r: coords maps index -> nonzero Polynomial."""

    __slots__ = ("ring", "coords")

    def __init__(self, ring: PolyRing, coords: dict):
        self.ring = ring
        self.coords = coords

    @classmethod
    def zero(cls, ring):
        return cls(ring, {})

    @classmethod
    def basis(cls, ring, i, coeff=None):
        return cls(ring, {i: coeff if coeff is not None else ring.one()})

    def __bool__(self):
        return bool(self.coords)

    def __eq__(self, other):
        return isinstance(other, FreeModuleElement) and self.coords == other.coords

    def __add__(self, other):
        res = dict(self.coords)
        for i, f in other.coords.items():
            g = res.get(i)
            s = f if g is None else g + f
            if s:
                res[i] = s
            else:
                res.pop(i, None)
        return FreeModuleElement(self.ring, res)

    def __sub__(self, other):
        res = dict(self.coords)
        for i, f in other.coords.items():
            g = res.get(i)
            s = -f if g is None else g - f
            if s:
                res[i] = s
            else:
                res.pop(i, None)
        return FreeModuleElement(self.ring, res)

    def __neg__(self):
        return FreeModuleElement(self.ring, {i: -f for i, f in self.coords.items()})

    def scale(self, c: int):
        c %= self.ring.p
        if c == 0:
            return FreeModuleElement(self.ring, {})
        return FreeModuleElement(self.ring, {i: f.scale(c) for i, f in self.coords.items()})

    def mul_poly(self, g: Polynomial):
        if not g:
            return FreeModuleElement(self.ring, {})
        res = {}
        for i, f in self.coords.items():
            prod = f * g
            if prod:
                res[i] = prod
        return FreeModuleElement(self.ring, res)

    def mul_term(self, mono, coeff):
        res = {}
        for i, f in self.coords.items():
            prod = f.mul_term(mono, coeff)
            if prod:
                res[i] = prod
        return FreeModuleElement(self.ring, res)

    def map_coords(self, fn):
        res = {}
        for i, f in self.coords.items():
            g = fn(f)
            if g:
                res[i] = g
        return FreeModuleElement(self.ring, res)

    def degree(self, basis_degrees) -> int:
        """Degree of a homogeneous element given the basis degree labels; -1 if zero."""
        degs = set()
        for i, f in self.coords.items():
            degs.update(mono_deg(m) + basis_degrees[i] for m in f.terms)
        if not degs:
            return -1
        if len(degs) > 1:
            raise ValueError(f"inhomogeneous element, degrees {sorted(degs)}")
        return degs.pop()

    def is_reduced_nonzero_mod_max_ideal(self) -> bool:
        """True iff some coordinate has a nonzero constant term (element is a basis part)."""
        return any(f.constant_coeff() for f in self.coords.values())

    def __repr__(self):
        if not self.coords:
            return "0"
        return " + ".join(f"({f})*e{i}" for i, f in sorted(self.coords.items()))


class PolyMatrix:
    """Sparse matrix over Q, column-major, with degree labels on both sides."""

    __slots__ = ("ring", "rows", "cols", "row_degrees", "col_degrees", "columns")

    def __init__(self, ring, row_degrees, col_degrees, entries=None):
        self.ring = ring
        self.row_degrees = list(row_degrees)
        self.col_degrees = list(col_degrees)
        self.rows = len(self.row_degrees)
        self.cols = len(self.col_degrees)
        self.columns = {}  # j -> {i -> Polynomial}
        if entries:
            for (i, j), f in entries.items():
                if f:
                    self.columns.setdefault(j, {})[i] = f

    @classmethod
    def from_columns(cls, ring, row_degrees, columns, col_degrees):
        """columns: list of FreeModuleElement (or coord dicts)."""
        m = cls(ring, row_degrees, col_degrees)
        for j, col in enumerate(columns):
            coords = col.coords if isinstance(col, FreeModuleElement) else col
            if coords:
                m.columns[j] = dict(coords)
        return m

    @classmethod
    def identity(cls, ring, degrees):
        m = cls(ring, degrees, degrees)
        one = ring.one()
        for i in range(len(m.row_degrees)):
            m.columns[i] = {i: one}
        return m

    @classmethod
    def zero(cls, ring, row_degrees, col_degrees):
        return cls(ring, row_degrees, col_degrees)

    def entry(self, i, j) -> Polynomial:
        col = self.columns.get(j)
        if col is None:
            return self.ring.zero()
        return col.get(i, self.ring.zero())

    def set_entry(self, i, j, f: Polynomial):
        if f:
            self.columns.setdefault(j, {})[i] = f
        else:
            col = self.columns.get(j)
            if col is not None:
                col.pop(i, None)
                if not col:
                    del self.columns[j]

    def column(self, j) -> FreeModuleElement:
        return FreeModuleElement(self.ring, dict(self.columns.get(j, {})))

    def nnz(self) -> int:
        return sum(len(c) for c in self.columns.values())

    def is_zero(self) -> bool:
        return not self.columns

    def apply(self, v: FreeModuleElement) -> FreeModuleElement:
        """Matrix-vector product; v lives in the source free module."""
        res = {}
        for j, f in v.coords.items():
            if j >= self.cols:
                raise ValueError(f"coordinate {j} outside source rank {self.cols}")
            col = self.columns.get(j)
            if col is None:
                continue
            for i, g in col.items():
                prod = g * f
                if not prod:
                    continue
                cur = res.get(i)
                s = prod if cur is None else cur + prod
                if s:
                    res[i] = s
                else:
                    res.pop(i, None)
        return FreeModuleElement(self.ring, res)

    def compose(self, other: "PolyMatrix") -> "PolyMatrix":
        """self o other (self applied after other)."""
        if self.cols != other.rows:
            raise ValueError(f"rank mismatch: {self.cols} vs {other.rows}")
        out = PolyMatrix(self.ring, self.row_degrees, other.col_degrees)
        for j, col in other.columns.items():
            acc = {}
            for k, f in col.items():
                mycol = self.columns.get(k)
                if mycol is None:
                    continue
                for i, g in mycol.items():
                    prod = g * f
                    if not prod:
                        continue
                    cur = acc.get(i)
                    s = prod if cur is None else cur + prod
                    if s:
                        acc[i] = s
                    else:
                        acc.pop(i, None)
            if acc:
                out.columns[j] = acc
        return out

    def add(self, other: "PolyMatrix") -> "PolyMatrix":
        out = PolyMatrix(self.ring, self.row_degrees, self.col_degrees)
        for j, col in self.columns.items():
            out.columns[j] = dict(col)
        for j, col in other.columns.items():
            mine = out.columns.setdefault(j, {})
            for i, f in col.items():
                cur = mine.get(i)
                s = f if cur is None else cur + f
                if s:
                    mine[i] = s
                else:
                    mine.pop(i, None)
            if not mine:
                del out.columns[j]
        return out

    def negate(self) -> "PolyMatrix":
        out = PolyMatrix(self.ring, self.row_degrees, self.col_degrees)
        for j, col in self.columns.items():
            out.columns[j] = {i: -f for i, f in col.items()}
        return out

    def map_entries(self, fn) -> "PolyMatrix":
        out = PolyMatrix(self.ring, self.row_degrees, self.col_degrees)
        for j, col in self.columns.items():
            newcol = {}
            for i, f in col.items():
                g = fn(f)
                if g:
                    newcol[i] = g
            if newcol:
                out.columns[j] = newcol
        return out

    def check_homogeneous(self):
        for j, col in self.columns.items():
            for i, f in col.items():
                want = self.col_degrees[j] - self.row_degrees[i]
                for m in f.terms:
                    if mono_deg(m) != want:
                        raise ValueError(
                            f"entry ({i},{j}) has a term of degree {mono_deg(m)}, expected {want}"
                        )

    def submatrix(self, keep_rows, keep_cols) -> "PolyMatrix":
        rmap = {i: a for a, i in enumerate(keep_rows)}
        out = PolyMatrix(
            self.ring,
            [self.row_degrees[i] for i in keep_rows],
            [self.col_degrees[j] for j in keep_cols],
        )
        for a, j in enumerate(keep_cols):
            col = self.columns.get(j)
            if not col:
                continue
            newcol = {rmap[i]: f for i, f in col.items() if i in rmap}
            if newcol:
                out.columns[a] = newcol
        return out

    def copy(self) -> "PolyMatrix":
        out = PolyMatrix(self.ring, self.row_degrees, self.col_degrees)
        for j, col in self.columns.items():
            out.columns[j] = dict(col)
        return out

    def __repr__(self):
        return f"PolyMatrix({self.rows}x{self.cols}, nnz={self.nnz()})"
