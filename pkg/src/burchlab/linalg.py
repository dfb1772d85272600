"""Sparse Gaussian elimination over F_p.

Vectors are dicts {index: nonzero residue}.  The pivot of a vector is its
minimal index; pivot vectors are kept monic.  An optional representation
track records each pivot as a combination of the originally inserted
vectors, which yields kernels, lifts and membership certificates.
"""

from __future__ import annotations


def vec_axpy(res: dict, c: int, src: dict, p: int):
    """res -= c * src  (in place, mod p)."""
    for k, v in src.items():
        w = (res.get(k, 0) - c * v) % p
        if w:
            res[k] = w
        else:
            res.pop(k, None)


class SparseEchelon:
    """Incremental echelon form of a family of sparse F_p vectors."""

    __slots__ = ("p", "pivots", "reps", "track")

    def __init__(self, p: int, track_reps: bool = False):
        self.p = p
        self.pivots = {}  # pivot index -> monic vector
        self.reps = {} if track_reps else None  # pivot index -> combination of inserted vecs
        self.track = track_reps

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, vec: dict, rep: dict | None = None):
        """Reduce vec against the current pivots; returns (residual, rep_residual).

        rep_residual satisfies: original vec = residual + sum(rep_used * pivots),
        expressed in inserted-vector coordinates when tracking is on.
        """
        p = self.p
        res = dict(vec)
        rrep = dict(rep) if rep is not None else ({} if self.track else None)
        while res:
            m = min(res)
            piv = self.pivots.get(m)
            if piv is None:
                break
            c = res[m]
            vec_axpy(res, c, piv, p)
            if self.track:
                vec_axpy(rrep, c, self.reps[m], p)
        return res, rrep

    def _full_reduce(self, res: dict, rrep):
        """Eliminate every pivot index present, not just the leading one."""
        p = self.p
        while True:
            hit = None
            for m in res:
                if m in self.pivots:
                    hit = m
                    break
            if hit is None:
                return res, rrep
            c = res[hit]
            vec_axpy(res, c, self.pivots[hit], p)
            if self.track:
                vec_axpy(rrep, c, self.reps[hit], p)

    def insert(self, vec: dict, rep: dict | None = None):
        """Insert a vector; returns (pivot, residual_rep).

        pivot is None when the vector reduced to zero, in which case
        residual_rep (with tracking) is a linear dependence certificate:
        vec = sum(residual_rep * inserted vectors)... i.e. vec minus that
        combination of previously inserted vectors vanishes.
        """
        if self.track and rep is None:
            rep = {}
        res, rrep = self.reduce(vec, rep)
        if not res:
            return None, rrep
        m = min(res)
        c = res[m]
        if c != 1:
            inv = pow(c, self.p - 2, self.p)
            res = {k: (v * inv) % self.p for k, v in res.items()}
            if self.track:
                rrep = {k: (v * inv) % self.p for k, v in rrep.items()}
        self.pivots[m] = res
        if self.track:
            self.reps[m] = rrep
        return m, rrep

    def contains(self, vec: dict) -> bool:
        res, _ = self.reduce(vec)
        return not res

    def solve(self, vec: dict):
        """Express vec as a combination of the inserted vectors, or None.

        Returns coeffs with vec = sum(coeffs[i] * inserted_i) when solvable.
        """
        assert self.track
        res, rrep = self.reduce(vec, {})
        if res:
            return None
        # reduce() tracked rep with the convention residual = vec - sum(rep*inserted)
        return {k: (-v) % self.p for k, v in rrep.items()}


def kernel_basis(columns, p: int):
    """Kernel of the map sending unit j to columns[j].

    columns: list of sparse dict vectors.  Returns (rank, kernel) where
    kernel is a list of sparse coefficient dicts {j: c} with
    sum(c * columns[j]) = 0, one per dependent column, in column order.
    """
    ech = SparseEchelon(p, track_reps=True)
    kernel = []
    for j, col in enumerate(columns):
        piv, rrep = ech.insert(dict(col), {j: 1})
        if piv is None:
            # rrep is exactly the dependence: sum(rrep * cols) = 0
            kernel.append(rrep)
    return ech.rank, kernel


def rank_of(columns, p: int) -> int:
    ech = SparseEchelon(p)
    for col in columns:
        ech.insert(dict(col))
    return ech.rank
