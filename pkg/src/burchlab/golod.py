"""Golod detection through minimality of the A-infinity bar resolution.

A module is Golod for Q -> R exactly when the bar resolution built from
minimal A-infinity structures is itself minimal; its ranks then attain the
coefficientwise upper bound P^Q_M(t) / (1 - t (P^Q_R(t) - 1)).  The check
computes both sides independently: unit entries of the assembled bar
differential, and the series expansion against the actual ranks.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .bar import AInfBarOps, BarComplex
from .errors import InternalCheckError
from .groebner import Ideal


@dataclass
class GolodReport:
    golod: bool
    bar_ranks: list
    series: list
    px: list
    py: list
    minimal: bool
    first_unit_entry: tuple | None

    def to_dict(self):
        return {
            "golod": self.golod,
            "barRanks": self.bar_ranks,
            "poincareBound": self.series,
            "PRoverQ": self.px,
            "PMoverQ": self.py,
            "barMinimal": self.minimal,
            "firstUnitEntry": list(self.first_unit_entry) if self.first_unit_entry else None,
        }


def poincare_bound_series(px, py, cap):
    """Coefficients of P_M(t) / (1 - t(P_R(t) - 1)) through degree cap."""
    g = [0] * (cap + 1)
    for d, r in enumerate(px):
        if 1 <= d and d + 1 <= cap:
            g[d + 1] = r
    out = [0] * (cap + 1)
    for n in range(cap + 1):
        acc = py[n] if n < len(py) else 0
        for k in range(2, n + 1):
            acc += g[k] * out[n - k]
        out[n] = acc
    return out


def golod_check(alg, mod, quotient: Ideal, cap: int) -> tuple:
    """Build the A-infinity bar to the cap and test Golodness.

    Returns (GolodReport, BarComplex).  The report's series is computed
    from the minimal resolutions' rank polynomials, independently of the
    bar's own basis enumeration.
    """
    if not alg.complex.is_minimal() or not mod.complex.is_minimal():
        raise InternalCheckError("golod check needs minimal X and Y")
    bar = BarComplex(AInfBarOps(alg, mod), quotient, cap=cap)
    ranks = bar.rank_formula_check()
    px = [alg.complex.rank(n) for n in range(alg.complex.top() + 1)]
    py = [mod.complex.rank(n) for n in range(mod.complex.top() + 1)]
    series = poincare_bound_series(px, py, cap)
    bad = bar.minimality_report()
    minimal = not bad
    report = GolodReport(
        golod=minimal and ranks == series,
        bar_ranks=ranks,
        series=series,
        px=px,
        py=py,
        minimal=minimal,
        first_unit_entry=bad[0] if bad else None,
    )
    return report, bar
