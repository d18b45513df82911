"""Closed-form lower-bound formulas and the parameter trade-off behind them.

Rational exponents are kept as :class:`~fractions.Fraction`, irrational
stretch constants as :class:`~hybrid_oracles.surd.Surd`; floats appear only
where a real power has to be taken or a table is printed.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Optional

from .lowerbound import STATEFUL_TABLE, stateless_coefficient
from .surd import Surd, _frac


class UnsupportedGirth(ValueError):
    def __init__(self, ell: int, fallback: Optional[int] = None):
        msg = f"no density exponent for girth {ell}"
        if fallback is not None:
            msg += f"; use girth {fallback} instead (its graphs also have girth >= {ell})"
        super().__init__(msg)
        self.ell = ell
        self.fallback = fallback


class EntropyConvention(str, Enum):
    STANDARD = "standard"  # one bit per fair coin
    HALF = "half"  # |X|/2


class TableProblem(str, Enum):
    ORACLE = "oracle"
    STATELESS = "stateless"
    STATEFUL = "stateful"
    UNWEIGHTED = "unweighted"


@dataclass(frozen=True)
class BoundQuery:
    n: int
    gamma: int
    p: Fraction = Fraction(1)
    H: Fraction = Fraction(0)
    y: Fraction = Fraction(0)
    h: Fraction = Fraction(0)
    delta: Optional[Fraction] = None
    ell: Optional[int] = None
    entropy_convention: EntropyConvention = EntropyConvention.STANDARD

    def __post_init__(self):
        for name in ("p", "H", "y", "h"):
            object.__setattr__(self, name, _frac(getattr(self, name)))
        if self.delta is not None:
            object.__setattr__(self, "delta", _frac(self.delta))
        if self.n < 1 or self.gamma < 1:
            raise ValueError("n and gamma must be positive")
        if not 0 < self.p <= 1:
            raise ValueError(f"p must lie in (0, 1], got {self.p}")
        if min(self.H, self.y, self.h) < 0:
            raise ValueError("H, y and h must be nonnegative")


@dataclass
class BoundReport:
    rounds_lb: float
    k_opt: Optional[float] = None
    h_opt: Optional[float] = None
    stretch: Optional[float] = None
    label_cap_bits: Optional[float] = None
    notes: list = field(default_factory=list)


def node_comm_bound(q: BoundQuery) -> Fraction:
    """Rounds needed to move H bits of entropy across a cut of hop distance h.

    max(0, min((p*H - 1 - y) / (n*gamma), h)); y bits are handed over for free.
    """
    value = min((q.p * q.H - 1 - q.y) / (q.n * q.gamma), q.h)
    return max(Fraction(0), value)


def rounds_exponent(delta) -> Fraction:
    """Exponent of n in the round bound n^(d/(2+d)) / gamma^(1/(2+d))."""
    d = _frac(delta)
    return d / (2 + d)


def gamma_exponent(delta) -> Fraction:
    d = _frac(delta)
    return 1 / (2 + d)


def label_exponent(delta) -> Fraction:
    """Exponent of n in the admissible label size."""
    d = _frac(delta)
    return 2 * d / (2 + d)


def optimize_tradeoff(n: float, gamma: float, delta) -> tuple:
    """Balance k against h = n / k: k^(2+delta) = n^2 * gamma.

    Returns ``(k_opt, h_opt, rounds_lb)``; the round bound equals h_opt.
    """
    d = float(_frac(delta))
    if d <= 0:
        raise ValueError(f"delta must be positive, got {delta}")
    if n < 2 or gamma < 1:
        raise ValueError("need n >= 2 and gamma >= 1")
    k = math.exp((2 * math.log(n) + math.log(gamma)) / (2 + d))
    h = n / k
    return k, h, h


def girth_density(ell: int) -> Fraction:
    """delta with Theta(k^(1+delta)) edges on 2k nodes at girth ell."""
    if ell < 4 or ell % 2:
        raise ValueError(f"ell must be even and >= 4, got {ell}")
    if ell in (4, 6, 8, 12):
        return Fraction(2, ell - 2)
    if ell == 10:
        raise UnsupportedGirth(10, fallback=12)
    if ell % 4 == 2:
        return Fraction(4, 3 * ell - 10)
    return Fraction(4, 3 * ell - 12)


def density_for_instance(ell: int) -> Fraction:
    """girth_density with girth 10 served by girth-12 graphs."""
    try:
        return girth_density(ell)
    except UnsupportedGirth as err:
        return girth_density(err.fallback)


@dataclass(frozen=True)
class StretchRow:
    problem: TableProblem
    ell: Optional[int]
    stretch: Surd  # supremum; the bound holds for stretch - epsilon
    minus_epsilon: bool
    rounds_exponent: Fraction
    label_exponent: Fraction
    gamma_exponent: Fraction

    def stretch_text(self) -> str:
        if not self.minus_epsilon:
            return "exact"
        return f"{self.stretch} - eps"

    def as_record(self) -> dict:
        return {
            "problem": self.problem.value,
            "ell": "" if self.ell is None else self.ell,
            "stretch": self.stretch_text(),
            "stretch_value": f"{float(self.stretch):.6f}",
            "rounds_exponent": str(self.rounds_exponent),
            "gamma_exponent": str(self.gamma_exponent),
            "label_exponent": str(self.label_exponent),
        }


_GIRTHS = {
    TableProblem.ORACLE: (4, 6, 8, 12),
    TableProblem.STATELESS: (4, 6, 8),
    TableProblem.STATEFUL: (4, 6, 8, 10),
}


def _row(problem: TableProblem, ell: Optional[int], stretch: Surd, minus_eps: bool, delta: Fraction) -> StretchRow:
    return StretchRow(problem, ell, stretch, minus_eps, rounds_exponent(delta),
                      label_exponent(delta), gamma_exponent(delta))


def stretch_table(problem) -> list:
    """Rows (stretch, rounds exponent, label exponent) of the lower-bound summary."""
    problem = TableProblem(problem)
    if problem is TableProblem.UNWEIGHTED:
        return [_row(problem, None, Surd(1), False, Fraction(1))]
    rows = []
    for ell in _GIRTHS[problem]:
        if problem is TableProblem.ORACLE:
            stretch = Surd(ell - 1)
        elif problem is TableProblem.STATELESS:
            stretch = stateless_coefficient(ell)
        else:
            stretch = STATEFUL_TABLE[ell][3]
        rows.append(_row(problem, ell, stretch, True, density_for_instance(ell)))
    return rows


def full_table() -> list:
    return [row for p in TableProblem for row in stretch_table(p)]


def label_cap(n: float, gamma: float, delta, c: float = 1.0) -> float:
    """Label size below which the round bound still applies: c * n^(2d/(2+d)) * gamma^(d/(2+d))."""
    d = _frac(delta)
    if d <= 0:
        raise ValueError(f"delta must be positive, got {delta}")
    return c * n ** float(label_exponent(d)) * gamma ** float(d / (2 + d))


def entropy_of_planted(inst, convention=EntropyConvention.STANDARD) -> Fraction:
    """Entropy of the planted fair-coin string: |X| bits, or |X|/2 under HALF."""
    m = len(inst.X)
    if EntropyConvention(convention) is EntropyConvention.HALF:
        return Fraction(m, 2)
    return Fraction(m)


def entropy_report(inst) -> dict:
    return {c.value: entropy_of_planted(inst, c) for c in EntropyConvention}


def information_consistent(cut_bits: int, label_bits: int, H, p=1) -> bool:
    """Did at least p*H - 1 bits reach the far side (through the cut or in labels)?"""
    return cut_bits + label_bits >= _frac(p) * _frac(H) - 1


def table_csv(rows: list) -> str:
    buf = io.StringIO()
    fields = ["problem", "ell", "stretch", "stretch_value", "rounds_exponent", "gamma_exponent", "label_exponent"]
    w = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow(r.as_record())
    return buf.getvalue()


def table_text(rows: list) -> str:
    cols = ["problem", "ell", "stretch", "stretch_value", "rounds_exponent", "label_exponent"]
    recs = [r.as_record() for r in rows]
    widths = {c: max(len(c), *(len(str(rec[c])) for rec in recs)) for c in cols}
    lines = ["  ".join(c.ljust(widths[c]) for c in cols)]
    lines.append("  ".join("-" * widths[c] for c in cols))
    for rec in recs:
        lines.append("  ".join(str(rec[c]).ljust(widths[c]) for c in cols))
    return "\n".join(lines) + "\n"


__all__ = [
    "BoundQuery",
    "BoundReport",
    "EntropyConvention",
    "StretchRow",
    "TableProblem",
    "UnsupportedGirth",
    "density_for_instance",
    "entropy_of_planted",
    "entropy_report",
    "full_table",
    "gamma_exponent",
    "girth_density",
    "information_consistent",
    "label_cap",
    "label_exponent",
    "node_comm_bound",
    "optimize_tradeoff",
    "rounds_exponent",
    "stretch_table",
    "table_csv",
    "table_text",
]
