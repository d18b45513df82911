"""Exact numbers of the form ``p + q * sqrt(r)`` with rational p, q.

The stretch constants of the lower bounds (sqrt 2, 1 + sqrt 2,
(3 + sqrt 17) / 4, ...) are of this form, and the inequality systems they
enter are strict, so comparisons have to be exact.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, float):
        # decimal literals such as 0.1 are meant, not their binary expansion
        return Fraction(repr(x))
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot convert {x!r} to an exact rational")


def _sign(p: Fraction, q: Fraction, r: int) -> int:
    """Sign of p + q*sqrt(r)."""
    if q == 0 or r == 0:
        return (p > 0) - (p < 0)
    sq = 1 if q > 0 else -1
    if p == 0:
        return sq
    sp = 1 if p > 0 else -1
    if sp == sq:
        return sp
    lhs, rhs = p * p, q * q * r
    if lhs == rhs:
        return 0
    return sp if lhs > rhs else sq


class Surd:
    __slots__ = ("p", "q", "r")

    def __init__(self, p=0, q=0, r: int = 0):
        self.p = _frac(p)
        self.q = _frac(q)
        r = int(r)
        if r < 0:
            raise ValueError("negative radicand")
        root = math.isqrt(r)
        if root * root == r:
            self.p += self.q * root
            self.q = Fraction(0)
            r = 0
        if self.q == 0:
            r = 0
        self.r = r

    @classmethod
    def sqrt(cls, r: int) -> "Surd":
        return cls(0, 1, r)

    def _coerce(self, other) -> "Surd":
        if isinstance(other, Surd):
            if other.r and self.r and other.r != self.r:
                raise ValueError(f"mixed radicands sqrt({self.r}) and sqrt({other.r})")
            return other
        return Surd(_frac(other))

    def _radicand(self, other: "Surd") -> int:
        return self.r or other.r

    def __add__(self, other):
        o = self._coerce(other)
        return Surd(self.p + o.p, self.q + o.q, self._radicand(o))

    __radd__ = __add__

    def __neg__(self):
        return Surd(-self.p, -self.q, self.r)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        r = self._radicand(o)
        return Surd(self.p * o.p + self.q * o.q * r, self.p * o.q + self.q * o.p, r)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o == 0:
            raise ZeroDivisionError("Surd division by zero")
        # multiply through by the conjugate; the denominator becomes rational
        norm = o.p * o.p - o.q * o.q * o.r
        num = self * Surd(o.p, -o.q, o.r)
        return Surd(num.p / norm, num.q / norm, num.r)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def sign(self) -> int:
        return _sign(self.p, self.q, self.r)

    def _cmp(self, other) -> int:
        return (self - self._coerce(other)).sign()

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __eq__(self, other):
        try:
            return self._cmp(other) == 0
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash(self.p) if not self.q else hash((self.p, self.q, self.r))

    def __float__(self):
        return float(self.p) + float(self.q) * math.sqrt(self.r)

    def floor_times(self, t: int) -> int:
        """floor(self * t), exactly."""
        x = self * t
        lo = math.floor(float(x)) - 1
        while Surd(lo) > x:
            lo -= 1
        while Surd(lo + 1) <= x:
            lo += 1
        return lo

    def round_times(self, t: int) -> int:
        """Nearest integer to self * t (halves round up)."""
        return (self * t + Fraction(1, 2)).floor_times(1)

    def ceil_times(self, t: int) -> int:
        f = self.floor_times(t)
        return f if Surd(f) == self * t else f + 1

    def __repr__(self):
        if not self.q:
            return f"Surd({self.p})"
        return f"Surd({self.p} + {self.q}*sqrt({self.r}))"

    def __str__(self):
        if not self.q:
            return str(self.p)
        q = "" if self.q == 1 else f"{self.q}*"
        base = f"{q}sqrt({self.r})"
        return base if not self.p else f"{self.p} + {base}"
