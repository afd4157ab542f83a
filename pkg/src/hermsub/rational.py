"""Exact Gaussian-rational scalars.

Every coefficient in this package is a complex number with rational real and
imaginary parts, so equality of symbols, jets and Laurent coefficients is
decidable.  Floating point enters only in the convergence estimates.
"""

from __future__ import annotations

import math
import re as _re
from fractions import Fraction

__all__ = ["CRat", "cr", "ZERO", "ONE", "I", "MINUS_I"]

_RAT = r"-?\d+(?:/\d+)?"
_COMPLEX_RE = _re.compile(
    rf"^\s*(?P<re>{_RAT})\s*(?:(?P<sign>[+-])\s*(?P<im>\d+(?:/\d+)?)\s*i)?\s*$"
)
_PURE_IM_RE = _re.compile(rf"^\s*(?P<im>{_RAT})\s*i\s*$")


class CRat:
    """A complex number with exact rational real/imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", re if type(re) is Fraction else Fraction(re))
        object.__setattr__(self, "im", im if type(im) is Fraction else Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("CRat is immutable")

    # -- predicates ------------------------------------------------------

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def is_real(self):
        return not self.im

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other):
        other = cr(other)
        return CRat(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = cr(other)
        return CRat(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return cr(other) - self

    def __neg__(self):
        return CRat(-self.re, -self.im)

    def __mul__(self, other):
        other = cr(other)
        # real-only fast path: the bulk of mask arithmetic is real
        if not self.im and not other.im:
            return CRat(self.re * other.re)
        return CRat(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = cr(other)
        if not other:
            raise ZeroDivisionError("division by zero CRat")
        if not self.im and not other.im:
            return CRat(self.re / other.re)
        d = other.re * other.re + other.im * other.im
        return CRat(
            (self.re * other.re + self.im * other.im) / d,
            (self.im * other.re - self.re * other.im) / d,
        )

    def __rtruediv__(self, other):
        return cr(other) / self

    def __pow__(self, n: int):
        if n < 0:
            return (ONE / self) ** (-n)
        out = ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conjugate(self):
        return CRat(self.re, -self.im)

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __abs__(self) -> float:
        if not self.im:
            return float(abs(self.re))
        return math.sqrt(float(self.abs2()))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    # -- comparison / hashing ---------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (CRat, int, Fraction)):
            other = cr(other)
            return self.re == other.re and self.im == other.im
        return NotImplemented

    def __hash__(self):
        return hash((self.re, self.im))

    # -- rendering ---------------------------------------------------------

    def __repr__(self):
        return f"CRat({self.re!r}, {self.im!r})"

    def __str__(self):
        return format_crat(self)


def cr(x) -> CRat:
    """Coerce ints, Fractions or CRats to CRat."""
    if type(x) is CRat:
        return x
    if isinstance(x, CRat):
        return x
    return CRat(x)


ZERO = CRat(0)
ONE = CRat(1)
I = CRat(0, 1)
MINUS_I = CRat(0, -1)


def _fmt_frac(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def format_crat(x: CRat) -> str:
    """Canonical string form: "p/q" or "p/q+r/s i" (sign folded into +/-)."""
    if not x.im:
        return _fmt_frac(x.re)
    sign = "+" if x.im > 0 else "-"
    return f"{_fmt_frac(x.re)}{sign}{_fmt_frac(abs(x.im))} i"


def parse_crat(s: str) -> CRat:
    """Inverse of :func:`format_crat`; also accepts pure-imaginary "r/s i"."""
    m = _PURE_IM_RE.match(s)
    if m:
        return CRat(0, Fraction(m.group("im")))
    m = _COMPLEX_RE.match(s)
    if m is None:
        raise ValueError(f"not a rational complex literal: {s!r}")
    re_part = Fraction(m.group("re"))
    if m.group("im") is None:
        return CRat(re_part)
    im_part = Fraction(m.group("im"))
    if m.group("sign") == "-":
        im_part = -im_part
    return CRat(re_part, im_part)
