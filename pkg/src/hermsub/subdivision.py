"""The vector subdivision operator and Hermite refinement.

The operator maps v to (S_a v)(j) = 2 sum_k v(k) a(j - 2k); a Hermite scheme
additionally rescales level-n data on the right by D^{-n} with
D = diag(1, 2^{-1}, ..., 2^{1-r}), so the columns track a function and its
derivatives on the dyadic grid 2^{-n} Z.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .errors import DimensionMismatch
from .linalg import Matrix
from .rational import CRat, ZERO, cr
from .seq import MatSeq, convolve, upsample, zero_seq

__all__ = [
    "HermiteData",
    "DyadicSamples",
    "apply_subdivision",
    "iterate_mask",
    "hermite_refine",
    "is_interpolatory",
    "basis_samples",
    "scaling_matrix",
    "level_mask",
]


@dataclass(frozen=True)
class HermiteData:
    """Refinement data w_n = (S_a^n w_0) D^{-n} at a given level."""

    level: int
    values: MatSeq


@dataclass(frozen=True)
class DyadicSamples:
    """Matrix samples on the grid 2^{-level} Z over a contiguous index window.

    values[i] is the sample at abscissa (k0 + i) / 2^level.  For basis and
    cascade data the matrix columns are derivative orders 0..cols-1 and the
    rows are the components of the vector function.
    """

    level: int
    k0: int
    values: tuple  # tuple[Matrix, ...]
    rows: int
    cols: int

    def abscissae(self):
        d = Fraction(1, 2**self.level)
        return tuple((self.k0 + i) * d for i in range(len(self.values)))

    def at_index(self, k: int) -> Matrix:
        i = k - self.k0
        if 0 <= i < len(self.values):
            return self.values[i]
        return linalg.zeros(self.rows, self.cols)

    def at(self, x) -> Matrix:
        """Sample at abscissa x = k 2^{-level}; x must lie on the grid."""
        k = Fraction(x) * 2**self.level
        if k.denominator != 1:
            raise ValueError(f"{x} is not on the level-{self.level} grid")
        return self.at_index(int(k))


def scaling_matrix(r: int, n: int) -> Matrix:
    """D^{-n} = diag(1, 2^n, ..., 2^{(r-1)n}) as an exact matrix."""
    return tuple(
        tuple(CRat(Fraction(2) ** (i * n)) if i == j else ZERO for j in range(r))
        for i in range(r)
    )


def apply_subdivision(a: MatSeq, v: MatSeq) -> MatSeq:
    """(S_a v)(j) = 2 sum_k v(k) a(j - 2k); symbol 2 v^(2 xi) a^(xi)."""
    if v.cols != a.rows:
        raise DimensionMismatch(
            f"data has {v.cols} columns but the mask is {a.rows}x{a.cols}"
        )
    if v.is_zero() or a.is_zero():
        return zero_seq(v.rows, a.cols)
    return convolve(upsample(v, 2), a).scale(2)


def iterate_mask(a: MatSeq, n: int) -> MatSeq:
    """The n-fold mask a_n with symbol a^(2^{n-1} xi) ... a^(2 xi) a^(xi).

    Satisfies S_a^n (delta I_r) = 2^n a_n exactly.
    """
    if n < 1:
        raise ValueError("iterate_mask needs n >= 1")
    out = a
    for level in range(1, n):
        out = convolve(upsample(a, 2**level), out)
    return out


def hermite_refine(a: MatSeq, w0: MatSeq, n: int) -> HermiteData:
    """Level-n Hermite refinement w_n = (S_a^n w_0) D^{-n}, exactly."""
    if a.rows != a.cols:
        raise DimensionMismatch("Hermite refinement needs a square mask")
    w = w0
    for _ in range(n):
        w = apply_subdivision(a, w)
    if n:
        w = w.mul_matrix_right(scaling_matrix(a.cols, n))
    return HermiteData(n, w)


def is_interpolatory(a: MatSeq) -> bool:
    """True iff a(0) = diag(2^{-1}, ..., 2^{-r}) and a(2k) = 0 for k != 0."""
    if a.rows != a.cols:
        raise DimensionMismatch("interpolation check needs a square mask")
    r = a.rows
    want = tuple(
        tuple(CRat(Fraction(1, 2 ** (i + 1))) if i == j else ZERO for j in range(r))
        for i in range(r)
    )
    if a.at(0) != want:
        return False
    sup = a.support()
    if sup is None:
        return False
    lo, hi = sup
    for k in range(lo, hi + 1):
        if k != 0 and k % 2 == 0 and not linalg.mat_is_zero(a.at(k)):
            return False
    return True


def level_mask(a: MatSeq, n: int) -> MatSeq:
    """The level-n one-step mask D^{n-1} a D^{-n} of the non-stationary form."""
    r = a.rows
    left = tuple(
        tuple(CRat(Fraction(1, 2 ** (i * (n - 1)))) if i == j else ZERO for j in range(r))
        for i in range(r)
    )
    return a.mul_matrix_left(left).mul_matrix_right(scaling_matrix(r, n))


def basis_samples(a: MatSeq, n: int, window=None) -> DyadicSamples:
    """Samples 2^n a_n(k) D^{-n} at abscissae k 2^{-n}.

    Column l+1 of the sample matrices approximates the l-th derivative of
    the basis vector function.  The reported window defaults to fsupp(a);
    pass (lo, hi) in abscissa units to widen it.
    """
    if n < 1:
        raise ValueError("basis_samples needs n >= 1")
    an = iterate_mask(a, n)
    d = scaling_matrix(a.rows, n)
    two_n = cr(2**n)
    sup = a.support()
    if window is None:
        if sup is None:
            window = (0, 0)
        else:
            window = sup
    klo = window[0] * 2**n
    khi = window[1] * 2**n
    values = [
        linalg.mat_mul(linalg.mat_scale(an.at(k), two_n), d)
        for k in range(klo, khi + 1)
    ]
    return DyadicSamples(n, klo, tuple(values), a.rows, a.cols)
