"""Jets of symbols at 0 and pi.

A jet stores the derivatives f^(0)(p), ..., f^(m)(p) of a trigonometric
polynomial matrix at p in {0, pi}.  Every O(|xi|^{m+1}) statement in the
mask calculus is a finite list of jet equalities, so this module is where
those statements become decidable.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from . import linalg
from .errors import DimensionMismatch, SupportTooShort
from .linalg import Matrix
from .rational import CRat, ONE, ZERO, cr

POINT_ZERO = "0"
POINT_PI = "pi"

__all__ = [
    "Jet",
    "POINT_ZERO",
    "POINT_PI",
    "jet_from_rows",
    "jet_multiply",
    "jet_scale_arg",
    "jet_reciprocal",
    "jet_divide",
    "jet_interpolate",
    "default_interp_support",
]


@dataclass(frozen=True)
class Jet:
    point: str
    derivs: tuple  # tuple[Matrix, ...], entry j = f^(j)(point)

    def __post_init__(self):
        if self.point not in (POINT_ZERO, POINT_PI):
            raise ValueError("jet point must be 0 or pi")
        if not self.derivs:
            raise ValueError("a jet needs at least the order-0 entry")
        s = linalg.shape(self.derivs[0])
        for m in self.derivs:
            if linalg.shape(m) != s:
                raise DimensionMismatch("jet entries must share a shape")

    @property
    def order(self) -> int:
        return len(self.derivs) - 1

    @property
    def shape(self):
        return linalg.shape(self.derivs[0])

    def truncate(self, order: int) -> "Jet":
        if order > self.order:
            raise ValueError("cannot extend a jet by truncation")
        return Jet(self.point, self.derivs[: order + 1])

    def entry(self, j: int) -> Matrix:
        return self.derivs[j]

    def is_zero_through(self, order: int | None = None) -> bool:
        upto = self.order if order is None else order
        return all(linalg.mat_is_zero(m) for m in self.derivs[: upto + 1])

    def agrees_with(self, other: "Jet", order: int | None = None) -> bool:
        upto = min(self.order, other.order) if order is None else order
        if self.point != other.point:
            return False
        return all(self.derivs[j] == other.derivs[j] for j in range(upto + 1))


def jet_from_rows(point: str, rows) -> Jet:
    """Build a jet of a 1 x r symbol from a list of row vectors."""
    return Jet(point, tuple(linalg.row_vec(r) for r in rows))


def jet_multiply(f: Jet, g: Jet, order: int | None = None) -> Jet:
    """Leibniz product jet: (fg)^(j) = sum_k C(j,k) f^(k) g^(j-k)."""
    upto = min(f.order, g.order) if order is None else order
    if upto > min(f.order, g.order):
        raise ValueError("product jet order exceeds the factors' orders")
    derivs = []
    for j in range(upto + 1):
        acc = linalg.zeros(f.shape[0], g.shape[1])
        for k in range(j + 1):
            term = linalg.mat_mul(f.derivs[k], g.derivs[j - k])
            acc = linalg.mat_add(acc, linalg.mat_scale(term, comb(j, k)))
        derivs.append(acc)
    return Jet(f.point, tuple(derivs))


def jet_scale_arg(f: Jet, s=2) -> Jet:
    """Jet of xi |-> f(s xi) at 0 (chain rule: multiply entry j by s^j).

    Only jets based at 0 rescale this way; f(2 xi) at xi = pi reads the jet
    of f at 0 because symbols are 2pi-periodic, which is exactly how callers
    use this helper.
    """
    if f.point != POINT_ZERO:
        raise ValueError("argument scaling is defined for jets at 0")
    return Jet(
        POINT_ZERO,
        tuple(linalg.mat_scale(m, cr(s) ** j) for j, m in enumerate(f.derivs)),
    )


def jet_reciprocal(f: Jet) -> Jet:
    """Jet of 1/f for a scalar jet with f(p) != 0."""
    if f.shape != (1, 1):
        raise DimensionMismatch("reciprocal of a non-scalar jet")
    f0 = f.derivs[0][0][0]
    if not f0:
        raise ZeroDivisionError("reciprocal of a jet vanishing at its base point")
    out = [ONE / f0]
    for j in range(1, f.order + 1):
        s = ZERO
        for k in range(1, j + 1):
            s = s + cr(comb(j, k)) * f.derivs[k][0][0] * out[j - k]
        out.append(-s / f0)
    return Jet(f.point, tuple(((x,),) for x in out))


def jet_divide(num: Jet, den: Jet, order: int | None = None) -> Jet:
    """Jet of num/den for scalar jets, den nonzero at the base point."""
    upto = min(num.order, den.order) if order is None else order
    return jet_multiply(num.truncate(upto), jet_reciprocal(den.truncate(upto)))


def default_interp_support(order: int):
    """Centered integer interval of length order+1, ties broken leftward."""
    n = order + 1
    lo = -(n // 2)
    return (lo, lo + n - 1)


def jet_interpolate(target: Jet, support=None):
    """Scalar sequence on `support` whose symbol jet at 0 equals `target`.

    Solves the Vandermonde-type system sum_k c(k) (-ik)^j = target[j] over
    the first order+1 points of the interval; always solvable for distinct
    integers.  Extra points in a longer interval carry zero coefficients.
    """
    from .seq import matseq

    if target.point != POINT_ZERO:
        raise ValueError("jet interpolation targets jets at 0")
    if target.shape != (1, 1):
        raise DimensionMismatch("jet interpolation is scalar")
    m = target.order
    if support is None:
        support = default_interp_support(m)
    lo, hi = support
    if hi - lo + 1 < m + 1:
        raise SupportTooShort(
            f"support [{lo}, {hi}] has {hi - lo + 1} points; need {m + 1}"
        )
    pts = list(range(lo, lo + m + 1))
    a = tuple(tuple(CRat(0, -k) ** j for k in pts) for j in range(m + 1))
    b = tuple((target.derivs[j][0][0],) for j in range(m + 1))
    sol = linalg.solve_general(a, b)
    assert sol is not None  # Vandermonde with distinct nodes
    return matseq(1, 1, lo, [((row[0],),) for row in sol])
