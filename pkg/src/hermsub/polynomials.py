"""Vector polynomials and the action of subdivision operators on them.

A vector polynomial is a 1 x r row of polynomials, identified with its
restriction to Z.  The convolution p*v against a finitely supported sequence
is again a polynomial, computable from the jets of v at 0:

    (p*v)(x) = sum_j ((-i)^j / j!) p^(j)(x) v^(j)(0).

Sum rules make specific polynomials eigenvectors of the subdivision operator
with eigenvalues 2^{-j}; this module builds those eigen-polynomials and
decides the polynomial-invariance conditions exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from . import linalg
from .errors import DimensionMismatch, PolyInvarianceViolated
from .jets import Jet, POINT_PI, POINT_ZERO, jet_from_rows, jet_multiply, jet_scale_arg
from .rational import CRat, MINUS_I, ONE, ZERO, cr
from .seq import MatSeq, matseq

MAX_DEGREE = 16

__all__ = [
    "VecPoly",
    "vecpoly",
    "monomial",
    "poly_conv",
    "conv_with_seq",
    "eigen_polys",
    "subdivide_poly",
    "check_poly_invariance",
    "sequence_jet_of_poly",
    "sample_on",
]


@dataclass(frozen=True)
class VecPoly:
    """Row vector of polynomials; coeffs[j] holds the x^j coefficient row."""

    cols: int
    coeffs: tuple  # tuple[tuple[CRat, ...], ...], trimmed at the top degree

    @property
    def degree(self) -> int:
        """Largest j with a nonzero coefficient row; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, j: int):
        if 0 <= j < len(self.coeffs):
            return self.coeffs[j]
        return tuple(ZERO for _ in range(self.cols))

    def eval(self, x):
        x = cr(x)
        acc = [ZERO] * self.cols
        for row in reversed(self.coeffs):
            acc = [a * x + c for a, c in zip(acc, row)]
        return tuple(acc)

    def derivative(self, order: int = 1) -> "VecPoly":
        out = self
        for _ in range(order):
            rows = [
                tuple(c * cr(j) for c in row)
                for j, row in enumerate(out.coeffs)
                if j >= 1
            ]
            out = vecpoly(out.cols, rows)
        return out

    def scale(self, s) -> "VecPoly":
        s = cr(s)
        return vecpoly(self.cols, [tuple(c * s for c in row) for row in self.coeffs])

    def scale_arg(self, s) -> "VecPoly":
        """x |-> p(s x)."""
        s = cr(s)
        return vecpoly(
            self.cols,
            [tuple(c * s**j for c in row) for j, row in enumerate(self.coeffs)],
        )

    def shift_arg(self, tau) -> "VecPoly":
        """x |-> p(x - tau)."""
        tau = cr(tau)
        n = len(self.coeffs)
        rows = [[ZERO] * self.cols for _ in range(n)]
        for j, row in enumerate(self.coeffs):
            for k in range(j + 1):
                w = cr(comb(j, k)) * (-tau) ** (j - k)
                for c in range(self.cols):
                    rows[k][c] = rows[k][c] + w * row[c]
        return vecpoly(self.cols, [tuple(r) for r in rows])

    def __add__(self, other: "VecPoly") -> "VecPoly":
        if self.cols != other.cols:
            raise DimensionMismatch("cannot add polynomials with different widths")
        n = max(len(self.coeffs), len(other.coeffs))
        rows = [
            tuple(a + b for a, b in zip(self.coeff(j), other.coeff(j)))
            for j in range(n)
        ]
        return vecpoly(self.cols, rows)

    def __sub__(self, other: "VecPoly") -> "VecPoly":
        return self + other.scale(-1)


def vecpoly(cols: int, coeffs) -> VecPoly:
    rows = [tuple(cr(x) for x in row) for row in coeffs]
    for row in rows:
        if len(row) != cols:
            raise DimensionMismatch("coefficient row has wrong width")
    while rows and all(not x for x in rows[-1]):
        rows.pop()
    if len(rows) - 1 > MAX_DEGREE:
        raise ValueError(f"polynomial degree exceeds the supported bound {MAX_DEGREE}")
    return VecPoly(cols, tuple(rows))


def monomial(degree: int, cols: int = 1, col: int = 0, normalized: bool = False) -> VecPoly:
    """x^degree (divided by degree! when normalized) in one column."""
    c = CRat(Fraction(1, factorial(degree))) if normalized else ONE
    rows = [tuple(ZERO for _ in range(cols)) for _ in range(degree + 1)]
    rows[degree] = tuple(c if j == col else ZERO for j in range(cols))
    return vecpoly(cols, rows)


def conv_with_seq(q: VecPoly, u: MatSeq) -> VecPoly:
    """(q*u)(x) = sum_j ((-i)^j/j!) q^(j)(x) u^(j)(0) for a 1 x t row q."""
    if q.cols != u.rows:
        raise DimensionMismatch("polynomial width does not match the sequence")
    if q.is_zero():
        return vecpoly(u.cols, [])
    m = q.degree
    jet = u.symbol_jet(POINT_ZERO, m)
    out = vecpoly(u.cols, [])
    deriv = q
    for j in range(m + 1):
        w = MINUS_I**j * CRat(Fraction(1, factorial(j)))
        rows = [
            linalg.mat_mul((row,), jet.derivs[j])[0] for row in deriv.coeffs
        ]
        out = out + vecpoly(u.cols, rows).scale(w)
        deriv = deriv.derivative()
    return out


def poly_conv(p: VecPoly, v: MatSeq) -> VecPoly:
    """Scalar-by-row convolution p*v for a scalar polynomial p and 1 x r v."""
    if p.cols != 1:
        raise DimensionMismatch("poly_conv takes a scalar polynomial")
    return conv_with_seq(p, v)


def sequence_jet_of_poly(q: VecPoly) -> Jet:
    """The jet at 0 of any v with q = ((.)^m / m!) * v, m = deg q.

    Inverts the convolution formula: v^(j)(0) = j! i^j q^(m-j)(0).
    """
    m = q.degree
    if m < 0:
        raise ValueError("the zero polynomial has no generating sequence jet")
    rows = []
    deriv = [q]
    for _ in range(m):
        deriv.append(deriv[-1].derivative())
    for j in range(m + 1):
        w = cr(factorial(j)) * CRat(0, 1) ** j
        rows.append(tuple(w * c for c in deriv[m - j].eval(0)))
    return jet_from_rows(POINT_ZERO, rows)


def eigen_polys(matching: Jet, r: int) -> list[VecPoly]:
    """Eigen-polynomials p_0, ..., p_m of the subdivision operator.

    p_j(x) = sum_{k<=j} ((-i)^k / (k!(j-k)!)) x^{j-k} y^(k)(0) where y is the
    matching filter; deg p_j = j and p_{j-1} = p_j'.
    """
    if matching.point != POINT_ZERO:
        raise ValueError("the matching jet must be based at 0")
    if matching.shape != (1, r):
        raise DimensionMismatch("matching jet is not a 1 x r row jet")
    if linalg.mat_is_zero(matching.derivs[0]):
        raise ValueError("matching jet vanishes at 0")
    out = []
    for j in range(matching.order + 1):
        rows = [[ZERO] * r for _ in range(j + 1)]
        for k in range(j + 1):
            w = MINUS_I**k * CRat(Fraction(1, factorial(k) * factorial(j - k)))
            y = matching.derivs[k][0]
            for c in range(r):
                rows[j - k][c] = rows[j - k][c] + w * y[c]
        out.append(vecpoly(r, [tuple(row) for row in rows]))
    return out


def _pi_condition_ok(vjet: Jet, a: MatSeq, m: int) -> bool:
    """Whether v^(2 xi) a^(xi + pi) = O(|xi|^{m+1})."""
    api = a.symbol_jet(POINT_PI, m)
    prod = jet_multiply(jet_scale_arg(vjet.truncate(m)), Jet(POINT_ZERO, api.derivs))
    return prod.is_zero_through(m)


def subdivide_poly(a: MatSeq, q: VecPoly) -> VecPoly:
    """The polynomial S_a q on Z, via the closed form (q(x/2)) * a.

    Valid only under the invariance condition that the jet of v^(2 xi)
    a^(xi+pi) vanishes through order deg q, where v generates q; otherwise
    the pointwise image of q is not a polynomial sequence and this raises
    PolyInvarianceViolated rather than returning a wrong projection.
    """
    if a.rows != a.cols:
        raise DimensionMismatch("subdivision needs a square mask")
    if q.cols != a.rows:
        raise DimensionMismatch("polynomial width does not match the mask")
    if q.is_zero():
        return q
    m = q.degree
    vjet = sequence_jet_of_poly(q)
    if not _pi_condition_ok(vjet, a, m):
        raise PolyInvarianceViolated(
            "the subdivision image of this polynomial is not a polynomial sequence"
        )
    # the factor 2 of the operator is absorbed when the cosets recombine
    return conv_with_seq(q.scale_arg(Fraction(1, 2)), a)


def check_poly_invariance(a_list, v: MatSeq, m: int) -> list[bool]:
    """Level-by-level polynomial invariance for masks a_1, a_2, ....

    Level n passes iff the order-m jet of v^(2^n xi) a_1^(2^{n-1} xi) ...
    a_n^(xi) vanishes at pi.  Computed exactly by chaining Leibniz products
    of jets at doubled arguments.
    """
    if v.rows != 1:
        raise DimensionMismatch("v must be a row sequence")
    v0 = v.symbol_jet(POINT_ZERO, m)
    if linalg.mat_is_zero(v0.derivs[0]):
        raise ValueError("v must not vanish at 0")
    results = []
    cur = v0  # jet of v_{n-1}^ at 0
    for a in a_list:
        doubled = jet_scale_arg(cur)
        api = a.symbol_jet(POINT_PI, m)
        prod = jet_multiply(doubled, Jet(POINT_ZERO, api.derivs))
        results.append(prod.is_zero_through(m))
        cur = jet_multiply(doubled, a.symbol_jet(POINT_ZERO, m))
    return results


def sample_on(q: VecPoly, lo: int, hi: int) -> MatSeq:
    """Restrict a vector polynomial to the integers lo..hi as a 1 x r sequence."""
    return matseq(1, q.cols, lo, [(q.eval(k),) for k in range(lo, hi + 1)])
