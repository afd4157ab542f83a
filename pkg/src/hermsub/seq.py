"""Finitely supported matrix-valued sequences and their symbol algebra.

A :class:`MatSeq` stores a sequence a: Z -> C^{s x r} with finite support as a
contiguous block of exact matrices.  Its symbol is the Laurent-polynomial
matrix a^(xi) = sum_k a(k) e^{-ik xi}; convolution of sequences multiplies
symbols, and all identities here are coefficientwise-exact.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import linalg
from .errors import DimensionMismatch, DivisionNotExact, NotStronglyInvertible
from .linalg import Matrix
from .rational import CRat, ONE, ZERO, cr

__all__ = [
    "MatSeq",
    "matseq",
    "zero_seq",
    "dirac",
    "scalar_seq",
    "convolve",
    "coset",
    "interleave",
    "upsample",
    "difference_power",
    "nabla_power",
    "strong_inverse",
    "symbol_det",
    "exact_divide",
    "from_entries",
    "block_entries",
]


@dataclass(frozen=True)
class MatSeq:
    rows: int
    cols: int
    offset: int
    coeffs: tuple  # tuple[Matrix, ...], trimmed at both ends

    def is_zero(self) -> bool:
        return not self.coeffs

    def support(self):
        """(L, R) with a(L), a(R) nonzero, or None for the zero sequence."""
        if not self.coeffs:
            return None
        return (self.offset, self.offset + len(self.coeffs) - 1)

    def at(self, k: int) -> Matrix:
        i = k - self.offset
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return linalg.zeros(self.rows, self.cols)

    def nonzero(self):
        """Yield (index, matrix) for every stored nonzero coefficient."""
        for i, m in enumerate(self.coeffs):
            if not linalg.mat_is_zero(m):
                yield self.offset + i, m

    def shift(self, k: int) -> "MatSeq":
        if not self.coeffs:
            return self
        return MatSeq(self.rows, self.cols, self.offset + k, self.coeffs)

    def __add__(self, other: "MatSeq") -> "MatSeq":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch("cannot add sequences of different shape")
        if not self.coeffs:
            return other
        if not other.coeffs:
            return self
        lo = min(self.offset, other.offset)
        hi = max(self.offset + len(self.coeffs), other.offset + len(other.coeffs))
        coeffs = [
            linalg.mat_add(self.at(k), other.at(k)) for k in range(lo, hi)
        ]
        return matseq(self.rows, self.cols, lo, coeffs)

    def __sub__(self, other: "MatSeq") -> "MatSeq":
        return self + other.scale(-1)

    def __neg__(self) -> "MatSeq":
        return self.scale(-1)

    def scale(self, s) -> "MatSeq":
        s = cr(s)
        if not s:
            return zero_seq(self.rows, self.cols)
        return MatSeq(
            self.rows,
            self.cols,
            self.offset,
            tuple(linalg.mat_scale(m, s) for m in self.coeffs),
        )

    def mul_matrix_left(self, m: Matrix) -> "MatSeq":
        rows = len(m)
        out = [linalg.mat_mul(m, c) for c in self.coeffs]
        return matseq(rows, self.cols, self.offset, out)

    def mul_matrix_right(self, m: Matrix) -> "MatSeq":
        cols = len(m[0]) if m else 0
        out = [linalg.mat_mul(c, m) for c in self.coeffs]
        return matseq(self.rows, cols, self.offset, out)

    def entry(self, i: int, j: int) -> "MatSeq":
        """The (i, j) scalar entry as a 1x1 sequence."""
        return matseq(1, 1, self.offset, [((c[i][j],),) for c in self.coeffs])

    def symbol_jet(self, point, order: int):
        from .jets import Jet, POINT_ZERO, POINT_PI

        point = _normalize_point(point)
        derivs = []
        for j in range(order + 1):
            acc = [[ZERO] * self.cols for _ in range(self.rows)]
            for k, m in self.nonzero():
                w = CRat(0, -k) ** j  # (-ik)^j
                if point == POINT_PI and k % 2:
                    w = -w
                for i in range(self.rows):
                    mi = m[i]
                    ai = acc[i]
                    for c in range(self.cols):
                        if mi[c]:
                            ai[c] = ai[c] + w * mi[c]
            derivs.append(tuple(tuple(row) for row in acc))
        return Jet(point, tuple(derivs))


def _normalize_point(point):
    from .jets import POINT_ZERO, POINT_PI

    if point in (POINT_ZERO, POINT_PI):
        return point
    if point == 0:
        return POINT_ZERO
    raise ValueError(f"symbol jets are supported at 0 and pi only, got {point!r}")


def matseq(rows: int, cols: int, offset: int, coeffs) -> MatSeq:
    """Build a MatSeq, trimming zero matrices at both ends (canonical form)."""
    coeffs = [tuple(tuple(cr(x) for x in row) for row in m) for m in coeffs]
    for m in coeffs:
        if len(m) != rows or any(len(row) != cols for row in m):
            raise DimensionMismatch("coefficient matrix has wrong shape")
    lo = 0
    hi = len(coeffs)
    while lo < hi and linalg.mat_is_zero(coeffs[lo]):
        lo += 1
    while hi > lo and linalg.mat_is_zero(coeffs[hi - 1]):
        hi -= 1
    if lo == hi:
        return MatSeq(rows, cols, 0, ())
    return MatSeq(rows, cols, offset + lo, tuple(coeffs[lo:hi]))


def zero_seq(rows: int, cols: int) -> MatSeq:
    return MatSeq(rows, cols, 0, ())


def dirac(r: int) -> MatSeq:
    """The unit delta * I_r."""
    return MatSeq(r, r, 0, (linalg.identity(r),))


def scalar_seq(offset: int, values) -> MatSeq:
    """A 1x1 sequence from a list of scalars starting at `offset`."""
    return matseq(1, 1, offset, [((cr(v),),) for v in values])


def from_entries(entries) -> MatSeq:
    """Assemble an r x c MatSeq from a grid of 1x1 sequences."""
    rows = len(entries)
    cols = len(entries[0])
    supports = [e.support() for row in entries for e in row if not e.is_zero()]
    if not supports:
        return zero_seq(rows, cols)
    lo = min(s[0] for s in supports)
    hi = max(s[1] for s in supports)
    coeffs = [
        tuple(tuple(entries[i][j].at(k)[0][0] for j in range(cols)) for i in range(rows))
        for k in range(lo, hi + 1)
    ]
    return matseq(rows, cols, lo, coeffs)


def block_entries(a: MatSeq):
    """The inverse of :func:`from_entries`: grid of scalar entry sequences."""
    return [[a.entry(i, j) for j in range(a.cols)] for i in range(a.rows)]


def convolve(u: MatSeq, v: MatSeq) -> MatSeq:
    """(u*v)(n) = sum_k u(k) v(n-k); the symbol of the result is u^ v^."""
    if u.cols != v.rows:
        raise DimensionMismatch(
            f"convolve: inner dimensions {u.cols} and {v.rows} differ"
        )
    if u.is_zero() or v.is_zero():
        return zero_seq(u.rows, v.cols)
    lo = u.offset + v.offset
    n = len(u.coeffs) + len(v.coeffs) - 1
    acc = [[[ZERO] * v.cols for _ in range(u.rows)] for _ in range(n)]
    for i, mu in u.nonzero():
        for j, mv in v.nonzero():
            tgt = acc[i + j - lo]
            for a in range(u.rows):
                mua = mu[a]
                ta = tgt[a]
                for t in range(u.cols):
                    x = mua[t]
                    if x:
                        mvt = mv[t]
                        for b in range(v.cols):
                            if mvt[b]:
                                ta[b] = ta[b] + x * mvt[b]
    return matseq(u.rows, v.cols, lo, [tuple(tuple(r) for r in m) for m in acc])


def convolve_scalar(c: MatSeq, u: MatSeq) -> MatSeq:
    """Convolution with a 1x1 sequence acting entrywise (c^ times u^)."""
    if (c.rows, c.cols) != (1, 1):
        raise DimensionMismatch("convolve_scalar needs a 1x1 left factor")
    if c.is_zero() or u.is_zero():
        return zero_seq(u.rows, u.cols)
    lo = c.offset + u.offset
    n = len(c.coeffs) + len(u.coeffs) - 1
    acc = [[[ZERO] * u.cols for _ in range(u.rows)] for _ in range(n)]
    for i, mc in c.nonzero():
        s = mc[0][0]
        for j, mu in u.nonzero():
            tgt = acc[i + j - lo]
            for a in range(u.rows):
                mua = mu[a]
                ta = tgt[a]
                for b in range(u.cols):
                    if mua[b]:
                        ta[b] = ta[b] + s * mua[b]
    return matseq(u.rows, u.cols, lo, [tuple(tuple(r) for r in m) for m in acc])


def coset(a: MatSeq, gamma: int) -> MatSeq:
    """The gamma-coset a(gamma + 2k); a^(xi) = a0^(2xi) + a1^(2xi) e^{-i xi}."""
    sup = a.support()
    if sup is None:
        return zero_seq(a.rows, a.cols)
    lo, hi = sup
    klo = (lo - gamma + 1) // 2  # smallest k with gamma + 2k >= lo
    khi = (hi - gamma) // 2
    coeffs = [a.at(gamma + 2 * k) for k in range(klo, khi + 1)]
    return matseq(a.rows, a.cols, klo, coeffs)


def interleave(even: MatSeq, odd: MatSeq) -> MatSeq:
    """Reassemble a from its cosets: a(2k) = even(k), a(2k+1) = odd(k)."""
    if (even.rows, even.cols) != (odd.rows, odd.cols):
        raise DimensionMismatch("cosets must share a shape")
    pieces = []
    for k, m in even.nonzero():
        pieces.append((2 * k, m))
    for k, m in odd.nonzero():
        pieces.append((2 * k + 1, m))
    if not pieces:
        return zero_seq(even.rows, even.cols)
    lo = min(k for k, _ in pieces)
    hi = max(k for k, _ in pieces)
    grid = [linalg.zeros(even.rows, even.cols)] * (hi - lo + 1)
    for k, m in pieces:
        grid[k - lo] = m
    return matseq(even.rows, even.cols, lo, grid)


def upsample(a: MatSeq, s: int) -> MatSeq:
    """Spread by a factor s: result(s k) = a(k); symbol becomes a^(s xi)."""
    if s < 1:
        raise ValueError("upsampling factor must be positive")
    if s == 1 or a.is_zero():
        return a
    z = linalg.zeros(a.rows, a.cols)
    coeffs = []
    for i, m in enumerate(a.coeffs):
        if i:
            coeffs.extend([z] * (s - 1))
        coeffs.append(m)
    return MatSeq(a.rows, a.cols, a.offset * s, tuple(coeffs))


def nabla_power(n: int) -> MatSeq:
    """The scalar sequence with symbol (1 - e^{-i xi})^n."""
    out = scalar_seq(0, [1])
    step = scalar_seq(0, [1, -1])
    for _ in range(n):
        out = convolve(out, step)
    return out


def difference_power(u: MatSeq, n: int) -> MatSeq:
    """Apply the forward-difference operator n times: symbol (1-e^{-i xi})^n u^."""
    if n == 0:
        return u
    return convolve_scalar(nabla_power(n), u)


def symbol_det(a: MatSeq) -> MatSeq:
    """Determinant of the symbol, as a 1x1 Laurent sequence."""
    if a.rows != a.cols:
        raise DimensionMismatch("determinant of a non-square symbol")
    entries = block_entries(a)

    def rec(idx_rows, idx_cols):
        if len(idx_rows) == 1:
            return entries[idx_rows[0]][idx_cols[0]]
        total = zero_seq(1, 1)
        i = idx_rows[0]
        rest = idx_rows[1:]
        for pos, j in enumerate(idx_cols):
            e = entries[i][j]
            if e.is_zero():
                continue
            minor = rec(rest, idx_cols[:pos] + idx_cols[pos + 1 :])
            term = convolve(e, minor)
            total = total + (term if pos % 2 == 0 else -term)
        return total

    n = a.rows
    return rec(tuple(range(n)), tuple(range(n)))


def strong_inverse(u: MatSeq) -> MatSeq:
    """Inverse within Laurent-polynomial matrices.

    Exists iff det(u^) is a nonzero monomial c e^{-ik xi}; then the inverse is
    the adjugate divided by that monomial.  Raises NotStronglyInvertible
    otherwise.
    """
    if u.rows != u.cols:
        raise DimensionMismatch("only square sequences can be strongly invertible")
    d = symbol_det(u)
    sup = d.support()
    if sup is None or sup[0] != sup[1]:
        raise NotStronglyInvertible(
            "determinant of the symbol is not a nonzero monomial"
        )
    k0 = sup[0]
    c = d.at(k0)[0][0]
    n = u.rows
    if n == 1:
        inv = scalar_seq(-k0, [ONE / c])
        return inv
    entries = block_entries(u)
    adj = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            rows_idx = tuple(x for x in range(n) if x != j)
            cols_idx = tuple(x for x in range(n) if x != i)
            minor = _det_of(entries, rows_idx, cols_idx)
            if (i + j) % 2:
                minor = -minor
            adj[i][j] = minor.scale(ONE / c).shift(-k0)
    out = from_entries(adj)
    if convolve(u, out) != dirac(n) or convolve(out, u) != dirac(n):
        raise NotStronglyInvertible("adjugate check failed")  # pragma: no cover
    return out


def _det_of(entries, idx_rows, idx_cols):
    if len(idx_rows) == 0:
        return scalar_seq(0, [1])
    if len(idx_rows) == 1:
        return entries[idx_rows[0]][idx_cols[0]]
    total = zero_seq(1, 1)
    i = idx_rows[0]
    rest = idx_rows[1:]
    for pos, j in enumerate(idx_cols):
        e = entries[i][j]
        if e.is_zero():
            continue
        minor = _det_of(entries, rest, idx_cols[:pos] + idx_cols[pos + 1 :])
        term = convolve(e, minor)
        total = total + (term if pos % 2 == 0 else -term)
    return total


def exact_divide(u: MatSeq, d: MatSeq) -> MatSeq:
    """Exact Laurent division of 1x1 sequences: returns q with q*d = u.

    Raises DivisionNotExact on a nonzero remainder; this always indicates a
    bug in the caller, never a data condition.
    """
    if (u.rows, u.cols) != (1, 1) or (d.rows, d.cols) != (1, 1):
        raise DimensionMismatch("exact_divide works on 1x1 sequences")
    if d.is_zero():
        raise ZeroDivisionError("division by the zero sequence")
    if u.is_zero():
        return zero_seq(1, 1)
    du = [m[0][0] for m in u.coeffs]
    dd = [m[0][0] for m in d.coeffs]
    if len(du) < len(dd):
        raise DivisionNotExact("dividend shorter than divisor")
    lead = dd[0]
    q = []
    rem = list(du)
    for i in range(len(du) - len(dd) + 1):
        f = rem[i] / lead
        q.append(f)
        if f:
            for j, x in enumerate(dd):
                rem[i + j] = rem[i + j] - f * x
    if any(rem):
        raise DivisionNotExact("nonzero remainder in exact division")
    return matseq(1, 1, u.offset - d.offset, [((x,),) for x in q])
