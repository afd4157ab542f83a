"""Cascade evaluation on dyadic grids and Hermite-interpolating initial data.

The refinement operator maps f to 2 sum_k a(k) f(2x - k); iterating it on an
initial vector function whose value/derivative matrix H satisfies
H(k) = delta(k) I_r reproduces the subdivision data exactly on each dyadic
grid, which is the bridge between scheme data and the refinable limit.
Initial functions are piecewise polynomials so every grid value is an exact
rational and the whole recursion stays exact.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from . import linalg
from .errors import DimensionMismatch
from .jets import Jet, POINT_ZERO, jet_interpolate, jet_reciprocal
from .rational import CRat, ONE, ZERO, cr
from .seq import MatSeq
from .subdivision import DyadicSamples

__all__ = [
    "PiecewisePoly",
    "piecewise_from_pieces",
    "hermite_bump",
    "theta_eval",
    "InitialVector",
    "build_initial",
    "cascade_run",
    "filter_correction_jets",
]


@dataclass(frozen=True)
class PiecewisePoly:
    """Compactly supported piecewise polynomial with exact coefficients.

    breakpoints are strictly increasing rationals; pieces[i] holds monomial
    coefficients (global coordinates) on [breakpoints[i], breakpoints[i+1]).
    The function is zero outside [breakpoints[0], breakpoints[-1]].
    """

    breakpoints: tuple  # tuple[Fraction, ...]
    pieces: tuple  # tuple[tuple[CRat, ...], ...]

    def eval(self, x, deriv: int = 0):
        x = Fraction(x)
        bp = self.breakpoints
        if not self.pieces or x < bp[0] or x > bp[-1]:
            return ZERO
        i = bisect_right(bp, x) - 1
        if i == len(self.pieces):  # right endpoint: use the last piece
            i -= 1
        coeffs = self.pieces[i]
        xc = cr(x)
        acc = ZERO
        for d in range(len(coeffs) - 1, deriv - 1, -1):
            w = cr(factorial(d) // factorial(d - deriv))
            acc = acc * xc + w * coeffs[d]
        return acc

    def derivative(self) -> "PiecewisePoly":
        pieces = tuple(
            tuple(c * cr(d) for d, c in enumerate(p) if d >= 1) or (ZERO,)
            for p in self.pieces
        )
        return PiecewisePoly(self.breakpoints, pieces)

    def shift(self, k) -> "PiecewisePoly":
        """x |-> f(x - k)."""
        k = Fraction(k)
        kc = cr(k)
        out = []
        for p in self.pieces:
            n = len(p)
            q = [ZERO] * n
            for d, c in enumerate(p):
                for t in range(d + 1):
                    q[t] = q[t] + c * cr(comb(d, t)) * (-kc) ** (d - t)
            out.append(tuple(q))
        return PiecewisePoly(tuple(b + k for b in self.breakpoints), tuple(out))

    def scale(self, s) -> "PiecewisePoly":
        s = cr(s)
        return PiecewisePoly(
            self.breakpoints, tuple(tuple(c * s for c in p) for p in self.pieces)
        )

    def __add__(self, other: "PiecewisePoly") -> "PiecewisePoly":
        if not self.pieces:
            return other
        if not other.pieces:
            return self
        bps = sorted(set(self.breakpoints) | set(other.breakpoints))
        pieces = []
        for lo, hi in zip(bps, bps[1:]):
            mid = (Fraction(lo) + Fraction(hi)) / 2
            pa = self._piece_at(mid)
            pb = other._piece_at(mid)
            n = max(len(pa), len(pb))
            pieces.append(
                tuple(
                    (pa[d] if d < len(pa) else ZERO) + (pb[d] if d < len(pb) else ZERO)
                    for d in range(n)
                )
            )
        return piecewise_from_pieces(tuple(bps), tuple(pieces))

    def _piece_at(self, x: Fraction):
        bp = self.breakpoints
        if not self.pieces or x < bp[0] or x >= bp[-1]:
            return (ZERO,)
        i = bisect_right(bp, x) - 1
        return self.pieces[i]

    def convolve_seq(self, u: MatSeq) -> "PiecewisePoly":
        """sum_k u(k) f(. - k) for a scalar sequence u."""
        if (u.rows, u.cols) != (1, 1):
            raise DimensionMismatch("convolve_seq needs a 1x1 sequence")
        out = PiecewisePoly((), ())
        for k, m in u.nonzero():
            out = out + self.shift(k).scale(m[0][0])
        return out

    def support(self):
        if not self.pieces:
            return None
        return (self.breakpoints[0], self.breakpoints[-1])

    def continuous_through(self, order: int) -> bool:
        """One-sided evaluation check of C^order continuity at breakpoints."""
        if not self.pieces:
            return True
        padded = ((ZERO,),) + self.pieces + ((ZERO,),)
        for i, b in enumerate(self.breakpoints):
            left, right = padded[i], padded[i + 1]
            xc = cr(Fraction(b))
            for d in range(order + 1):
                if _poly_eval_deriv(left, xc, d) != _poly_eval_deriv(right, xc, d):
                    return False
        return True

    def moment(self, j: int) -> CRat:
        """Exact integral of x^j f(x) over the real line."""
        total = ZERO
        for (lo, hi), p in zip(zip(self.breakpoints, self.breakpoints[1:]), self.pieces):
            lo_c, hi_c = cr(Fraction(lo)), cr(Fraction(hi))
            for d, c in enumerate(p):
                if c:
                    e = d + j + 1
                    total = total + c * (hi_c**e - lo_c**e) / cr(e)
        return total

    def fourier_jet(self, order: int) -> Jet:
        """Jet at 0 of the Fourier transform: f^(t)(0) = (-i)^t moment_t."""
        rows = []
        for t in range(order + 1):
            rows.append(((CRat(0, -1) ** t * self.moment(t),),))
        return Jet(POINT_ZERO, tuple(rows))


def _poly_eval_deriv(coeffs, xc, deriv):
    acc = ZERO
    for d in range(len(coeffs) - 1, deriv - 1, -1):
        w = cr(factorial(d) // factorial(d - deriv))
        acc = acc * xc + w * coeffs[d]
    return acc


def piecewise_from_pieces(breakpoints, pieces) -> PiecewisePoly:
    """Normalize: drop zero pieces at the ends, trim trailing zero coeffs."""
    bps = [Fraction(b) for b in breakpoints]
    ps = [list(p) for p in pieces]
    for p in ps:
        while len(p) > 1 and not p[-1]:
            p.pop()
    while ps and len(ps[0]) == 1 and not ps[0][0]:
        ps.pop(0)
        bps.pop(0)
    while ps and len(ps[-1]) == 1 and not ps[-1][0]:
        ps.pop()
        bps.pop()
    if not ps:
        return PiecewisePoly((), ())
    return PiecewisePoly(tuple(bps), tuple(tuple(cr(c) for c in p) for p in ps))


def _poly_mul(p, q):
    out = [ZERO] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                if b:
                    out[i + j] = out[i + j] + a * b
    return out


def _binomial_poly(constant, linear_sign, n):
    """(constant + linear_sign * x)^n as a coefficient list."""
    out = [ONE]
    base = [cr(constant), cr(linear_sign)]
    for _ in range(n):
        out = _poly_mul(out, base)
    return out


def theta_eval(ell: int, m: int, x) -> CRat:
    """The degree-(2m+1) Hermite interpolating bump, evaluated exactly.

    On [0, 1]: (1-x)^{m+1} (x^ell / ell!) sum_{j<=m-ell} ((m+j)!/(m! j!)) x^j,
    mirrored with the sign pattern of x^ell on [-1, 0), zero elsewhere.  Its
    j-th derivative at integer k equals delta(ell - j) delta(k).
    """
    if not 0 <= ell <= m:
        raise ValueError("need 0 <= ell <= m")
    x = Fraction(x)
    if x < -1 or x > 1:
        return ZERO
    ax = abs(x)
    one_minus = (1 - ax) ** (m + 1)
    s = Fraction(0)
    for j in range(m - ell + 1):
        s += Fraction(factorial(m + j), factorial(m) * factorial(j)) * ax**j
    val = one_minus * x**ell / factorial(ell) * s
    # the mirrored branch replaces x^j by (-x)^j = |x|^j, which the |x|
    # rewriting above already does; only x^ell keeps its sign
    return cr(val)


def hermite_bump(ell: int, m: int) -> PiecewisePoly:
    """theta_eval(ell, m, .) as an exact piecewise polynomial on [-1, 1]."""
    if not 0 <= ell <= m:
        raise ValueError("need 0 <= ell <= m")
    inv_fact = cr(Fraction(1, factorial(ell)))
    # right piece on [0, 1]
    tail = [
        cr(Fraction(factorial(m + j), factorial(m) * factorial(j)))
        for j in range(m - ell + 1)
    ]
    xell = [ZERO] * ell + [inv_fact]
    right = _poly_mul(_poly_mul(_binomial_poly(1, -1, m + 1), xell), tail)
    tail_neg = [c if j % 2 == 0 else -c for j, c in enumerate(tail)]
    left = _poly_mul(_poly_mul(_binomial_poly(1, 1, m + 1), xell), tail_neg)
    return piecewise_from_pieces(
        (Fraction(-1), Fraction(0), Fraction(1)), (tuple(left), tuple(right))
    )


@dataclass(frozen=True)
class InitialVector:
    """An admissible cascade starting vector (h_1, ..., h_r) with H(k) = delta(k) I."""

    r: int
    m: int
    components: tuple  # tuple[PiecewisePoly, ...]
    correctors: tuple | None = None  # d_l sequences when the filter correction is on
    min_corrector_modulus: float | None = None

    def value_matrix(self, x):
        """[h, h', ..., h^{(r-1)}](x) as an exact r x r matrix."""
        cols = []
        for c in range(self.r):
            cols.append([comp.eval(x, deriv=c) for comp in self.components])
        return tuple(tuple(cols[c][i] for c in range(self.r)) for i in range(self.r))


def filter_correction_jets(matching: Jet, r: int):
    """Per-entry jets c_l of the matching filter: y^ e_{l+1} = (i xi)^l c_{l+1}^.

    Entry l+1 of the order-m matching jet determines c_{l+1} through order
    m-l; returns the list of scalar jets (c_1, ..., c_r).
    """
    m = matching.order
    out = []
    for ell in range(r):
        rows = []
        for s in range(m - ell + 1):
            y = matching.derivs[s + ell][0][ell]
            w = cr(Fraction(factorial(s + ell), factorial(s))) * CRat(0, 1) ** ell
            rows.append(((y / w,),))
        out.append(Jet(POINT_ZERO, tuple(rows)))
    return out


def build_initial(r: int, m: int, matching: Jet | None = None) -> InitialVector:
    """The Hermite interpolant h = (h_1, theta_1, ..., theta_{r-1}).

    h_1 = theta_0 + sum_{l=r}^{m} u_l * theta_l where the jet of u_l at 0 is
    (i xi)^l through order m, so H = [h, h', ..., h^{(r-1)}] satisfies
    H(k) = delta(k) I_r exactly while the first component gains the
    higher-order moments the cascade needs.

    When `matching` is given and carries nontrivial per-entry corrections
    c_l, each component is additionally convolved with d_l whose jet is
    1/c_l (the filter correction); the sampled-grid minimum of |d_l^| over
    [0, 2 pi) is recorded but not certified.
    """
    if m < r - 1:
        raise ValueError("need m >= r-1")
    h1 = hermite_bump(0, m)
    for ell in range(r, m + 1):
        target_rows = []
        for j in range(m + 1):
            v = cr(factorial(ell)) * CRat(0, 1) ** ell if j == ell else ZERO
            target_rows.append(((v,),))
        u = jet_interpolate(Jet(POINT_ZERO, tuple(target_rows)))
        h1 = h1 + hermite_bump(ell, m).convolve_seq(u)
    components = [h1] + [hermite_bump(ell, m) for ell in range(1, r)]
    correctors = None
    min_mod = None
    if matching is not None:
        cjets = filter_correction_jets(matching.truncate(m), r)
        trivial = all(_is_trivial_correction(jet) for jet in cjets)
        if not trivial:
            correctors = []
            for ell, cjet in enumerate(cjets):
                d = jet_interpolate(jet_reciprocal(cjet))
                correctors.append(d)
                components[ell] = components[ell].convolve_seq(d)
            correctors = tuple(correctors)
            min_mod = min(_sampled_min_modulus(d) for d in correctors)
    return InitialVector(
        r=r,
        m=m,
        components=tuple(components),
        correctors=correctors,
        min_corrector_modulus=min_mod,
    )


def _is_trivial_correction(jet: Jet) -> bool:
    if jet.derivs[0][0][0] != ONE:
        return False
    return all(not jet.derivs[j][0][0] for j in range(1, jet.order + 1))


def _sampled_min_modulus(d: MatSeq, samples: int = 256) -> float:
    """min over a uniform grid of |d^(xi)|; a record, not a certificate."""
    vals = []
    for t in range(samples):
        xi = 2 * math.pi * t / samples
        acc = 0j
        for k, mval in d.nonzero():
            acc += complex(mval[0][0]) * complex(math.cos(k * xi), -math.sin(k * xi))
        vals.append(abs(acc))
    return min(vals)


def cascade_run(a: MatSeq, initial, n: int, window=None) -> DyadicSamples:
    """Grid values of F_n = [f_n, f_n', ..., f_n^{(r-1)}] after n cascade steps.

    The recursion is a pure level-to-level grid identity,
    F_t(2^{-t} j) = 2 sum_k a(k) F_{t-1}(2^{-(t-1)}(j - 2^{t-1} k)) Lambda
    with Lambda = diag(1, 2, ..., 2^{r-1}), so exact initial values at the
    integers propagate to exact rationals at every level.  `initial` is an
    InitialVector or a sequence of r piecewise polynomials; the reported
    window defaults to fsupp(a) padded by one.
    """
    if a.rows != a.cols:
        raise DimensionMismatch("cascade needs a square mask")
    r = a.rows
    comps = initial.components if isinstance(initial, InitialVector) else tuple(initial)
    if len(comps) != r:
        raise DimensionMismatch(f"initial vector has {len(comps)} components, mask order {r}")
    sup = a.support()
    if sup is None:
        raise ValueError("cannot cascade with the zero mask")
    if window is None:
        window = (sup[0] - 1, sup[1] + 1)
    # integer range where the level-0 data can be nonzero
    lo = min(
        (math.floor(c.support()[0]) for c in comps if c.support()), default=0
    )
    hi = max(
        (math.ceil(c.support()[1]) for c in comps if c.support()), default=0
    )
    lam = tuple(
        tuple(cr(2**c) if i == c else ZERO for c in range(r)) for i in range(r)
    )
    values = {}
    for j in range(lo, hi + 1):
        mat = tuple(
            tuple(comps[i].eval(j, deriv=c) for c in range(r)) for i in range(r)
        )
        if not linalg.mat_is_zero(mat):
            values[j] = mat
    for t in range(1, n + 1):
        step = 2 ** (t - 1)
        nxt = {}
        for k, am in a.nonzero():
            shift = step * k
            for j, g in values.items():
                tgt = j + shift
                term = linalg.mat_mul(am, g)
                if tgt in nxt:
                    nxt[tgt] = linalg.mat_add(nxt[tgt], term)
                else:
                    nxt[tgt] = term
        values = {
            j: linalg.mat_mul(linalg.mat_scale(g, 2), lam) for j, g in nxt.items()
        }
    klo = window[0] * 2**n
    khi = window[1] * 2**n
    z = linalg.zeros(r, r)
    out = [values.get(k, z) for k in range(klo, khi + 1)]
    return DyadicSamples(n, klo, tuple(out), r, r)
