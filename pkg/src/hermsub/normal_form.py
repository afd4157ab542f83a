"""Normal form and factorization of matrix masks.

A strongly invertible transform U built from the matching-filter jets turns
the mask a into a ring mask with a scalar-like top row: value 1 at 0 in the
corner, jets of the rest of the top row vanishing through order m at 0, and
(under sum rules) the whole top row vanishing through order m at pi.  The
factor (1 - e^{-i xi})^{m+1} can then be pulled out of the first column
direction, giving a^(xi) = V^(2 xi) b^(xi) V^(xi)^{-1} with a finitely
supported derived mask b whose norm growth measures smoothness.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from . import linalg
from .errors import DimensionMismatch, InsufficientSumRules
from .jets import Jet, POINT_PI, POINT_ZERO, jet_divide, jet_interpolate
from .rational import ONE, ZERO
from .seq import (
    MatSeq,
    block_entries,
    convolve,
    exact_divide,
    from_entries,
    nabla_power,
    scalar_seq,
    strong_inverse,
    upsample,
    zero_seq,
)

__all__ = [
    "NormalForm",
    "BuiltTransform",
    "build_U",
    "transform_mask",
    "factorize",
    "normal_form_jets_ok",
    "difference_block",
]


@dataclass(frozen=True)
class NormalForm:
    """Bundle (U, U^{-1}, ring mask, V, derived mask b) at sum-rule degree m."""

    U: MatSeq
    U_inv: MatSeq
    a_ring: MatSeq
    V: MatSeq
    b: MatSeq
    m: int  # sum rules of order m+1 were used

    @property
    def order(self) -> int:
        return self.m + 1


class BuiltTransform(NamedTuple):
    U: MatSeq
    permutation: tuple  # column permutation applied before the construction


def build_U(matching: Jet, support_hint=None) -> BuiltTransform:
    """Strongly invertible U with y^(xi) U^(xi) = (1 + O(xi), O(xi^{m+1}), ...).

    U = (1/y_1(0)) [[delta, -u_2, ..., -u_r], [0, delta, 0, ...], ...] where
    the jet of u_l matches y_l/y_1 at 0 through order m (exact power-series
    division followed by jet interpolation on `support_hint`, default
    [0, m]).  If entry 1 of the matching filter vanishes at 0, columns are
    permuted first so a nonzero entry leads; the permutation is returned.
    """
    if matching.point != POINT_ZERO:
        raise ValueError("the matching jet must be based at 0")
    if matching.shape[0] != 1:
        raise DimensionMismatch("the matching jet must be a row jet")
    r = matching.shape[1]
    m = matching.order
    y0 = matching.derivs[0][0]
    if linalg.mat_is_zero(matching.derivs[0]):
        raise ValueError("matching jet vanishes at 0")
    lead = next(c for c in range(r) if y0[c])
    perm = tuple([lead] + [c for c in range(r) if c != lead])
    if support_hint is None:
        support_hint = (0, m)
    entries = [[zero_seq(1, 1) for _ in range(r)] for _ in range(r)]
    d = scalar_seq(0, [1])
    lead_jet = Jet(
        POINT_ZERO, tuple(((mrow[0][perm[0]],),) for mrow in matching.derivs)
    )
    inv_lead0 = ONE / y0[perm[0]]
    for i in range(r):
        entries[i][i] = d
    for col in range(1, r):
        src = perm[col]
        col_jet = Jet(
            POINT_ZERO, tuple(((mrow[0][src],),) for mrow in matching.derivs)
        )
        q = jet_divide(col_jet, lead_jet)
        u = jet_interpolate(q, support_hint)
        entries[0][col] = -u
    base = from_entries(entries).scale(inv_lead0)
    # fold the column permutation in: U = P * base so that y^ U = (y^ P) base
    p = tuple(
        tuple(ONE if perm[i] == jcol else ZERO for jcol in range(r)) for i in range(r)
    )
    pmat = tuple(tuple(row) for row in zip(*p))  # rows of P: e_{perm[i]} as columns
    u_full = base.mul_matrix_left(pmat)
    return BuiltTransform(u_full, perm)


def transform_mask(a: MatSeq, u: MatSeq) -> MatSeq:
    """The conjugated mask with symbol U^(2 xi)^{-1} a^(xi) U^(xi)."""
    u_inv = strong_inverse(u)
    return convolve(convolve(upsample(u_inv, 2), a), u)


def normal_form_jets_ok(a_ring: MatSeq, m: int, with_sum_rules: bool = True) -> bool:
    """Jet checks of the normal form on the ring mask.

    Top-left scalar has value 1 at 0 and the rest of the top row vanishes at
    0 through order m; with sum rules, the whole top row also vanishes at pi
    through order m.
    """
    top0 = a_ring.symbol_jet(POINT_ZERO, m)
    if top0.derivs[0][0][0] != ONE:
        return False
    for j in range(m + 1):
        row = top0.derivs[j][0]
        if any(row[1:]):
            return False
    if with_sum_rules:
        toppi = a_ring.symbol_jet(POINT_PI, m)
        for j in range(m + 1):
            if any(toppi.derivs[j][0]):
                return False
    return True


def difference_block(r: int, n: int) -> MatSeq:
    """diag((1 - e^{-i xi})^n, I_{r-1}) as a matrix sequence."""
    entries = [[zero_seq(1, 1) for _ in range(r)] for _ in range(r)]
    entries[0][0] = nabla_power(n)
    d = scalar_seq(0, [1])
    for i in range(1, r):
        entries[i][i] = d
    return from_entries(entries)


def factorize(a: MatSeq, order: int, support_hint=None) -> NormalForm:
    """Factor a mask with order-(m+1) sum rules through its normal form.

    Returns the bundle with V = U * diag((1-e^{-i xi})^{m+1}, I_{r-1}) and
    the derived mask b; the identities U^(2 xi) ring^(xi) = a^(xi) U^(xi) and
    V^(2 xi) b^(xi) = a^(xi) V^(xi) are verified coefficientwise before
    returning, and every division is exact by construction (a nonzero
    remainder raises DivisionNotExact, which indicates a bug).
    """
    from .sum_rules import sum_rules_order

    if order < 1:
        raise InsufficientSumRules("factorization needs sum rules of order >= 1")
    report = sum_rules_order(a, max_probe=max(order, 1))
    if report.order < order:
        raise InsufficientSumRules(
            f"mask has sum rules of order {report.order}, below the requested {order}"
        )
    m = order - 1
    matching = report.matching.truncate(m)
    u, _perm = build_U(matching, support_hint)
    u_inv = strong_inverse(u)
    a_ring = convolve(convolve(upsample(u_inv, 2), a), u)
    r = a.rows
    entries = block_entries(a_ring)
    w = nabla_power(order)  # (1 - e^{-i xi})^{m+1}
    w2 = upsample(w, 2)  # the same factor at the doubled argument
    b_entries = [[None] * r for _ in range(r)]
    b_entries[0][0] = exact_divide(convolve(entries[0][0], w), w2)
    for c in range(1, r):
        b_entries[0][c] = exact_divide(entries[0][c], w2)
    for i in range(1, r):
        b_entries[i][0] = convolve(entries[i][0], w)
        for c in range(1, r):
            b_entries[i][c] = entries[i][c]
    b = from_entries(b_entries)
    v = convolve(u, difference_block(r, order))
    _verify_conjugation(a, u, a_ring)
    _verify_conjugation(a, v, b)
    return NormalForm(U=u, U_inv=u_inv, a_ring=a_ring, V=v, b=b, m=m)


def _verify_conjugation(a: MatSeq, t: MatSeq, c: MatSeq):
    """Assert T^(2 xi) c^(xi) = a^(xi) T^(xi) coefficientwise."""
    lhs = convolve(upsample(t, 2), c)
    rhs = convolve(a, t)
    if lhs != rhs:
        raise AssertionError(
            "internal factorization identity failed; this is a bug"
        )  # pragma: no cover
