"""Sum rules, matching filters, and Hermite-mask verification/construction.

A mask a has order m+1 sum rules with respect to a matching filter y when

    y^(2 xi) a^(xi)      = y^(xi) + O(|xi|^{m+1}),
    y^(2 xi) a^(xi + pi) = O(|xi|^{m+1}),        y^(0) != 0.

Differentiating the first identity pins the filter jets through a recursion
whose step matrix is I - 2^j a^(0); when that matrix is singular (an
eigenvalue of a^(0) sits exactly at 2^{-j}) the jet is pinned only jointly
with the pi-condition, so order detection solves the combined linear system
exactly instead of iterating the recursion.  A Hermite mask of accuracy m+1
additionally has the matching jet (1, i xi, ..., (i xi)^{r-1}) up to
per-entry higher-order corrections.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from . import linalg
from .errors import (
    DimensionMismatch,
    Infeasible,
    NoSimpleEigenvalueOne,
    SingularResonance,
)
from .jets import Jet, POINT_PI, POINT_ZERO
from .rational import CRat, ONE, ZERO, cr
from .seq import MatSeq, matseq

__all__ = [
    "SumRuleReport",
    "Failure",
    "HermiteCheck",
    "matching_filter_jet",
    "sum_rules_order",
    "is_hermite_mask",
    "construct_hermite_mask",
    "hermite_reference_jet",
    "default_max_probe",
]


@dataclass(frozen=True)
class Failure:
    """Why probing for the next sum-rule order stopped.

    kinds: no_simple_eigenvalue_one, pi_condition_fails(j),
    zero_condition_fails(j).  Resonant steps (singular I - 2^j a^(0)) do not
    stop the joint solve; they surface only as SingularResonance from the
    recursion-based matching_filter_jet.
    """

    kind: str
    order: int | None = None

    def __str__(self):
        if self.order is None:
            return self.kind
        return f"{self.kind}({self.order})"


@dataclass(frozen=True)
class SumRuleReport:
    order: int  # the achieved m+1; 0 when even order 1 fails
    matching: Jet | None  # jets y^(0)(0),...,y^(order-1)(0) when available
    failure: Failure | None  # first obstruction met while probing


@dataclass(frozen=True)
class HermiteCheck:
    ok: bool
    reason: str | None
    matching: Jet | None

    def __bool__(self):
        return self.ok


def _simple_eigenvalue_one(a0) -> bool:
    """Exact test that 1 has algebraic multiplicity one for a0."""
    r = len(a0)
    m1 = linalg.mat_sub(a0, linalg.identity(r))
    if linalg.rank(m1) != r - 1:
        return False
    # geometric multiplicity 1; exclude a Jordan block via rank of the square
    return linalg.rank(linalg.mat_mul(m1, m1)) == r - 1


def _left_one_eigenvector(a0):
    """Left eigenvector row y with y a0 = y, from the exact nullspace."""
    r = len(a0)
    basis = linalg.nullspace(
        linalg.transpose(linalg.mat_sub(a0, linalg.identity(r)))
    )
    if len(basis) != 1:
        raise NoSimpleEigenvalueOne(
            f"eigenvalue 1 has geometric multiplicity {len(basis)}"
        )
    return tuple(basis[0][i][0] for i in range(r))


def _normalize_row(row, normalize_against):
    if normalize_against is not None:
        s = sum((x * cr(v) for x, v in zip(row, normalize_against)), ZERO)
        if not s:
            raise ValueError("normalization vector is orthogonal to the eigenvector")
        return tuple(x / s for x in row)
    lead = next((x for x in row if x), None)
    if lead is None:
        raise NoSimpleEigenvalueOne("zero eigenvector")  # pragma: no cover
    return tuple(x / lead for x in row)


def _recursion_rhs(yrows, a_jets0, j):
    """sum_{k<j} C(j,k) 2^k y_k a^(j-k)(0) as a row."""
    r = len(yrows[0])
    acc = [ZERO] * r
    for k in range(j):
        w = cr(comb(j, k) * 2**k)
        row = linalg.mat_mul((yrows[k],), a_jets0[j - k])[0]
        for c in range(r):
            acc[c] = acc[c] + w * row[c]
    return tuple(acc)


def matching_filter_jet(a: MatSeq, m: int, normalize_against=None) -> Jet:
    """Jets y^(j)(0), j = 0..m, of the matching filter of a.

    y^(0) is the left 1-eigenvector of a^(0) (exact rational nullspace),
    scaled so its first nonzero entry is 1 unless `normalize_against` (a
    length-r vector v with y^(0) v = 1, e.g. the symbol of the refinable
    function at 0) is supplied.  Higher jets follow the recursion

        y^(j)(0) = [sum_{k<j} C(j,k) 2^k y^(k)(0) a^(j-k)(0)] (I - 2^j a^(0))^{-1}.

    Raises NoSimpleEigenvalueOne or SingularResonance(j) when the recursion
    is not well posed.
    """
    if a.rows != a.cols:
        raise DimensionMismatch("matching filters require a square mask")
    r = a.rows
    ajet = a.symbol_jet(POINT_ZERO, m)
    a0 = ajet.derivs[0]
    if not _simple_eigenvalue_one(a0):
        raise NoSimpleEigenvalueOne("1 is not a simple eigenvalue of the symbol at 0")
    y0 = _normalize_row(_left_one_eigenvector(a0), normalize_against)
    yrows = [y0]
    for j in range(1, m + 1):
        step = linalg.mat_sub(linalg.identity(r), linalg.mat_scale(a0, 2**j))
        if not linalg.det(step):
            raise SingularResonance(j)
        rhs = _recursion_rhs(yrows, ajet.derivs, j)
        yrows.append(linalg.mat_mul((rhs,), linalg.inverse(step))[0])
    return Jet(POINT_ZERO, tuple((row,) for row in yrows))


def default_max_probe(a: MatSeq) -> int:
    """Sum rules of a finite mask are bounded by its support length."""
    sup = a.support()
    length = 0 if sup is None else sup[1] - sup[0] + 1
    return 2 * length + 2


class _JetSolver:
    """Joint exact solver for the matching-filter jets of one mask.

    The order-q sum-rule conditions are linear in the jet rows y_1..y_{q-1}
    once y_0 is pinned, even when some I - 2^j a^(0) is singular (then the
    pi-conditions may pin the otherwise free jet entries, and feasibility of
    the combined system is the correct criterion).  Solving with
    include_pi=False isolates the 0-condition half, so failures can be
    attributed to the right half of the definition.
    """

    def __init__(self, a: MatSeq, top: int, y0):
        self.r = a.rows
        self.y0 = tuple(y0)
        self.jet0 = a.symbol_jet(POINT_ZERO, top).derivs
        self.jetpi = a.symbol_jet(POINT_PI, top).derivs

    def _rows_for(self, q: int, include_pi: bool, pins=None):
        r = self.r
        nunk = (q - 1) * r  # y_1..y_{q-1}
        rows, rhs = [], []

        def term_rows(j, jets, subtract_yj: bool):
            # sum_{k<=j} C(j,k) 2^k y_k jets[j-k]  (minus y_j for the
            # 0-condition) = 0, one scalar row per column c
            for c in range(r):
                row = [ZERO] * nunk
                const = ZERO
                for k in range(j + 1):
                    w = cr(comb(j, k) * 2**k)
                    col = tuple(jets[j - k][rho][c] for rho in range(r))
                    if k == 0:
                        const = const + w * sum(
                            (self.y0[rho] * col[rho] for rho in range(r)), ZERO
                        )
                    else:
                        base = (k - 1) * r
                        for rho in range(r):
                            row[base + rho] = row[base + rho] + w * col[rho]
                if subtract_yj:
                    row[(j - 1) * r + c] = row[(j - 1) * r + c] - ONE
                rows.append(row)
                rhs.append(-const)

        for j in range(1, q):
            term_rows(j, self.jet0, True)
        if include_pi:
            for j in range(q):
                term_rows(j, self.jetpi, False)
        for (j, c), value in (pins or {}).items():
            if j == 0:
                continue  # y_0 is fixed by the caller
            row = [ZERO] * nunk
            row[(j - 1) * r + c] = ONE
            rows.append(row)
            rhs.append(cr(value))
        return rows, rhs

    def solve(self, q: int, include_pi: bool = True, pins=None):
        """Jet rows y_0..y_{q-1} satisfying the order-q system, or None."""
        rows, rhs = self._rows_for(q, include_pi, pins)
        if not rows:
            return [self.y0]
        sol = linalg.solve_general(
            tuple(tuple(r) for r in rows), linalg.col_vec(rhs)
        )
        if sol is None:
            return None
        r = self.r
        out = [self.y0]
        for j in range(1, q):
            out.append(tuple(sol[(j - 1) * r + c][0] for c in range(r)))
        return out


def sum_rules_order(a: MatSeq, max_probe: int | None = None) -> SumRuleReport:
    """Largest order of sum rules admitted by the mask, with a matching jet.

    Probes orders 1, 2, ... up to `max_probe` (default tied to the support
    length, beyond which sum rules are impossible).  Each order is decided by
    exact feasibility of the joint linear system in the jet unknowns; this
    stays correct when I - 2^j a^(0) is singular and the jet is pinned only
    through the pi-condition.  The reported jet is the deterministic solution
    with free parameters set to zero.
    """
    if a.rows != a.cols:
        raise DimensionMismatch("sum rules require a square mask")
    if max_probe is None:
        max_probe = default_max_probe(a)
    if max_probe <= 0:
        return SumRuleReport(0, None, None)
    a0 = a.symbol_jet(POINT_ZERO, 0).derivs[0]
    if not _simple_eigenvalue_one(a0):
        return SumRuleReport(0, None, Failure("no_simple_eigenvalue_one"))
    y0 = _left_one_eigenvector(a0)
    # pin entry 1 to 1 when possible (the Hermite normalization), else the
    # first nonzero entry
    y0 = tuple(x / y0[0] for x in y0) if y0[0] else _normalize_row(y0, None)
    solver = _JetSolver(a, max_probe - 1, y0)
    order = 0
    jets = [y0]
    failure = None
    for q in range(1, max_probe + 1):
        sol = solver.solve(q)
        if sol is None:
            j = q - 1
            if solver.solve(q, include_pi=False) is None:
                failure = Failure("zero_condition_fails", j)
            else:
                failure = Failure("pi_condition_fails", j)
            break
        order = q
        jets = sol
    matching = Jet(POINT_ZERO, tuple((row,) for row in jets))
    return SumRuleReport(order, matching, failure)


def hermite_reference_jet(r: int, order: int) -> Jet:
    """The jet of (1, i xi, ..., (i xi)^{r-1}) through the given order."""
    rows = []
    for j in range(order + 1):
        row = [ZERO] * r
        if j < r:
            row[j] = cr(factorial(j)) * CRat(0, 1) ** j
        rows.append(tuple(row))
    return Jet(POINT_ZERO, tuple((row,) for row in rows))


def is_hermite_mask(a: MatSeq, accuracy: int) -> HermiteCheck:
    """Whether a is a Hermite mask of the given accuracy order m+1.

    True iff order m+1 sum rules hold with respect to some matching filter
    whose jet has the Hermite shape: y^(0) = (1, 0, ..., 0), entry l+1
    vanishes through order l-1, and its order-l derivative equals l! i^l.
    The shape conditions are linear, so the decision is a single exact
    feasibility question; it does not require 1 to be a simple eigenvalue,
    and it remains correct when I - 2^j a^(0) is singular.
    """
    if a.rows != a.cols:
        raise DimensionMismatch("Hermite masks are square")
    r = a.rows
    m = accuracy - 1
    if m < r - 1:
        return HermiteCheck(
            False, f"accuracy {accuracy} is below the scheme-order requirement m >= r-1", None
        )
    y0 = tuple(ONE if c == 0 else ZERO for c in range(r))
    a0 = a.symbol_jet(POINT_ZERO, 0).derivs[0]
    if linalg.mat_mul((y0,), a0)[0] != y0:
        return HermiteCheck(
            False, "(1, 0, ..., 0) is not a left 1-eigenvector of the symbol at 0", None
        )
    pins = {}
    for ell in range(r):
        for j in range(ell):
            pins[(j, ell)] = ZERO
        if ell <= m:
            pins[(ell, ell)] = cr(factorial(ell)) * CRat(0, 1) ** ell
    solver = _JetSolver(a, m, y0)
    sol = solver.solve(accuracy, pins=pins)
    if sol is None:
        if solver.solve(accuracy) is None:
            reason = f"sum rules fail at order {accuracy} for the pinned filter"
        else:
            reason = "no matching filter with the Hermite jet shape exists"
        return HermiteCheck(False, reason, None)
    jet = Jet(POINT_ZERO, tuple((row,) for row in sol))
    return HermiteCheck(True, None, jet)


# --- construction -----------------------------------------------------------


def _unknown_index(k, i, j, lo, r):
    return ((k - lo) * r + i) * r + j


def construct_hermite_mask(
    r: int,
    m: int,
    support,
    interpolatory: bool = False,
    extra_constraints=None,
) -> MatSeq:
    """Solve for a Hermite mask of accuracy m+1 on the given support.

    The sum-rule identities at 0 and pi are imposed as exact linear
    constraints on the mask coefficients.  For r = 1 the matching filter is
    eliminated entirely (scalar masks have order m+1 sum rules iff
    a^(0) = 1 and a^ vanishes to order m+1 at pi).  For r >= 2 the matching
    jet is pinned to (1, i xi, ..., (i xi)^{r-1}); for interpolatory masks
    this is forced, and otherwise it selects a canonical solution family.
    Underdetermined systems are resolved by exact elimination with free
    variables set to zero; inconsistent systems raise Infeasible.

    `extra_constraints` is an iterable of (coeffs, rhs) rows where coeffs
    maps (k, i, j) mask positions to scalars.
    """
    if m < r - 1:
        raise ValueError("accuracy must be at least the scheme order: m >= r-1")
    lo, hi = support
    if hi < lo:
        raise ValueError("empty support interval")
    npos = hi - lo + 1
    nunk = npos * r * r
    rows: list[list[CRat]] = []
    rhs: list[CRat] = []

    def add_row(coeffs: dict, value):
        row = [ZERO] * nunk
        for (k, i, j), c in coeffs.items():
            if not (lo <= k <= hi):
                raise Infeasible(
                    f"constraint touches position {k} outside the support [{lo}, {hi}]"
                )
            row[_unknown_index(k, i, j, lo, r)] = cr(c)
        rows.append(row)
        rhs.append(cr(value))

    if r == 1:
        # scalar reduction: a^(0) = 1 and a^(j)(pi) = 0 for j = 0..m
        add_row({(k, 0, 0): ONE for k in range(lo, hi + 1)}, ONE)
        for j in range(m + 1):
            coeffs = {
                (k, 0, 0): CRat(0, -k) ** j * cr((-1) ** (k % 2))
                for k in range(lo, hi + 1)
            }
            add_row(coeffs, ZERO)
    else:
        ref = hermite_reference_jet(r, m)
        yrows = [ref.derivs[j][0] for j in range(m + 1)]
        # order-j derivative of y^(2 xi) a^(xi) - y^(xi) at 0, per column c
        for j in range(m + 1):
            for c in range(r):
                coeffs: dict = {}
                for k in range(j + 1):
                    w = cr(comb(j, k) * 2**k)
                    for pos in range(lo, hi + 1):
                        wk = w * CRat(0, -pos) ** (j - k)
                        for rho in range(r):
                            y = yrows[k][rho]
                            if y:
                                key = (pos, rho, c)
                                coeffs[key] = coeffs.get(key, ZERO) + wk * y
                add_row(coeffs, yrows[j][c])
        # order-j derivative of y^(2 xi) a^(xi+pi) at 0, per column c
        for j in range(m + 1):
            for c in range(r):
                coeffs = {}
                for k in range(j + 1):
                    w = cr(comb(j, k) * 2**k)
                    for pos in range(lo, hi + 1):
                        wk = w * CRat(0, -pos) ** (j - k) * cr((-1) ** (pos % 2))
                        for rho in range(r):
                            y = yrows[k][rho]
                            if y:
                                key = (pos, rho, c)
                                coeffs[key] = coeffs.get(key, ZERO) + wk * y
                add_row(coeffs, ZERO)

    if interpolatory:
        for i in range(r):
            for j in range(r):
                want = CRat(Fraction(1, 2 ** (i + 1))) if i == j else ZERO
                if lo <= 0 <= hi:
                    add_row({(0, i, j): ONE}, want)
                elif want:
                    raise Infeasible("interpolatory masks need 0 in their support")
        for k in range(lo, hi + 1):
            if k != 0 and k % 2 == 0:
                for i in range(r):
                    for j in range(r):
                        add_row({(k, i, j): ONE}, ZERO)

    for coeffs, value in extra_constraints or ():
        add_row(dict(coeffs), value)

    a_mat = tuple(tuple(row) for row in rows)
    b_mat = linalg.col_vec(rhs)
    sol = linalg.solve_general(a_mat, b_mat)
    if sol is None:
        deficit = len(rows) - linalg.rank(a_mat)
        raise Infeasible(
            f"no mask on [{lo}, {hi}] satisfies the {len(rows)} constraints "
            f"({nunk} unknowns, {deficit} inconsistent rows after elimination); "
            "widen the support"
        )
    coeffs_out = []
    for k in range(lo, hi + 1):
        mat_k = tuple(
            tuple(sol[_unknown_index(k, i, j, lo, r)][0] for j in range(r))
            for i in range(r)
        )
        coeffs_out.append(mat_k)
    mask = matseq(r, r, lo, coeffs_out)
    check = is_hermite_mask(mask, m + 1)
    if not check:
        raise Infeasible(
            f"constructed mask failed verification: {check.reason}"
        )  # pragma: no cover
    return mask
