"""Smoothness quantities and the Hermite-convergence decision.

The derived mask b of the factorization controls regularity through the
norm growth rate rho = 2 limsup ||b_n||^{1/n}; the smoothness exponent is
sm_p(a) = 1/p - log2(rho).  A Hermite scheme of order r converges with
limiting functions in C^m exactly when sm_infty(a) > m, provided the mask is
a Hermite mask of accuracy m+1 and the spectrum of the symbol at 0 is
admissible; those necessary conditions are decided exactly, the rate only
estimated (one-sided), so the verdict distinguishes "fails a necessary
condition" from "not decided yet".
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import DimensionMismatch, HermsubError
from .jets import Jet, POINT_ZERO
from .normal_form import factorize
from .seq import MatSeq, convolve, upsample
from .sum_rules import HermiteCheck, is_hermite_mask, sum_rules_order

__all__ = [
    "EigenCheck",
    "SmoothnessReport",
    "ConvergenceDecision",
    "eigen_check",
    "rho_estimate",
    "smoothness_estimate",
    "hermite_convergence_decision",
]

EIGEN_TOL = 1e-9


@dataclass(frozen=True)
class EigenCheck:
    passed: bool
    one_simple: bool
    other_moduli: tuple  # float moduli of the eigenvalues other than the simple 1
    threshold: float  # 2^{-m}


@dataclass(frozen=True)
class SmoothnessReport:
    sum_rule_order: int
    matching: Jet | None
    eigencheck: EigenCheck | None
    rho_estimates: tuple  # entry n-1 = 2 ||b_n||_p^{1/n}
    sm_estimate: float | None
    p: float
    failure_stage: str | None = None

    @property
    def rho_last(self):
        return self.rho_estimates[-1] if self.rho_estimates else None


@dataclass(frozen=True)
class ConvergenceDecision:
    kind: str  # "convergent" | "not_decided" | "fails_necessary_condition"
    m_target: int
    report: SmoothnessReport | None
    hermite: HermiteCheck | None
    eigen: EigenCheck | None
    margin: float

    @property
    def label(self) -> str:
        if self.kind == "convergent":
            return f"ConvergentInC{self.m_target}"
        if self.kind == "not_decided":
            return "NotDecided"
        return "FailsNecessaryCondition"


def _simple_one_exact(a0) -> bool:
    r = len(a0)
    m1 = linalg.mat_sub(a0, linalg.identity(r))
    return (
        linalg.rank(m1) == r - 1
        and linalg.rank(linalg.mat_mul(m1, m1)) == r - 1
    )


def eigen_check(a: MatSeq, m: int) -> EigenCheck:
    """1 must be a simple eigenvalue of a^(0), all others below 2^{-m}.

    Simplicity is decided exactly (rational rank of a^(0) - I and its
    square); only the modulus comparison is floating point, with a safety
    tolerance subtracted from the threshold.
    """
    if a.rows != a.cols:
        raise DimensionMismatch("eigenvalue check needs a square mask")
    a0 = a.symbol_jet(POINT_ZERO, 0).derivs[0]
    one_simple = _simple_one_exact(a0)
    eigvals = np.linalg.eigvals(np.array(linalg.mat_to_floats(a0)))
    moduli = sorted(abs(ev) for ev in eigvals)
    if one_simple:
        # drop the eigenvalue closest to 1 (its simplicity is already exact)
        drop = min(range(len(eigvals)), key=lambda i: abs(eigvals[i] - 1.0))
        others = tuple(
            sorted(abs(ev) for i, ev in enumerate(eigvals) if i != drop)
        )
    else:
        others = tuple(moduli)
    threshold = 2.0 ** (-m)
    passed = one_simple and all(x < threshold - EIGEN_TOL for x in others)
    return EigenCheck(passed, one_simple, others, threshold)


def _column_norm(entries, p) -> float:
    if p == math.inf:
        return max((abs(x) for x in entries), default=0.0)
    return float(sum(abs(x) ** p for x in entries)) ** (1.0 / p)


def _seq_norm(b: MatSeq, p) -> float:
    """Max over matrix columns of the entrywise l_p norm along the sequence."""
    norms = []
    for c in range(b.cols):
        entries = [m[i][c] for _, m in b.nonzero() for i in range(b.rows)]
        norms.append(_column_norm(entries, p))
    return max(norms, default=0.0)


def _root(value: float, n: int) -> float:
    """value^{1/n} via log2/exp2 so dyadic powers stay exact."""
    if value == 0.0:
        return 0.0
    return 2.0 ** (math.log2(value) / n)


def rho_estimate(b: MatSeq, n_levels: int, p=math.inf) -> list[float]:
    """The sequence 2 ||b_n||_p^{1/n}, n = 1..n_levels, from exact iterates.

    b_n is the n-fold derived mask (symbol b^(2^{n-1} xi) ... b^(xi)),
    computed exactly; only the norm and the n-th root are floating point.
    A one-point mask is recognized symbolically so the scalar case returns
    the exactly constant sequence 2|c|.
    """
    if n_levels < 1:
        raise ValueError("rho_estimate needs at least one level")
    sup = b.support()
    if sup is None:
        return [0.0] * n_levels
    if sup[0] == sup[1] and b.rows == 1:
        c = 2.0 * abs(b.coeffs[0][0][0])
        return [c] * n_levels
    if sup[0] == sup[1]:
        # single-point matrix mask: b_n is the n-th matrix power at one point
        out = []
        power = b.coeffs[0]
        for n in range(1, n_levels + 1):
            norm = max(
                _column_norm([power[i][c] for i in range(b.rows)], p)
                for c in range(b.cols)
            )
            out.append(2.0 * _root(norm, n))
            if n < n_levels:
                power = linalg.mat_mul(power, b.coeffs[0])
        return out
    out = []
    bn = b
    for n in range(1, n_levels + 1):
        out.append(2.0 * _root(_seq_norm(bn, p), n))
        if n < n_levels:
            bn = convolve(upsample(b, 2**n), bn)
    return out


def smoothness_estimate(a: MatSeq, n_levels: int = 10, p=math.inf) -> SmoothnessReport:
    """Pipeline: sum rules -> matching jet -> normal form -> rho -> sm_p.

    Uses the highest available sum-rule order.  The estimate reads off the
    largest computed level: sm = 1/p - log2(rho_{n_levels}); the whole rho
    sequence is reported so callers can judge stabilization (the limit is
    approached one-sidedly and no rate is guaranteed).
    """
    report = sum_rules_order(a)
    one_over_p = 0.0 if p == math.inf else 1.0 / p
    if report.order < 1:
        return SmoothnessReport(
            sum_rule_order=report.order,
            matching=report.matching,
            eigencheck=None,
            rho_estimates=(),
            sm_estimate=None,
            p=p,
            failure_stage=f"sum_rules: {report.failure}",
        )
    m = report.order - 1
    echeck = eigen_check(a, m)
    try:
        nf = factorize(a, report.order)
    except HermsubError as exc:  # pragma: no cover - guarded by order >= 1
        return SmoothnessReport(
            sum_rule_order=report.order,
            matching=report.matching,
            eigencheck=echeck,
            rho_estimates=(),
            sm_estimate=None,
            p=p,
            failure_stage=f"factorize: {exc}",
        )
    rho = rho_estimate(nf.b, n_levels, p)
    sm = one_over_p - math.log2(rho[-1]) if rho[-1] > 0 else math.inf
    return SmoothnessReport(
        sum_rule_order=report.order,
        matching=report.matching,
        eigencheck=echeck,
        rho_estimates=tuple(rho),
        sm_estimate=sm,
        p=p,
    )


def hermite_convergence_decision(
    a: MatSeq,
    r: int,
    m_target: int,
    n_levels: int = 10,
    margin: float = 0.05,
) -> ConvergenceDecision:
    """Decide C^{m_target} convergence of the Hermite scheme of order r.

    Necessary conditions (decided exactly): the mask is a Hermite mask of
    accuracy m_target+1 and the eigenvalue condition holds at m_target.
    Sufficient verdict: the sm_infty estimate exceeds m_target by `margin`.
    Estimation is one-sided, so when the necessary conditions hold but the
    estimate has not cleared the threshold the outcome is "not_decided".
    """
    if a.rows != r or a.cols != r:
        raise DimensionMismatch("mask size does not match the scheme order")
    if m_target < r - 1:
        raise ValueError("the smoothness target must satisfy m >= r-1")
    hermite = is_hermite_mask(a, m_target + 1)
    eigen = eigen_check(a, m_target)
    if not hermite.ok or not eigen.passed:
        return ConvergenceDecision(
            "fails_necessary_condition", m_target, None, hermite, eigen, margin
        )
    report = smoothness_estimate(a, n_levels=n_levels)
    if report.sm_estimate is not None and report.sm_estimate > m_target + margin:
        kind = "convergent"
    else:
        kind = "not_decided"
    return ConvergenceDecision(kind, m_target, report, hermite, eigen, margin)
