from fractions import Fraction

from hermsub.cascade import (
    build_initial,
    cascade_run,
    filter_correction_jets,
    hermite_bump,
    piecewise_from_pieces,
    theta_eval,
)
from hermsub.rational import CRat, ONE, ZERO
from hermsub.seq import convolve, dirac
from hermsub.subdivision import basis_samples, iterate_mask
from hermsub.sum_rules import sum_rules_order


def test_theta_interpolation_property():
    for m in (1, 2, 3):
        for ell in range(m + 1):
            for j in range(m + 1):
                for k in (-2, -1, 0, 1, 2):
                    want = ONE if (ell == j and k == 0) else ZERO
                    assert hermite_bump(ell, m).eval(k, deriv=j) == want


def test_theta_eval_examples():
    assert theta_eval(0, 1, 0) == ONE
    assert theta_eval(0, 1, Fraction(1, 2)) == CRat(Fraction(1, 2))
    for ell in (1, 2):
        for k in (-1, 0, 1):
            if not (ell == 0 and k == 0):
                assert theta_eval(ell, 2, k) == ZERO


def test_theta_symmetry():
    for x in (Fraction(1, 3), Fraction(2, 5), Fraction(7, 8)):
        assert theta_eval(0, 1, -x) == theta_eval(0, 1, x)
        assert theta_eval(1, 1, -x) == -theta_eval(1, 1, x)


def test_bump_matches_closed_formula():
    for m in (1, 3):
        for ell in range(m + 1):
            b = hermite_bump(ell, m)
            for t in range(-9, 10):
                x = Fraction(t, 8)
                assert b.eval(x) == theta_eval(ell, m, x)


def test_bumps_are_smooth_through_declared_order():
    for m in (1, 2, 3):
        for ell in range(m + 1):
            assert hermite_bump(ell, m).continuous_through(m)
    # the hat is continuous but not C^1
    hat = piecewise_from_pieces((0, 1, 2), ((0, 1), (2, -1)))
    assert hat.continuous_through(0)
    assert not hat.continuous_through(1)
    # corrected first components of initial vectors stay C^m
    iv = build_initial(2, 3)
    assert all(c.continuous_through(3) for c in iv.components)


def test_piecewise_calculus():
    hat = piecewise_from_pieces((0, 1, 2), ((0, 1), (2, -1)))
    assert hat.eval(Fraction(1, 2)) == CRat(Fraction(1, 2))
    assert hat.eval(3) == ZERO
    d = hat.derivative()
    assert d.eval(Fraction(1, 2)) == ONE
    assert d.eval(Fraction(3, 2)) == CRat(-1)
    shifted = hat.shift(2)
    assert shifted.eval(Fraction(5, 2)) == CRat(Fraction(1, 2))
    s = hat + hat.shift(1).scale(-1)
    assert s.eval(Fraction(1, 2)) == CRat(Fraction(1, 2))
    assert s.eval(Fraction(3, 2)) == ZERO  # 1/2 - 1/2


def test_build_initial_small_cases():
    # r=2, m=1: no correction terms at all
    iv = build_initial(2, 1)
    assert iv.correctors is None
    assert iv.value_matrix(0) == ((ONE, ZERO), (ZERO, ONE))
    # r=1, m=1: h1 = theta0 + u1 * theta1 keeps h1(k) = delta(k)
    iv = build_initial(1, 1)
    assert iv.components[0].eval(0) == ONE
    for k in (-2, -1, 1, 2):
        assert iv.components[0].eval(k) == ZERO


def test_build_initial_r2_m3_interpolation():
    iv = build_initial(2, 3)
    for k in range(-4, 5):
        want = ((ONE, ZERO), (ZERO, ONE)) if k == 0 else ((ZERO,) * 2,) * 2
        assert iv.value_matrix(k) == want


def test_cascade_hat_fixed_point(b2):
    hat = piecewise_from_pieces((0, 1, 2), ((0, 1), (2, -1)))
    for n in (1, 4):
        s = cascade_run(b2, [hat], n)
        assert all(
            v[0][0] == hat.eval(x) for x, v in zip(s.abscissae(), s.values)
        )


def test_cascade_delta_collapse():
    a = dirac(1).scale(Fraction(1, 2))
    hat = piecewise_from_pieces((0, 1, 2), ((0, 1), (2, -1)))
    s = cascade_run(a, [hat], 3, window=(-1, 3))
    for x, v in zip(s.abscissae(), s.values):
        assert v[0][0] == hat.eval(8 * x)


def test_subdivision_cascade_consistency(hermite_cubic):
    iv = build_initial(2, 3)
    for n in range(1, 7):
        f = cascade_run(hermite_cubic, iv, n, window=(-2, 2))
        b = basis_samples(hermite_cubic, n, window=(-2, 2))
        assert f.k0 == b.k0 and f.values == b.values


def test_interpolation_persistence_of_samples(hermite_cubic):
    iv = build_initial(2, 3)
    prev = cascade_run(hermite_cubic, iv, 1, window=(-2, 2))
    for n in range(2, 6):
        cur = cascade_run(hermite_cubic, iv, n, window=(-2, 2))
        for i, v in enumerate(prev.values):
            assert cur.at_index(2 * (prev.k0 + i)) == v
        prev = cur


def _common_abscissa_diffs(a, iv, levels, window):
    runs = [cascade_run(a, iv, n, window=window) for n in range(1, levels + 1)]
    diffs = []
    for prev, cur in zip(runs, runs[1:]):
        dmax = 0.0
        for i, v in enumerate(prev.values):
            w = cur.at_index(2 * (prev.k0 + i))
            dmax = max(
                dmax,
                max(abs(a_ - b_) for ra, rb in zip(v, w) for a_, b_ in zip(ra, rb)),
            )
        diffs.append(dmax)
    return diffs


def test_successive_difference_decay(b2, hermite_cubic):
    # interpolatory fixture: differences on common abscissae vanish exactly
    diffs = _common_abscissa_diffs(hermite_cubic, build_initial(2, 3), 6, (-2, 2))
    assert diffs == [0.0] * 5
    # non-interpolatory hat scheme (sm = 1): geometric-style decay; the
    # measured ratios are recorded, no sharp constant asserted
    diffs = _common_abscissa_diffs(b2, build_initial(1, 1), 7, (-1, 3))
    assert diffs[0] > 0
    assert all(d2 < d1 for d1, d2 in zip(diffs, diffs[1:]))
    assert diffs[-1] < diffs[0] / 16


def test_filter_correction_jets_and_corrected_run(b2):
    rep = sum_rules_order(b2)
    cjets = filter_correction_jets(rep.matching.truncate(1), 1)
    assert cjets[0].derivs[0][0][0] == ONE
    assert cjets[0].derivs[1][0][0] == CRat(0, 1)  # c' = y'(0) = i
    iv = build_initial(1, 1, matching=rep.matching.truncate(1))
    assert iv.correctors is not None
    assert iv.min_corrector_modulus is not None and iv.min_corrector_modulus > 0
    # exact identity: F_n(2^-n k) = 2^n (a_n * B)(k) D^-n with B = diag(d)
    n = 3
    run = cascade_run(b2, iv, n, window=(-3, 5))
    an = iterate_mask(b2, n)
    anb = convolve(an, iv.correctors[0])
    for i, v in enumerate(run.values):
        k = run.k0 + i
        assert v[0][0] == anb.at(k)[0][0] * CRat(2**n)


def test_corrector_trivial_for_interpolatory(hermite_cubic):
    rep = sum_rules_order(hermite_cubic)
    iv = build_initial(2, 3, matching=rep.matching.truncate(3))
    assert iv.correctors is None  # c-jets are trivial, no correction applied
