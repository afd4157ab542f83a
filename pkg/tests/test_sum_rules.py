from fractions import Fraction

import pytest

from hermsub.errors import Infeasible, NoSimpleEigenvalueOne, SingularResonance
from hermsub.jets import POINT_ZERO, jet_reciprocal
from hermsub.rational import CRat, I, ONE, ZERO
from hermsub.cascade import piecewise_from_pieces
from hermsub.seq import dirac, from_entries, matseq, scalar_seq, zero_seq
from hermsub.subdivision import is_interpolatory
from hermsub.sum_rules import (
    construct_hermite_mask,
    hermite_reference_jet,
    is_hermite_mask,
    matching_filter_jet,
    sum_rules_order,
)

from conftest import bspline_mask


@pytest.mark.parametrize("m", range(1, 7))
def test_bspline_orders(m):
    rep = sum_rules_order(bspline_mask(m))
    assert rep.order == m
    assert rep.failure is not None and rep.failure.kind == "pi_condition_fails"
    assert rep.failure.order == m


def test_matching_filter_recursion_b2(b2):
    jet = matching_filter_jet(b2, 2)
    assert jet.derivs[0][0][0] == ONE
    assert jet.derivs[1][0][0] == I
    assert jet.derivs[2][0][0] == CRat(Fraction(-5, 6))


def test_matching_filter_hat_moment_oracle(b2):
    # independent oracle: the hat on [0, 2] is the refinable limit of b2;
    # the matching jet is the jet of 1 / hat^ at 0, from exact moments
    hat = piecewise_from_pieces((0, 1, 2), ((0, 1), (2, -1)))
    assert hat.moment(0) == ONE
    assert hat.moment(1) == ONE
    assert hat.moment(2) == CRat(Fraction(7, 6))
    oracle = jet_reciprocal(hat.fourier_jet(2))
    assert oracle.derivs == matching_filter_jet(b2, 2).derivs


def test_matching_filter_errors():
    with pytest.raises(NoSimpleEigenvalueOne):
        matching_filter_jet(dirac(2), 1)


def test_matching_filter_normalization(b2):
    jet = matching_filter_jet(b2, 1, normalize_against=(Fraction(2),))
    assert jet.derivs[0][0][0] == CRat(Fraction(1, 2))


def test_matching_filter_resonance_on_cubic(hermite_cubic):
    # 2^3 * (1/8) = 1 makes the order-3 recursion step singular even though
    # order-4 sum rules hold (the pi-condition pins the free entry)
    jet2 = matching_filter_jet(hermite_cubic, 2)
    ref = hermite_reference_jet(2, 2)
    assert jet2.derivs == ref.derivs
    with pytest.raises(SingularResonance) as err:
        matching_filter_jet(hermite_cubic, 3)
    assert err.value.order == 3
    rep = sum_rules_order(hermite_cubic)
    assert rep.order == 4
    assert rep.matching.derivs == hermite_reference_jet(2, 3).derivs


def test_dirac_order_zero():
    rep = sum_rules_order(dirac(1))
    assert rep.order == 0
    assert rep.failure.kind == "pi_condition_fails" and rep.failure.order == 0


def test_diagonal_control_rejected_at_two(diagonal_control):
    rep = sum_rules_order(diagonal_control)
    assert rep.order == 1
    assert rep.failure.kind == "pi_condition_fails"
    assert rep.failure.order == 1


def test_no_simple_eigenvalue(diagonal_control):
    assert sum_rules_order(dirac(3)).failure.kind == "no_simple_eigenvalue_one"


def test_zero_condition_failure_reachable():
    # symbol at 0 is diag(1, 1/2); the order-1 step is singular and the
    # coupling entry makes its derivative condition inconsistent
    f = Fraction
    a = matseq(
        2,
        2,
        0,
        [
            ((f(1, 2), f(-1, 2)), (f(0), f(1, 2))),
            ((f(1, 2), f(0)), (f(0), f(0))),
            ((f(0), f(1, 2)), (f(0), f(0))),
        ],
    )
    rep = sum_rules_order(a)
    assert rep.order == 1
    assert rep.failure.kind == "zero_condition_fails"
    assert rep.failure.order == 1


def test_is_hermite_examples(b2, hermite_cubic):
    assert is_hermite_mask(b2, 2).ok
    chk = is_hermite_mask(hermite_cubic, 4)
    assert chk.ok
    assert chk.matching.derivs == hermite_reference_jet(2, 3).derivs
    diag = from_entries(
        [[bspline_mask(2), zero_seq(1, 1)], [zero_seq(1, 1), bspline_mask(2)]]
    )
    chk = is_hermite_mask(diag, 2)
    assert not chk.ok and "Hermite jet shape" in chk.reason


def test_is_hermite_accuracy_below_order():
    assert not is_hermite_mask(dirac(2), 1).ok


def test_construct_scalar_masks():
    assert construct_hermite_mask(1, 1, (0, 2)) == bspline_mask(2)
    assert construct_hermite_mask(1, 0, (0, 1)) == bspline_mask(1)
    for m in range(1, 7):
        assert construct_hermite_mask(1, m - 1, (0, m)) == bspline_mask(m)


def test_construct_interpolatory_cubic_matches_fit_oracle(hermite_cubic):
    got = construct_hermite_mask(2, 3, (-1, 1), interpolatory=True)
    assert got == hermite_cubic
    assert is_interpolatory(got)


def cubic_fit_midpoint(f0, d0, f1, d1):
    """Brute-force oracle: fit p in P_3 with p(0)=f0, p'(0)=d0, p(1)=f1,
    p'(1)=d1 by solving the 4x4 system, then evaluate (p, p') at 1/2."""
    from hermsub import linalg

    rows = [
        [ONE, ZERO, ZERO, ZERO],
        [ZERO, ONE, ZERO, ZERO],
        [ONE, ONE, ONE, ONE],
        [ZERO, ONE, CRat(2), CRat(3)],
    ]
    rhs = [[CRat(f0)], [CRat(d0)], [CRat(f1)], [CRat(d1)]]
    sol = linalg.solve_general(tuple(map(tuple, rows)), tuple(map(tuple, rhs)))
    c = [sol[i][0] for i in range(4)]
    h = CRat(Fraction(1, 2))
    val = c[0] + c[1] * h + c[2] * h**2 + c[3] * h**3
    der = c[1] + CRat(2) * c[2] * h + CRat(3) * c[3] * h**2
    return val, der


def test_odd_coset_reproduces_hermite_interpolation(hermite_cubic):
    # one refinement of data [f(k), f'(k)] must place the two-point cubic
    # Hermite interpolant's value/slope at every half-integer
    from hermsub.subdivision import hermite_refine

    data = [
        (Fraction(3), Fraction(-1)),
        (Fraction(1, 2), Fraction(2)),
        (Fraction(-2), Fraction(1, 3)),
    ]
    w0 = matseq(1, 2, 0, [((CRat(v), CRat(d)),) for v, d in data])
    w1 = hermite_refine(hermite_cubic, w0, 1).values
    for k in range(len(data) - 1):
        f0, d0 = data[k]
        f1, d1 = data[k + 1]
        val, der = cubic_fit_midpoint(f0, d0, f1, d1)
        assert w1.at(2 * k + 1) == ((val, der),)


def test_construct_infeasible_support():
    with pytest.raises(Infeasible):
        construct_hermite_mask(2, 3, (0, 0))
    with pytest.raises(Infeasible):
        construct_hermite_mask(1, 3, (0, 2))


def test_construct_non_interpolatory_r2():
    a = construct_hermite_mask(2, 1, (-1, 1))
    assert is_hermite_mask(a, 2).ok
    assert sum_rules_order(a).order >= 2


def test_constructed_mask_reports_requested_accuracy():
    for r, m, sup, interp in ((1, 2, (0, 3), False), (2, 3, (-1, 1), True)):
        a = construct_hermite_mask(r, m, sup, interpolatory=interp)
        assert sum_rules_order(a).order >= m + 1


def test_construct_with_user_constraints():
    # support [0, 3] at accuracy 2 leaves one degree of freedom; pinning a
    # coefficient through a user constraint selects a different valid mask
    base = construct_hermite_mask(1, 1, (0, 3))
    pinned = construct_hermite_mask(
        1, 1, (0, 3), extra_constraints=[({(3, 0, 0): 1}, Fraction(1, 8))]
    )
    assert base != pinned
    assert pinned.at(3)[0][0] == CRat(Fraction(1, 8))
    for mask in (base, pinned):
        assert sum_rules_order(mask).order >= 2
    # contradictory pins are infeasible
    with pytest.raises(Infeasible):
        construct_hermite_mask(
            1, 1, (0, 2), extra_constraints=[({(0, 0, 0): 1}, Fraction(1))]
        )


def test_construct_fresh_masks_satisfy_eigen_relations():
    # fresh (non-fixture) constructions feed the whole verification chain
    from hermsub.polynomials import eigen_polys, subdivide_poly

    for r, m, sup, interp in (
        (1, 2, (-1, 2), False),
        (2, 2, (-1, 1), False),
        (2, 3, (-2, 2), True),
    ):
        a = construct_hermite_mask(r, m, sup, interpolatory=interp)
        rep = sum_rules_order(a, max_probe=m + 1)
        assert rep.order == m + 1
        polys = eigen_polys(rep.matching.truncate(m), r)
        for j, p in enumerate(polys):
            assert subdivide_poly(a, p) == p.scale(Fraction(1, 2**j))


def test_complex_mask_end_to_end():
    # Gaussian-rational coefficients flow through construction, sum rules,
    # factorization and the rate estimates without leaving the exact field
    import math

    from hermsub.convergence import smoothness_estimate
    from hermsub.normal_form import factorize, normal_form_jets_ok
    from hermsub.seq import convolve, upsample

    a = construct_hermite_mask(
        1, 1, (0, 3),
        extra_constraints=[({(0, 0, 0): 1}, CRat(Fraction(1, 8), Fraction(1, 16)))],
    )
    assert a.at(0)[0][0] == CRat(Fraction(1, 8), Fraction(1, 16))
    rep = sum_rules_order(a)
    assert rep.order == 2
    assert is_hermite_mask(a, 2).ok
    nf = factorize(a, 2)
    assert convolve(upsample(nf.V, 2), nf.b) == convolve(a, nf.V)
    assert normal_form_jets_ok(nf.a_ring, nf.m)
    sm = smoothness_estimate(a, n_levels=6)
    # two-tap derived mask: the iterated coefficients are digit products, so
    # the rate is exactly 2 max|b| = sqrt(5)/8 at every level
    want = math.sqrt(5) / 8
    assert all(abs(x - want) < 1e-12 for x in sm.rho_estimates)


def test_coset_form_of_sum_rules(b2, hermite_cubic):
    # independent formulation through the even/odd stencils:
    #   y^(xi) a0^(xi) = 2^-1 y^(xi/2) + O(|xi|^{m+1})
    #   y^(xi) a1^(xi) = 2^-1 e^{i xi/2} y^(xi/2) + O(|xi|^{m+1})
    from hermsub import linalg
    from hermsub.jets import Jet, POINT_ZERO, jet_multiply, jet_scale_arg
    from hermsub.seq import coset

    for a in (b2, hermite_cubic):
        rep = sum_rules_order(a)
        m = rep.order - 1
        y = rep.matching.truncate(m)
        y_half = jet_scale_arg(y, Fraction(1, 2))
        half = Fraction(1, 2)
        exp_half = Jet(
            POINT_ZERO, tuple(((CRat(0, half) ** j,),) for j in range(m + 1))
        )
        lhs0 = jet_multiply(y, coset(a, 0).symbol_jet(POINT_ZERO, m))
        rhs0 = Jet(POINT_ZERO, tuple(linalg.mat_scale(d, half) for d in y_half.derivs))
        assert lhs0.derivs == rhs0.derivs
        lhs1 = jet_multiply(y, coset(a, 1).symbol_jet(POINT_ZERO, m))
        rhs1_full = jet_multiply(exp_half, y_half)
        rhs1 = Jet(
            POINT_ZERO, tuple(linalg.mat_scale(d, half) for d in rhs1_full.derivs)
        )
        assert lhs1.derivs == rhs1.derivs


def test_scalar_order_equals_zero_multiplicity_at_pi():
    # r = 1: the order of sum rules equals the multiplicity of the zero of
    # the symbol at pi, read off by exact division by (1 + e^{-i xi})
    from hermsub.errors import DivisionNotExact
    from hermsub.seq import exact_divide

    plus = scalar_seq(0, [1, 1])
    for m in range(1, 7):
        a = bspline_mask(m)
        mult = 0
        rem = a
        while True:
            try:
                rem = exact_divide(rem, plus)
            except DivisionNotExact:
                break
            mult += 1
        assert mult == m == sum_rules_order(a).order
