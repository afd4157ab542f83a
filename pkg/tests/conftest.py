from fractions import Fraction

import pytest

from hermsub.seq import MatSeq, convolve, from_entries, matseq, scalar_seq, zero_seq


def bspline_mask(m: int) -> MatSeq:
    """2^{-m} (1 + e^{-i xi})^m on [0, m], built by repeated averaging."""
    step = scalar_seq(0, [Fraction(1, 2), Fraction(1, 2)])
    out = scalar_seq(0, [1])
    for _ in range(m):
        out = convolve(out, step)
    return out


def hermite_cubic_mask() -> MatSeq:
    """The two-point cubic Hermite interpolatory mask, frozen from the
    interpolation oracle (cubic fit on [0,1], evaluated at the midpoint)."""
    f = Fraction
    return matseq(
        2,
        2,
        -1,
        [
            ((f(1, 4), f(3, 8)), (f(-1, 16), f(-1, 16))),
            ((f(1, 2), f(0)), (f(0), f(1, 4))),
            ((f(1, 4), f(-3, 8)), (f(1, 16), f(-1, 16))),
        ],
    )


def diagonal_control_mask() -> MatSeq:
    """diag of the order-1 B-spline symbol and its half: order 1 sum rules only."""
    b1 = bspline_mask(1)
    z = zero_seq(1, 1)
    return from_entries([[b1, z], [z, b1.scale(Fraction(1, 2))]])


@pytest.fixture
def b1():
    return bspline_mask(1)


@pytest.fixture
def b2():
    return bspline_mask(2)


@pytest.fixture
def hermite_cubic():
    return hermite_cubic_mask()


@pytest.fixture
def diagonal_control():
    return diagonal_control_mask()
