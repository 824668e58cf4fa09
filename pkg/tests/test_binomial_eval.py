# tests/test_binomial_eval.py
import cmath
import math

import mpmath
import pytest
import scipy.special as sc
from hypothesis import assume, given, settings, strategies as st

from src.errors import DomainError, RepresentationOverflowError
from src.evaluation.binomial_eval import PointClass, binom_complex, binom_value, classify_point
from tests.helpers import away_from_poles

complex_points = st.builds(
    complex,
    st.floats(min_value=-8, max_value=8, allow_nan=False),
    st.floats(min_value=-4, max_value=4, allow_nan=False),
)


@pytest.mark.parametrize(
    "x, y, expected",
    [
        (-4, 2, PointClass.INTEGER_LATTICE),
        (-4.0 + 1e-13, 2 - 1e-13j, PointClass.INTEGER_LATTICE),
        (-2, 0.5, PointClass.NEGATIVE_INT_X_NON_INT_Y),
        (0.5, 0.25, PointClass.GAMMA_REGULAR),
        (3, 0.5, PointClass.GAMMA_REGULAR),
        (0.5, -2, PointClass.DENOMINATOR_POLE_ZERO),
        (2.5, 3.5, PointClass.DENOMINATOR_POLE_ZERO),
    ],
)
def test_classify_point(x, y, expected):
    assert classify_point(x, y) is expected


def test_lattice_values_are_exact():
    value = binom_complex(-4, 2)
    assert value.exact == 10
    assert binom_complex(-3.0, -5.0).exact == 6


def test_infinite_set():
    assert binom_complex(-2, 0.5).is_infinite
    assert binom_complex(-1, 0.25 + 1j).is_infinite
    with pytest.raises(DomainError):
        binom_value(-2, 0.5)


def test_denominator_pole_gives_zero():
    assert binom_complex(0.5, -2).value == 0
    assert binom_complex(2.5, 3.5).value == 0


def test_diagonal_is_one():
    assert binom_value(0.5, 0.5) == pytest.approx(1.0, rel=1e-14)


def test_gamma_regular_against_scipy():
    expected = sc.gamma(1.5) / (sc.gamma(1.25) * sc.gamma(1.25))
    assert binom_value(0.5, 0.25).real == pytest.approx(expected, rel=1e-12)


@pytest.mark.parametrize(
    "x, y, expected",
    [
        (-0.5, 3, -0.3125),
        (0.5, 2, -0.125),
        (3, 0.5, 32 / (5 * math.pi)),
        (1 + 1j, 1, 1 + 1j),
    ],
)
def test_gamma_regular_values(x, y, expected):
    value = binom_value(x, y)
    assert value == pytest.approx(expected, rel=1e-12)
    if isinstance(x, (int, float)):
        assert value.imag == 0


@given(complex_points)
def test_lower_zero_is_one(x):
    assert binom_value(x, 0) == pytest.approx(1.0, rel=1e-12)


@settings(max_examples=300)
@given(complex_points, complex_points)
def test_matches_scipy_loggamma(x, y):
    assume(away_from_poles([x + 1, y + 1, x - y + 1], 1e-2))
    expected = cmath.exp(
        complex(sc.loggamma(x + 1)) - complex(sc.loggamma(y + 1)) - complex(sc.loggamma(x - y + 1))
    )
    assert abs(binom_value(x, y) - expected) / abs(expected) < 1e-9


def test_overflow_is_an_error():
    with pytest.raises(RepresentationOverflowError):
        binom_complex(2000.5, 1000.25)
    huge = binom_complex(2000, 1000)
    assert huge.exact > 0
    with pytest.raises(RepresentationOverflowError):
        huge.value


def test_rejects_non_finite_arguments():
    with pytest.raises(DomainError):
        binom_complex(float("nan"), 1)


@pytest.mark.parametrize(
    "x, y",
    [
        (7.25, 2.5),
        (-3.5, 1.75),
        (0.5 + 2j, 1 - 1j),
        (-6.3 + 0.1j, 2.2),
        (12 + 30j, 5 - 4j),
    ],
)
def test_matches_mpmath_binomial(x, y):
    with mpmath.workdps(30):
        expected = complex(mpmath.binomial(mpmath.mpc(x), mpmath.mpc(y)))
    assert abs(binom_value(x, y) - expected) / abs(expected) < 1e-10
