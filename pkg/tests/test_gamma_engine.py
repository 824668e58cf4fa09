# tests/test_gamma_engine.py
import cmath
import math
from fractions import Fraction

import pytest
import scipy.special as sc
from hypothesis import assume, given, settings, strategies as st

from src.errors import DomainError, PoleError, RepresentationOverflowError
from src.evaluation.gamma_engine import (
    ExtendedValue,
    gamma,
    gamma_ratio_sym,
    log_gamma,
    log_gamma_raw,
    log_sin_pi,
    recip_gamma_leading,
    reflection_residual,
    sin_pi,
    snap_integer,
    wrap_phase,
)
from tests.helpers import away_from_integers, away_from_poles

complex_points = st.complex_numbers(max_magnitude=12, allow_nan=False)


@pytest.mark.parametrize(
    "s, expected", [(1, 1.0), (5, 24.0), (0.5, math.sqrt(math.pi)), (-0.5, -2 * math.sqrt(math.pi))]
)
def test_gamma_values(s, expected):
    value = gamma(s)
    assert value.is_finite
    assert value.value.imag == 0
    assert value.value.real == pytest.approx(expected, rel=1e-13)


@pytest.mark.parametrize("s", [0, -1, -3, -3 + 1e-13])
def test_gamma_poles_are_infinite(s):
    assert gamma(s).is_infinite


def test_gamma_overflow_is_an_error_not_infinite():
    with pytest.raises(RepresentationOverflowError):
        gamma(200)
    assert log_gamma(200).log_magnitude == pytest.approx(math.lgamma(200), rel=1e-13)


def test_log_gamma_examples():
    one = log_gamma(1)
    assert one.log_magnitude == pytest.approx(0.0, abs=1e-14)
    assert one.phase == 0.0
    assert log_gamma(11).log_magnitude == pytest.approx(math.log(3628800), rel=1e-13)
    assert log_gamma(0.5).log_magnitude == pytest.approx(0.5 * math.log(math.pi), rel=1e-13)


@pytest.mark.parametrize("s", [0, -2, -7 + 1e-14j])
def test_log_gamma_raises_at_poles(s):
    with pytest.raises(PoleError):
        log_gamma_raw(s)


@settings(max_examples=300)
@given(complex_points)
def test_log_gamma_matches_scipy(s):
    assume(away_from_poles([s], 1e-3))
    ours = log_gamma(s)
    reference = complex(sc.loggamma(s))
    assert ours.log_magnitude == pytest.approx(reference.real, abs=1e-10, rel=1e-12)
    assert abs(wrap_phase(ours.phase - reference.imag)) < 1e-9
    assert -math.pi < ours.phase <= math.pi


@pytest.mark.parametrize("s", [-3.3 + 25j, 0.2 - 30j, -7.5 + 22j, 4.25 + 40j])
def test_log_gamma_far_from_the_real_axis(s):
    reference = complex(sc.loggamma(s))
    ours = log_gamma(s)
    assert ours.log_magnitude == pytest.approx(reference.real, abs=1e-9)
    assert abs(wrap_phase(ours.phase - reference.imag)) < 1e-9


@settings(max_examples=200)
@given(st.floats(min_value=-15, max_value=40, allow_nan=False))
def test_real_gamma_matches_scipy(s):
    assume(abs(s - round(s)) > 1e-3 or s > 0.5)
    assert gamma(s).value.real == pytest.approx(float(sc.gamma(s)), rel=1e-11)
    assert gamma(s).value.imag == 0


@settings(max_examples=300)
@given(complex_points)
def test_reflection_residual_is_small(s):
    assume(away_from_integers(s, 1e-3))
    assert reflection_residual(s) < 1e-10


@pytest.mark.parametrize("s, bound", [(0.5, 1e-13), (0.25 + 0.5j, 1e-12), (3.7, 1e-12)])
def test_reflection_residual_examples(s, bound):
    assert reflection_residual(s) < bound


def test_reflection_residual_rejects_integers():
    with pytest.raises(DomainError):
        reflection_residual(3)


@settings(max_examples=300)
@given(complex_points)
def test_recursion(s):
    assume(away_from_poles([s, s + 1], 0.1))
    g1 = gamma(s + 1).value
    g0 = gamma(s).value
    assert abs(g1 - s * g0) / abs(g1) < 1e-10


def test_gamma_ratio_sym_examples():
    assert gamma_ratio_sym(0, 0, 0) == pytest.approx(1.0, rel=1e-14)
    # Gamma(4)/Gamma(2); the right-hand form is singular here
    assert gamma_ratio_sym(0, -3, -1) == pytest.approx(6.0, rel=1e-13)


def test_gamma_ratio_sym_sides_agree():
    s, a, b = 0.3, 2, 5
    left = gamma(s - a + 1).value / gamma(s - b + 1).value
    right = (-1) ** (b - a) * gamma(b - s).value / gamma(a - s).value
    value = gamma_ratio_sym(s, a, b)
    assert value == pytest.approx(left, rel=1e-12)
    assert value == pytest.approx(right, rel=1e-12)


@settings(max_examples=300)
@given(complex_points, st.integers(-10, 10), st.integers(-10, 10))
def test_gamma_ratio_sym_against_scipy(s, a, b):
    assume(away_from_integers(s, 0.1))
    expected = cmath.exp(complex(sc.loggamma(s - a + 1)) - complex(sc.loggamma(s - b + 1)))
    assert abs(gamma_ratio_sym(s, a, b) - expected) / abs(expected) < 1e-10


def test_gamma_ratio_sym_denominator_pole_is_zero():
    assert gamma_ratio_sym(0, 0, 2) == 0


def test_gamma_ratio_sym_numerator_pole_raises():
    with pytest.raises(PoleError):
        gamma_ratio_sym(0, 1, 0)


@pytest.mark.parametrize(
    "n, x, expected", [(0, 1e-6, 1e-6), (3, 1e-6, -6e-6), (4, 0, 0), (2, 1e-3j, 2e-3j)]
)
def test_recip_gamma_leading(n, x, expected):
    assert recip_gamma_leading(n, x) == pytest.approx(expected, rel=1e-15, abs=0)


def test_recip_gamma_leading_rejects_negative_n():
    with pytest.raises(DomainError):
        recip_gamma_leading(-1, 1e-6)


@pytest.mark.parametrize("n", range(11))
@pytest.mark.parametrize("size", [1e-4, 1e-5])
def test_recip_gamma_leading_order(n, size):
    exact = 1 / gamma(size - n).value
    error = abs(exact - recip_gamma_leading(n, size))
    assert error <= math.factorial(n) * (n + 2) * size**2


@pytest.mark.parametrize("n", range(8))
@pytest.mark.parametrize("x", [1e-5, -2e-5, 1e-5j])
def test_recip_gamma_leading_against_scipy_rgamma(n, x):
    exact = complex(sc.rgamma(x - n))
    assert abs(exact - recip_gamma_leading(n, x)) <= math.factorial(n) * (n + 2) * abs(x) ** 2


def test_sin_pi_is_exact_at_integers_and_flips_sign():
    assert sin_pi(3) == 0
    assert sin_pi(2.5).real == pytest.approx(1.0, abs=1e-15)
    s, a, b = 0.37 + 0.2j, -2, 3
    assert sin_pi(b - s) == pytest.approx((-1) ** (b - a) * sin_pi(a - s), rel=1e-13)


def test_log_sin_pi_large_imaginary_part():
    s = 0.3 + 30j
    direct = cmath.log(cmath.sin(math.pi * s))
    ours = log_sin_pi(s)
    assert ours.real == pytest.approx(direct.real, rel=1e-13)
    assert abs(wrap_phase(ours.imag - direct.imag)) < 1e-9
    # cosh(pi * 400) overflows, the log form does not
    assert log_sin_pi(0.3 + 400j).real == pytest.approx(400 * math.pi - math.log(2), rel=1e-13)


def test_wrap_phase():
    assert wrap_phase(-math.pi) == math.pi
    assert wrap_phase(5.0) == pytest.approx(5.0 - 2 * math.pi)
    assert wrap_phase(0.25) == 0.25


def test_snap_integer():
    assert snap_integer(3 + 1e-13) == 3
    assert snap_integer(-2 + 1e-13j) == -2
    assert snap_integer(3 + 1e-11) is None
    assert snap_integer(0.5) is None


class TestExtendedValue:
    def test_pole_arithmetic(self):
        inf = ExtendedValue.infinite()
        zero = ExtendedValue.of_exact(0)
        assert (inf + inf).is_indeterminate
        assert (inf * zero).is_indeterminate
        assert (inf * ExtendedValue.of(2j)).is_infinite
        assert (inf + ExtendedValue.of_exact(1)).is_infinite

    def test_exact_arithmetic_stays_exact(self):
        value = ExtendedValue.of_exact(Fraction(1, 3)) * ExtendedValue.of_exact(6)
        assert value.exact == 2
        assert (ExtendedValue.of_exact(1) + ExtendedValue.of(0.5j)).value == 1 + 0.5j

    def test_value_of_infinite_raises(self):
        with pytest.raises(DomainError):
            ExtendedValue.infinite().value

    def test_to_dict(self):
        assert ExtendedValue.infinite().to_dict() == {"tag": "infinite"}
        assert ExtendedValue.of_exact(Fraction(-1, 2)).to_dict() == {
            "tag": "finite",
            "re": -0.5,
            "im": 0.0,
            "exact": "-1/2",
        }
        huge = ExtendedValue.of_exact(10**400).to_dict()
        assert huge["re"] is None and huge["exact"] == 10**400
