# tests/test_exact_lattice.py
import pytest
from hypothesis import given, strategies as st

from src.errors import DomainError
from src.lattice.exact_lattice import (
    LatticePoint,
    LatticeWindow,
    binom_lattice,
    binom_neg,
    binom_nonneg,
    factorial,
    factorial_ratio,
    in_zero_region,
    lattice_table,
    pascal_oracle,
    sign_of_parity,
)


@pytest.mark.parametrize("n, expected", [(0, 1), (1, 1), (5, 120)])
def test_factorial(n, expected):
    assert factorial(n) == expected


def test_factorial_rejects_negative():
    with pytest.raises(DomainError):
        factorial(-1)


@pytest.mark.parametrize(
    "n, k, expected", [(5, 2, 10), (5, 7, 0), (0, 0, 1), (5, -1, 0)]
)
def test_binom_nonneg(n, k, expected):
    assert binom_nonneg(LatticePoint(n, k)) == expected


def test_binom_nonneg_rejects_negative_n():
    with pytest.raises(DomainError):
        binom_nonneg(LatticePoint(-1, 0))


@pytest.mark.parametrize(
    "n, k, expected", [(-1, 0, 1), (-4, 2, 10), (-3, -5, 6), (-2, -1, 0)]
)
def test_binom_neg(n, k, expected):
    assert binom_neg(LatticePoint(n, k)) == expected


def test_binom_neg_rejects_nonnegative_n():
    with pytest.raises(DomainError):
        binom_neg(LatticePoint(0, 0))


@pytest.mark.parametrize(
    "n, k, expected", [(6, 3, 20), (-1, 1, -1), (-1, -1, 1), (-5, 3, -35)]
)
def test_binom_lattice(n, k, expected):
    assert binom_lattice(LatticePoint(n, k)) == expected


def test_sign_of_parity_negative_exponents():
    assert [sign_of_parity(e) for e in (-3, -2, -1, 0, 1, 2)] == [-1, 1, -1, 1, -1, 1]


def test_agrees_with_factorial_ratio():
    for n in range(201):
        for k in range(n + 1):
            p = LatticePoint(n, k)
            assert binom_lattice(p) == factorial_ratio(p), p


def test_agrees_with_pascal_recurrence():
    window = LatticeWindow.square(-64, 64)
    assert pascal_oracle(window) == lattice_table(window)


def test_pascal_oracle_small_rows():
    window = LatticeWindow(-1, 4, 0, 4)
    table = pascal_oracle(window)
    rows = {n: [table[LatticePoint(n, k)] for k in range(5)] for n in range(-1, 5)}
    assert rows[0] == [1, 0, 0, 0, 0]
    assert rows[2] == [1, 2, 1, 0, 0]
    assert rows[4] == [1, 4, 6, 4, 1]
    assert rows[-1][:4] == [1, -1, 1, -1]


def test_negation_cases_exhaustive():
    for n in range(-64, 0):
        for k in range(0, 65):
            expected = sign_of_parity(k) * binom_lattice(LatticePoint(-n + k - 1, k))
            assert binom_lattice(LatticePoint(n, k)) == expected
        for k in range(-64, n + 1):
            expected = sign_of_parity(n - k) * binom_lattice(LatticePoint(-k - 1, n - k))
            assert binom_lattice(LatticePoint(n, k)) == expected
        for k in range(n + 1, 0):
            assert binom_lattice(LatticePoint(n, k)) == 0


def test_zero_region_matches_values():
    for p in LatticeWindow.square(-12, 12).points():
        assert in_zero_region(p) == (binom_lattice(p) == 0), p


def test_window_order_and_size():
    window = LatticeWindow(-1, 0, 2, 3)
    assert window.cell_count == 4
    assert list(window.points()) == [
        LatticePoint(-1, 2),
        LatticePoint(-1, 3),
        LatticePoint(0, 2),
        LatticePoint(0, 3),
    ]


def test_empty_window_is_rejected():
    with pytest.raises(DomainError):
        LatticeWindow(2, 1, 0, 0)


def test_large_values_stay_exact():
    value = binom_lattice(LatticePoint(-2000, 1000))
    assert value == binom_lattice(LatticePoint(2999, 1000))
    assert value.bit_length() > 1024


@given(st.integers(min_value=0, max_value=300), st.integers(min_value=-20, max_value=320))
def test_symmetry_for_nonnegative_n(n, k):
    assert binom_lattice(LatticePoint(n, k)) == binom_lattice(LatticePoint(n, n - k))


@given(st.integers(min_value=-150, max_value=150), st.integers(min_value=-150, max_value=150))
def test_addition_off_the_origin(n, k):
    if (n, k) == (0, 0):
        return
    assert binom_lattice(LatticePoint(n, k)) == binom_lattice(
        LatticePoint(n - 1, k)
    ) + binom_lattice(LatticePoint(n - 1, k - 1))
