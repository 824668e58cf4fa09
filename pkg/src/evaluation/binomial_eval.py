# src/evaluation/binomial_eval.py
"""
binom(x, y) over the whole complex plane.

Integer pairs go to the exact lattice; the remaining points are sorted by
which of Gamma(x+1), Gamma(y+1), Gamma(x-y+1) sits at a pole. Only the
GammaRegular class touches floating-point gamma functions.
"""

import logging
from enum import Enum
from typing import Union

from src.evaluation.gamma_engine import (
    ExtendedValue,
    as_complex,
    log_gamma_raw,
    recombine,
    snap_integer,
)
from src.lattice.exact_lattice import LatticePoint, binom_lattice

logger = logging.getLogger(__name__)

Number = Union[complex, float, int]


class PointClass(Enum):
    INTEGER_LATTICE = "IntegerLattice"
    NEGATIVE_INT_X_NON_INT_Y = "NegativeIntXNonIntY"
    GAMMA_REGULAR = "GammaRegular"
    DENOMINATOR_POLE_ZERO = "DenominatorPoleZero"


def _is_negative_integer(s: complex) -> bool:
    m = snap_integer(s)
    return m is not None and m < 0


def classify_point(x: Number, y: Number) -> PointClass:
    """Sorts (x, y) by the poles of the three gamma functions in the definition.

    At most one denominator gamma can be singular off the lattice, so a
    denominator pole alone means the coefficient is zero.
    """
    x, y = as_complex(x), as_complex(y)
    x_int, y_int = snap_integer(x), snap_integer(y)
    if x_int is not None and y_int is not None:
        return PointClass.INTEGER_LATTICE
    if x_int is not None and x_int < 0:
        return PointClass.NEGATIVE_INT_X_NON_INT_Y
    if _is_negative_integer(y) or _is_negative_integer(x - y):
        return PointClass.DENOMINATOR_POLE_ZERO
    return PointClass.GAMMA_REGULAR


def binom_complex(x: Number, y: Number) -> ExtendedValue:
    """Gamma(x+1) / (Gamma(y+1) Gamma(x-y+1)) with the lattice and pole cases resolved.

    Args:
        x: Upper argument, any complex number.
        y: Lower argument, any complex number.

    Returns:
        An exact Finite value on the lattice, Infinite for a negative-integer x
        with non-integer y, Finite 0 when only a denominator gamma is singular,
        and the gamma-function quotient otherwise. Real inputs give a real result.

    Raises:
        RepresentationOverflowError: If the finite result exceeds the double range.
    """
    x, y = as_complex(x), as_complex(y)
    point_class = classify_point(x, y)

    if point_class is PointClass.INTEGER_LATTICE:
        n, k = snap_integer(x), snap_integer(y)
        return ExtendedValue.of_exact(binom_lattice(LatticePoint(n, k)))
    if point_class is PointClass.NEGATIVE_INT_X_NON_INT_Y:
        return ExtendedValue.infinite()
    if point_class is PointClass.DENOMINATOR_POLE_ZERO:
        return ExtendedValue.of(0j)

    lg = log_gamma_raw(x + 1) - log_gamma_raw(y + 1) - log_gamma_raw(x - y + 1)
    logger.debug(f"binom_complex({x}, {y}): log-magnitude {lg.real:.6g}")
    return ExtendedValue.of(recombine(lg.real, lg.imag, x.imag == 0 and y.imag == 0))


def binom_value(x: Number, y: Number) -> complex:
    """Complex rendering of binom_complex for callers that need a plain number.

    Raises:
        DomainError: If the value is Infinite.
        RepresentationOverflowError: If the value exceeds the double range.
    """
    return binom_complex(x, y).value
