# src/evaluation/gamma_engine.py
"""
Complex gamma-function machinery.

Everything is computed in log space: a Lanczos approximation for Re(s) >= 1/2
and the reflection formula below that. Poles (nonpositive integers, within the
snap radius) produce the Infinite value; exceeding the double range is a
separate RepresentationOverflowError.
"""

import cmath
import logging
import math
import sys
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, Optional, Tuple, Union

import numpy as np

from src.errors import DomainError, PoleError, RepresentationOverflowError
from src.lattice.exact_lattice import factorial, sign_of_parity
from src.management.config import SNAP_RADIUS

logger = logging.getLogger(__name__)

ComplexValue = complex
ExactNumber = Union[int, Fraction]

# Lanczos approximation, g = 7, n = 9 (about 15 significant digits on Re(s) >= 1/2)
LANCZOS_G: float = 7.0
LANCZOS_COEF: np.ndarray = np.array([
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
])
LANCZOS_COEF.setflags(write=False)
_LANCZOS_OFFSETS: np.ndarray = np.arange(1, len(LANCZOS_COEF), dtype=float)

HALF_LOG_2PI: float = 0.5 * math.log(2.0 * math.pi)
LOG_PI: float = math.log(math.pi)
MAX_LOG: float = math.log(sys.float_info.max)

# Reflection threshold: Re(s) below this goes through Gamma(1 - s)
REFLECTION_THRESHOLD: float = 0.5
# |Im s| above which log sin(pi s) is taken from its exponential form
_LARGE_IMAG: float = 20.0


class ValueTag(Enum):
    FINITE = "finite"
    INFINITE = "infinite"
    INDETERMINATE = "indeterminate"


@dataclass(frozen=True)
class ExtendedValue:
    """A finite complex number, the unsigned pole value, or an indeterminate 0*inf form.

    Finite values may carry an exact rational (`exact`) alongside, or instead
    of, the complex rendering (`number`).
    """

    tag: ValueTag
    number: Optional[complex] = None
    exact: Optional[ExactNumber] = None

    @classmethod
    def of(cls, value: complex) -> "ExtendedValue":
        return cls(ValueTag.FINITE, number=complex(value))

    @classmethod
    def of_exact(cls, value: ExactNumber) -> "ExtendedValue":
        return cls(ValueTag.FINITE, exact=value)

    @classmethod
    def infinite(cls) -> "ExtendedValue":
        return cls(ValueTag.INFINITE)

    @classmethod
    def indeterminate(cls) -> "ExtendedValue":
        return cls(ValueTag.INDETERMINATE)

    @property
    def is_finite(self) -> bool:
        return self.tag is ValueTag.FINITE

    @property
    def is_infinite(self) -> bool:
        return self.tag is ValueTag.INFINITE

    @property
    def is_indeterminate(self) -> bool:
        return self.tag is ValueTag.INDETERMINATE

    @property
    def is_exact(self) -> bool:
        return self.exact is not None

    @property
    def value(self) -> complex:
        """The complex rendering of a finite value.

        Raises:
            DomainError: If the value is not finite.
            RepresentationOverflowError: If an exact value exceeds the double range.
        """
        if not self.is_finite:
            raise DomainError(f"{self.tag.value} value has no complex rendering")
        if self.number is not None:
            return self.number
        try:
            return complex(float(self.exact))
        except OverflowError as e:
            raise RepresentationOverflowError(
                f"exact value with {abs(int(self.exact)).bit_length()} bits exceeds double range"
            ) from e

    def is_zero(self) -> bool:
        if not self.is_finite:
            return False
        if self.exact is not None:
            return self.exact == 0
        return self.number == 0

    def to_dict(self) -> Dict[str, Any]:
        """JSON-ready form: tag, re and im, plus `exact` on the lattice channel.

        An exact value beyond the double range keeps its `exact` field and gets
        null re/im.
        """
        payload: Dict[str, Any] = {"tag": self.tag.value}
        if not self.is_finite:
            return payload
        try:
            z = self.value
            payload["re"], payload["im"] = z.real, z.imag
        except RepresentationOverflowError:
            payload["re"], payload["im"] = None, None
        if self.exact is not None:
            payload["exact"] = self.exact if isinstance(self.exact, int) else str(self.exact)
        return payload

    def __neg__(self) -> "ExtendedValue":
        if not self.is_finite:
            return self
        if self.exact is not None:
            return ExtendedValue.of_exact(-self.exact)
        return ExtendedValue.of(-self.value)

    def __add__(self, other: "ExtendedValue") -> "ExtendedValue":
        if self.is_indeterminate or other.is_indeterminate:
            return ExtendedValue.indeterminate()
        if self.is_infinite and other.is_infinite:
            # Unsigned poles may cancel
            return ExtendedValue.indeterminate()
        if self.is_infinite or other.is_infinite:
            return ExtendedValue.infinite()
        if self.is_exact and other.is_exact:
            return ExtendedValue.of_exact(self.exact + other.exact)
        return ExtendedValue.of(self.value + other.value)

    def __sub__(self, other: "ExtendedValue") -> "ExtendedValue":
        return self + (-other)

    def __mul__(self, other: "ExtendedValue") -> "ExtendedValue":
        if self.is_indeterminate or other.is_indeterminate:
            return ExtendedValue.indeterminate()
        if self.is_infinite or other.is_infinite:
            if self.is_zero() or other.is_zero():
                return ExtendedValue.indeterminate()
            return ExtendedValue.infinite()
        if self.is_exact and other.is_exact:
            return ExtendedValue.of_exact(self.exact * other.exact)
        return ExtendedValue.of(self.value * other.value)


@dataclass(frozen=True)
class LogGammaValue:
    """log|Gamma(s)| and the principal phase of Gamma(s), in (-pi, pi]."""

    log_magnitude: float
    phase: float

    def to_complex(self) -> complex:
        if self.log_magnitude > MAX_LOG:
            raise RepresentationOverflowError(
                f"log-magnitude {self.log_magnitude:.6g} exceeds double range"
            )
        return cmath.rect(math.exp(self.log_magnitude), self.phase)


def as_complex(value: Union[complex, float, int]) -> complex:
    """Coerces a number to complex, rejecting NaN and infinite components."""
    z = complex(value)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise DomainError(f"non-finite argument {value!r}")
    return z


def snap_integer(s: complex) -> Optional[int]:
    """The integer s lies within the snap radius of, or None."""
    s = complex(s)
    if abs(s.imag) > SNAP_RADIUS:
        return None
    nearest = round(s.real)
    if abs(s.real - nearest) > SNAP_RADIUS:
        return None
    return int(nearest)


def is_pole(s: complex) -> bool:
    """True when s snaps to a nonpositive integer."""
    m = snap_integer(s)
    return m is not None and m <= 0


def pole_distance(s: complex) -> float:
    """Distance from s to the nearest nonpositive integer."""
    nearest = min(0, round(s.real))
    return abs(s - nearest)


def wrap_phase(phase: float) -> float:
    """Reduces a phase into (-pi, pi]."""
    wrapped = math.remainder(phase, 2.0 * math.pi)
    if wrapped <= -math.pi:
        wrapped += 2.0 * math.pi
    return wrapped


def sin_pi(s: complex) -> complex:
    """sin(pi*s) with exact reduction of Re(s) to [-1/2, 1/2]."""
    s = complex(s)
    nearest = round(s.real)
    reduced = complex(s.real - nearest, s.imag)
    angle = complex(math.pi * reduced.real, math.pi * reduced.imag)
    return sign_of_parity(int(nearest)) * cmath.sin(angle)


def log_sin_pi(s: complex) -> complex:
    """log sin(pi*s), finite for any |Im s| (no cosh overflow)."""
    s = complex(s)
    nearest = round(s.real)
    r = complex(s.real - nearest, s.imag)
    parity_phase = math.pi if int(nearest) % 2 else 0.0
    if abs(r.imag) < _LARGE_IMAG:
        return cmath.log(sin_pi(r)) + complex(0.0, parity_phase)
    w = math.pi * r
    if r.imag > 0:
        # sin w = e^{-iw} (1 - e^{2iw}) (i/2)
        out = -1j * w + cmath.log(1.0 - cmath.exp(2j * w)) + cmath.log(0.5j)
    else:
        out = 1j * w + cmath.log(1.0 - cmath.exp(-2j * w)) + cmath.log(-0.5j)
    return out + complex(0.0, parity_phase)


def _lanczos_log_gamma(z: complex) -> complex:
    z1 = z - 1.0
    series = LANCZOS_COEF[0] + np.sum(LANCZOS_COEF[1:] / (z1 + _LANCZOS_OFFSETS))
    t = z1 + LANCZOS_G + 0.5
    return HALF_LOG_2PI + (z1 + 0.5) * cmath.log(t) - t + cmath.log(complex(series))


def log_gamma_raw(s: complex) -> complex:
    """log Gamma(s) as a complex number, imaginary part not reduced.

    Raises:
        PoleError: If s snaps to a nonpositive integer.
    """
    s = as_complex(s)
    if is_pole(s):
        raise PoleError(f"Gamma has a pole at {s}")
    if s.real >= REFLECTION_THRESHOLD:
        return _lanczos_log_gamma(s)
    return LOG_PI - log_sin_pi(s) - _lanczos_log_gamma(1.0 - s)


def log_gamma(s: ComplexValue) -> LogGammaValue:
    """Principal log-gamma: log|Gamma(s)| and arg Gamma(s) in (-pi, pi]."""
    lg = log_gamma_raw(s)
    return LogGammaValue(lg.real, wrap_phase(lg.imag))


def recombine(log_magnitude: float, phase: float, real_input: bool) -> complex:
    """exp(log_magnitude + i*phase); real when the inputs were real.

    Raises:
        RepresentationOverflowError: If the magnitude exceeds the double range.
    """
    if log_magnitude > MAX_LOG:
        raise RepresentationOverflowError(f"log-magnitude {log_magnitude:.6g} exceeds double range")
    phase = wrap_phase(phase)
    magnitude = math.exp(log_magnitude)
    if real_input:
        return complex(magnitude if abs(phase) < math.pi / 2 else -magnitude, 0.0)
    return cmath.rect(magnitude, phase)


def gamma(s: ComplexValue) -> ExtendedValue:
    """Gamma(s): Finite away from the poles, Infinite at a nonpositive integer.

    Raises:
        RepresentationOverflowError: If |Gamma(s)| exceeds the double range.
    """
    s = as_complex(s)
    if is_pole(s):
        return ExtendedValue.infinite()
    lg = log_gamma_raw(s)
    return ExtendedValue.of(recombine(lg.real, lg.imag, s.imag == 0))


def gamma_ratio_sym(s: ComplexValue, a: int, b: int) -> complex:
    """Gamma(s-a+1)/Gamma(s-b+1), through whichever side of the symmetry formula is finite.

    The right-hand form is (-1)**(b-a) * Gamma(b-s)/Gamma(a-s). When both sides
    are pole-free, the side farther from the poles is used.

    Raises:
        PoleError: If the ratio is infinite (numerator at a pole with a finite denominator).
    """
    s = as_complex(s)
    left = (s - a + 1, s - b + 1)
    right = (b - s, a - s)
    left_poles = tuple(is_pole(u) for u in left)
    right_poles = tuple(is_pole(v) for v in right)
    real_input = s.imag == 0

    def ratio(pair: Tuple[complex, complex], sign: int) -> complex:
        lg = log_gamma_raw(pair[0]) - log_gamma_raw(pair[1])
        return sign * recombine(lg.real, lg.imag, real_input)

    left_clear = not any(left_poles)
    right_clear = not any(right_poles)
    if left_clear and right_clear:
        use_left = min(map(pole_distance, left)) >= min(map(pole_distance, right))
        return ratio(left, 1) if use_left else ratio(right, sign_of_parity(b - a))
    if left_clear:
        return ratio(left, 1)
    if right_clear:
        return ratio(right, sign_of_parity(b - a))
    # Each side has a pole: the ratio is 0 if only a denominator is singular
    if not left_poles[0] or not right_poles[0]:
        return 0j
    raise PoleError(
        f"Gamma({left[0]})/Gamma({left[1]}) is infinite on both sides of the symmetry formula"
    )


def recip_gamma_leading(n: int, x: ComplexValue) -> complex:
    """Leading term (-1)**n * n! * x of 1/Gamma(x - n) near x = 0."""
    if n < 0:
        raise DomainError(f"recip_gamma_leading requires n >= 0, got {n}")
    return sign_of_parity(n) * factorial(n) * as_complex(x)


def reflection_residual(s: ComplexValue) -> float:
    """|Gamma(s)Gamma(1-s)sin(pi s) - pi| / pi, a self-test of the reflection formula."""
    s = as_complex(s)
    if snap_integer(s) is not None:
        raise DomainError(f"reflection_residual requires non-integer s, got {s}")
    product = gamma(s).value * gamma(1.0 - s).value * sin_pi(s)
    return abs(product - math.pi) / math.pi
