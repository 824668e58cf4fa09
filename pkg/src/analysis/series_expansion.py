# src/analysis/series_expansion.py
"""
The binomial theorem for integer powers.

n >= 0 is the finite sum. For n < 0 there are two infinite series: the
expansion in x, convergent only for |x| < |y|, and the expansion in y,
convergent only for |x| > |y|. On the circle |x| = |y| neither is summed.

Sums are accumulated in mpmath at SERIES_DPS digits with exact integer
coefficients, so rounding comes only from the final conversion to complex.
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, List, NamedTuple, Optional, Tuple

import mpmath
import numpy as np

from src.errors import BoundaryRegionError, DomainError, NonConvergentRegionError
from src.evaluation.gamma_engine import as_complex
from src.lattice.exact_lattice import LatticePoint, binom_lattice, binom_nonneg, sign_of_parity
from src.management.config import (
    BOUNDARY_REL_TOL,
    SERIES_DPS,
    SERIES_MAX_TERMS,
    SERIES_REL_TOL,
)

logger = logging.getLogger(__name__)

# Consecutive small terms required before a series is declared converged
QUIET_TERMS: int = 3


class Regime(Enum):
    FINITE_POSITIVE = "FinitePositive"
    NEG_EXPAND_IN_X = "NegExpandInX"
    NEG_EXPAND_IN_Y = "NegExpandInY"


@dataclass(frozen=True)
class SeriesSpec:
    n: int
    x: complex
    y: complex
    rel_tol: float = SERIES_REL_TOL
    max_terms: int = SERIES_MAX_TERMS

    def __post_init__(self) -> None:
        if self.rel_tol <= 0:
            raise DomainError(f"rel_tol must be positive, got {self.rel_tol}")
        if self.max_terms < 1:
            raise DomainError(f"max_terms must be >= 1, got {self.max_terms}")
        object.__setattr__(self, "x", as_complex(self.x))
        object.__setattr__(self, "y", as_complex(self.y))

    def swapped(self) -> "SeriesSpec":
        return SeriesSpec(self.n, self.y, self.x, self.rel_tol, self.max_terms)


@dataclass(frozen=True)
class SeriesResult:
    value: complex
    terms_used: int
    converged: bool
    regime: Regime
    # Geometric bound on the omitted tail; None when the bound does not apply
    tail_bound: Optional[float] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "value": {"re": self.value.real, "im": self.value.imag},
            "regime": self.regime.value,
            "terms_used": self.terms_used,
            "converged": self.converged,
            "tail_bound": self.tail_bound,
        }


class SeriesTerm(NamedTuple):
    """coefficient * y**y_power * x**x_power"""

    coefficient: int
    y_power: int
    x_power: int


def series_coefficient(n: int, k: int) -> int:
    """(-1)^k C(-n+k-1, k), the k-th coefficient of the negative-power expansion."""
    if n >= 0 or k < 0:
        raise DomainError(f"series_coefficient requires n < 0 and k >= 0, got ({n}, {k})")
    return sign_of_parity(k) * binom_nonneg(LatticePoint(-n + k - 1, k))


def select_regime(n: int, x: complex, y: complex) -> Regime:
    """Picks the expansion that converges for (n, x, y).

    Raises:
        BoundaryRegionError: If n < 0 and |x| = |y| to relative BOUNDARY_REL_TOL.
    """
    if n >= 0:
        return Regime.FINITE_POSITIVE
    ax, ay = abs(as_complex(x)), abs(as_complex(y))
    if abs(ax - ay) <= BOUNDARY_REL_TOL * max(ax, ay):
        raise BoundaryRegionError(
            f"|x| = |y| = {ax:.6g}: neither expansion of (x+y)^{n} converges absolutely"
        )
    return Regime.NEG_EXPAND_IN_X if ax < ay else Regime.NEG_EXPAND_IN_Y


def expand_nonneg(spec: SeriesSpec) -> SeriesResult:
    """Finite sum of C(n, k) y^(n-k) x^k for k = 0..n."""
    if spec.n < 0:
        raise DomainError(f"expand_nonneg requires n >= 0, got {spec.n}")
    with mpmath.workdps(SERIES_DPS):
        x, y = mpmath.mpc(spec.x), mpmath.mpc(spec.y)
        total = mpmath.fsum(
            binom_nonneg(LatticePoint(spec.n, k)) * y ** (spec.n - k) * x**k
            for k in range(spec.n + 1)
        )
        value = complex(total)
    return SeriesResult(value, spec.n + 1, True, Regime.FINITE_POSITIVE, 0.0)


def _negative_power_series(
    n: int, small: complex, large: complex, rel_tol: float, max_terms: int
) -> Tuple[complex, int, bool, Optional[float]]:
    """Sums (-1)^k C(-n+k-1, k) large^(n-k) small^k until QUIET_TERMS small terms in a row."""
    r = abs(small) / abs(large)
    with mpmath.workdps(SERIES_DPS):
        ratio = mpmath.mpc(small) / mpmath.mpc(large)
        power = mpmath.mpc(large) ** n
        coef = 1
        partial = mpmath.mpc(0)
        quiet = 0
        term_size = mpmath.mpf(0)
        terms = 0
        converged = False
        for k in range(max_terms):
            if k > 0:
                # C(n, k) = C(n, k-1) (n-k+1) / k, exact
                coef = coef * (n - k + 1) // k
                power *= ratio
            term = coef * power
            partial += term
            terms = k + 1
            term_size = abs(term)
            if r == 0:
                converged = True
                break
            quiet = quiet + 1 if term_size <= rel_tol * abs(partial) else 0
            if quiet >= QUIET_TERMS:
                converged = True
                break
        value = complex(partial)
        last = float(term_size)

    tail: Optional[float] = 0.0
    if r > 0:
        last_k = terms - 1
        rho = r * (last_k - n) / (last_k + 1)
        tail = last * rho / (1 - rho) if rho < 1 else None
    return value, terms, converged, tail


def _expand_negative(spec: SeriesSpec, regime: Regime) -> SeriesResult:
    if spec.n >= 0:
        raise DomainError(f"negative-power expansion requires n < 0, got {spec.n}")
    if select_regime(spec.n, spec.x, spec.y) is not Regime.NEG_EXPAND_IN_X:
        raise NonConvergentRegionError(
            f"expansion in x needs |x| < |y|, got |x| = {abs(spec.x):.6g}, |y| = {abs(spec.y):.6g}"
        )
    value, terms, converged, tail = _negative_power_series(
        spec.n, spec.x, spec.y, spec.rel_tol, spec.max_terms
    )
    if not converged:
        logger.warning(
            f"{regime.value}: stopped at max_terms={spec.max_terms} "
            f"before reaching rel_tol={spec.rel_tol}"
        )
    logger.info(f"{regime.value}: n={spec.n} summed {terms} terms, converged={converged}")
    return SeriesResult(value, terms, converged, regime, tail)


def expand_neg_in_x(spec: SeriesSpec) -> SeriesResult:
    """Taylor expansion of (x+y)^n in x at x = 0, for n < 0 and |x| < |y|.

    Raises:
        NonConvergentRegionError: If |x| >= |y| (BoundaryRegionError on |x| = |y|).
    """
    return _expand_negative(spec, Regime.NEG_EXPAND_IN_X)


def expand_neg_in_y(spec: SeriesSpec) -> SeriesResult:
    """Taylor expansion of (x+y)^n in y at y = 0, for n < 0 and |x| > |y|.

    The same series as expand_neg_in_x with x and y interchanged.
    """
    if spec.n < 0 and abs(spec.x) < abs(spec.y):
        raise NonConvergentRegionError(
            f"expansion in y needs |x| > |y|, got |x| = {abs(spec.x):.6g}, |y| = {abs(spec.y):.6g}"
        )
    return _expand_negative(spec.swapped(), Regime.NEG_EXPAND_IN_Y)


def expand_binomial(spec: SeriesSpec) -> SeriesResult:
    """Evaluates (x+y)^n with whichever expansion converges."""
    regime = select_regime(spec.n, spec.x, spec.y)
    if regime is Regime.FINITE_POSITIVE:
        return expand_nonneg(spec)
    if regime is Regime.NEG_EXPAND_IN_X:
        return expand_neg_in_x(spec)
    return expand_neg_in_y(spec)


def reindexed_terms(n: int, count: int) -> List[SeriesTerm]:
    """The y-expansion written over k = n, n-1, ... with coefficients (-1)^(n-k) C(-k-1, n-k)."""
    if n >= 0:
        raise DomainError(f"reindexed_terms requires n < 0, got {n}")
    terms = []
    for k in range(n, n - count, -1):
        coef = sign_of_parity(n - k) * binom_lattice(LatticePoint(-k - 1, n - k))
        terms.append(SeriesTerm(coef, n - k, k))
    return terms


def series_terms_in_y(n: int, count: int) -> List[SeriesTerm]:
    """The y-expansion over j = 0, 1, ...: (-1)^j C(-n+j-1, j) x^(n-j) y^j."""
    return [SeriesTerm(series_coefficient(n, j), j, n - j) for j in range(count)]


def divergence_witness(n: int, x: complex, y: complex, max_terms: int = 1000) -> Optional[int]:
    """Index from which the x-expansion's term magnitudes only grow, within max_terms.

    Returns None when the magnitudes do not end in a strictly increasing run,
    which is the case inside the convergence region.
    """
    if n >= 0:
        raise DomainError(f"divergence_witness requires n < 0, got {n}")
    ax, ay = abs(as_complex(x)), abs(as_complex(y))
    if ay == 0:
        raise DomainError("divergence_witness requires y != 0")
    if ax == 0 or max_terms < 2:
        return None
    k = np.arange(max_terms - 1, dtype=float)
    # log |t_(k+1) / t_k|
    log_step = math.log(ax / ay) + np.log(k - n) - np.log(k + 1)
    not_growing = np.flatnonzero(log_step <= 0)
    if not_growing.size == 0:
        return 0
    start = int(not_growing[-1]) + 1
    return start if start < max_terms - 1 else None
