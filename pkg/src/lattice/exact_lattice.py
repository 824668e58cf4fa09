# src/lattice/exact_lattice.py
"""
Exact binomial coefficients on the integer lattice.

Every integer pair (n, k) has a value: the factorial ratio for nonnegative n,
and the three-case negation formula for negative n. All arithmetic is on
Python integers, so values are exact at any size. This module is the ground
truth the floating-point modules are checked against.
"""

import logging
import math
from dataclasses import dataclass
from typing import Dict, Iterator

from src.errors import DomainError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class LatticePoint:
    """An (n, k) cell of the extended Pascal plane. Any pair of integers is valid."""

    n: int
    k: int


@dataclass(frozen=True)
class LatticeWindow:
    """Closed rectangle n_min..n_max by k_min..k_max of lattice cells."""

    n_min: int
    n_max: int
    k_min: int
    k_max: int

    def __post_init__(self) -> None:
        if self.n_min > self.n_max or self.k_min > self.k_max:
            raise DomainError(
                f"Empty window: n in [{self.n_min}, {self.n_max}], "
                f"k in [{self.k_min}, {self.k_max}]"
            )

    @classmethod
    def square(cls, lo: int, hi: int) -> "LatticeWindow":
        return cls(lo, hi, lo, hi)

    @property
    def cell_count(self) -> int:
        return (self.n_max - self.n_min + 1) * (self.k_max - self.k_min + 1)

    def points(self) -> Iterator[LatticePoint]:
        """Yields the cells ordered by n, then k."""
        for n in range(self.n_min, self.n_max + 1):
            for k in range(self.k_min, self.k_max + 1):
                yield LatticePoint(n, k)


def sign_of_parity(e: int) -> int:
    """Returns (-1)**e for any integer e, negative exponents included."""
    return -1 if e % 2 else 1


def factorial(n: int) -> int:
    """Returns n! exactly.

    Raises:
        DomainError: If n is negative.
    """
    if n < 0:
        raise DomainError(f"factorial is undefined for negative n={n}")
    return math.factorial(n)


def binom_nonneg(p: LatticePoint) -> int:
    """Factorial-ratio binomial for n >= 0; zero outside 0 <= k <= n."""
    if p.n < 0:
        raise DomainError(f"binom_nonneg requires n >= 0, got n={p.n}")
    if p.k < 0 or p.k > p.n:
        return 0
    return math.comb(p.n, p.k)


def binom_neg(p: LatticePoint) -> int:
    """Negation formula for n < 0.

    Upper negation when k >= 0, the mirrored case when k <= n, and zero in
    between (n < k < 0).
    """
    n, k = p.n, p.k
    if n >= 0:
        raise DomainError(f"binom_neg requires n < 0, got n={n}")
    if k >= 0:
        return sign_of_parity(k) * binom_nonneg(LatticePoint(-n + k - 1, k))
    if k <= n:
        return sign_of_parity(n - k) * binom_nonneg(LatticePoint(-k - 1, n - k))
    return 0


def binom_lattice(p: LatticePoint) -> int:
    """Binomial coefficient at any integer pair; dispatches on the sign of n only."""
    if p.n >= 0:
        return binom_nonneg(p)
    return binom_neg(p)


def in_zero_region(p: LatticePoint) -> bool:
    """True exactly on the cells where the extended binomial vanishes."""
    if p.n >= 0:
        return p.k < 0 or p.k > p.n
    return p.n < p.k < 0


def lattice_table(window: LatticeWindow) -> Dict[LatticePoint, int]:
    """Evaluates binom_lattice on every cell of the window, in row order."""
    return {p: binom_lattice(p) for p in window.points()}


def pascal_oracle(window: LatticeWindow) -> Dict[LatticePoint, int]:
    """Fills the window with the addition recurrence alone, as an independent check.

    Row 0 is seeded (1 at k=0, else 0). Rows n > 0 follow the forward
    recurrence. Rows n < 0 are solved backward from the row above: left to
    right for k >= 0 starting from the zero cell (n, -1), and right to left
    for k <= n starting from the zero cell (n, n+1). The addition identity
    fails at (0, 0), so row -1 is anchored by the two cells next to it,
    C(-1, 0) = C(-1, -1) = 1.
    """
    lo = min(window.k_min, window.n_min, 0) - 1
    hi = max(window.k_max, window.n_max, 0) + 1
    columns = range(lo, hi + 1)

    rows: Dict[int, Dict[int, int]] = {0: {k: int(k == 0) for k in columns}}

    for n in range(1, window.n_max + 1):
        prev = rows[n - 1]
        # Row n-1 >= 0 vanishes left of column 0, so missing neighbours are zero
        rows[n] = {k: prev[k] + prev.get(k - 1, 0) for k in columns}

    for m in range(-1, window.n_min - 1, -1):
        above = rows[m + 1]
        row: Dict[int, int] = {}
        # k >= 0, left to right: C(m, k) = C(m+1, k) - C(m, k-1)
        if m == -1:
            row[0] = 1
            row[-1] = 1
        else:
            row[-1] = 0
            row[0] = above[0] - row[-1]
        for k in range(1, hi + 1):
            row[k] = above[k] - row[k - 1]
        # k <= m, right to left: C(m, k-1) = C(m+1, k) - C(m, k)
        if m < -1:
            # m < k < 0 is the zero region
            for k in range(m + 1, -1):
                row[k] = 0
            start = m + 1
        else:
            start = -1
        for k in range(start, lo, -1):
            row[k - 1] = above[k] - row[k]
        rows[m] = row
        logger.debug(f"pascal_oracle: solved row {m}")

    return {p: rows[p.n][p.k] for p in window.points()}


def factorial_ratio(p: LatticePoint) -> int:
    """n!/(k!(n-k)!) for 0 <= k <= n, written out with factorials (test oracle)."""
    if not 0 <= p.k <= p.n:
        raise DomainError(f"factorial_ratio requires 0 <= k <= n, got {p}")
    return factorial(p.n) // (factorial(p.k) * factorial(p.n - p.k))

