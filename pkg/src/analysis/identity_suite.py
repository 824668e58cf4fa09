# src/analysis/identity_suite.py
"""
Checks of the classical binomial identities under the extended definition.

Each check evaluates both sides with binom_complex and returns an
IdentityReport. Integer arguments are compared exactly (integers and
Fractions); everything else by the residual |lhs - rhs| / max(1, |lhs|, |rhs|).
The known exception points are fixed: absorption at y = 0 and addition at
x = y = 0. Any side that comes out as 0*inf is also reported as a known
exception.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from src.delivery.config import DEFAULT_DELTA, DEFAULT_SAMPLE_RADIUS
from src.errors import DomainError, UsageError
from src.evaluation.binomial_eval import binom_complex
from src.evaluation.gamma_engine import (
    ExactNumber,
    ExtendedValue,
    as_complex,
    is_pole,
    log_gamma_raw,
    recombine,
    snap_integer,
)
from src.lattice.exact_lattice import LatticeWindow, sign_of_parity
from src.management.config import COMPLEX_TOL, DEFAULT_SEED, DELTA_CONDITIONING

logger = logging.getLogger(__name__)

Arg = Union[int, complex]

# Largest |delta| for the perturbed lattice forms
MAX_DELTA: float = 1e-2

LATTICE_IDENTITIES: Tuple[str, ...] = ("symmetry", "trinomial", "absorption", "addition", "delta")
ALL_IDENTITIES: Tuple[str, ...] = LATTICE_IDENTITIES + ("reduction",)


class Verdict(Enum):
    HOLDS = "Holds"
    HOLDS_EXACT = "HoldsExact"
    KNOWN_EXCEPTION = "KnownException"
    VIOLATED = "Violated"


@dataclass(frozen=True)
class IdentityReport:
    identity_name: str
    point: Tuple[Arg, ...]
    lhs: ExtendedValue
    rhs: ExtendedValue
    residual: Optional[float]
    verdict: Verdict

    def to_dict(self) -> Dict[str, Any]:
        """The JSON-lines record: identity, point, lhs, rhs, residual, verdict."""
        return {
            "identity": self.identity_name,
            "point": [_point_coordinate(p) for p in self.point],
            "lhs": self.lhs.to_dict(),
            "rhs": self.rhs.to_dict(),
            "residual": self.residual,
            "verdict": self.verdict.value,
        }


@dataclass(frozen=True)
class SampleSpec:
    """Seeded complex sample triples (x, y, z) drawn uniformly from a disk.

    Triples with any of x, y, z, x-y, y-z, x-z within `min_gap` of an integer
    are redrawn, which keeps every sample off the lattice and the infinite set.
    """

    count: int = 0
    radius: float = DEFAULT_SAMPLE_RADIUS
    seed: int = DEFAULT_SEED
    min_gap: float = 1e-3

    def __post_init__(self) -> None:
        if self.count < 0:
            raise DomainError(f"sample count must be >= 0, got {self.count}")
        if self.radius <= 0:
            raise DomainError(f"sample radius must be positive, got {self.radius}")


def _point_coordinate(p: Arg) -> Any:
    if isinstance(p, int):
        return p
    z = complex(p)
    if z.imag == 0:
        return z.real
    return [z.real, z.imag]


def _normalize(v: Union[int, float, complex]) -> Arg:
    """Integers (within the snap radius) become ints so they take the exact path."""
    if isinstance(v, int):
        return v
    m = snap_integer(as_complex(v))
    return m if m is not None else as_complex(v)


def residual(lhs: complex, rhs: complex) -> float:
    return abs(lhs - rhs) / max(1.0, abs(lhs), abs(rhs))


def exact_residual(lhs: ExactNumber, rhs: ExactNumber) -> float:
    """residual() in rational arithmetic; lies in [0, 2] for values of any size."""
    scale = max(Fraction(1), abs(Fraction(lhs)), abs(Fraction(rhs)))
    return float(abs(Fraction(lhs) - Fraction(rhs)) / scale)


def _compare(
    name: str,
    point: Tuple[Arg, ...],
    lhs: ExtendedValue,
    rhs: ExtendedValue,
    tol: float,
) -> IdentityReport:
    if lhs.is_indeterminate or rhs.is_indeterminate:
        return IdentityReport(name, point, lhs, rhs, None, Verdict.KNOWN_EXCEPTION)
    if lhs.is_infinite and rhs.is_infinite:
        return IdentityReport(name, point, lhs, rhs, None, Verdict.HOLDS)
    if lhs.is_infinite or rhs.is_infinite:
        return IdentityReport(name, point, lhs, rhs, None, Verdict.VIOLATED)
    if lhs.is_exact and rhs.is_exact:
        verdict = Verdict.HOLDS_EXACT if lhs.exact == rhs.exact else Verdict.VIOLATED
        r_exact = exact_residual(lhs.exact, rhs.exact)
        return IdentityReport(name, point, lhs, rhs, r_exact, verdict)
    r = residual(lhs.value, rhs.value)
    verdict = Verdict.HOLDS if r <= tol else Verdict.VIOLATED
    return IdentityReport(name, point, lhs, rhs, r, verdict)


def _ratio(x: Arg, y: Arg) -> ExtendedValue:
    if isinstance(x, int) and isinstance(y, int):
        return ExtendedValue.of_exact(Fraction(x, y))
    return ExtendedValue.of(complex(x) / complex(y))


def check_symmetry(
    x: Union[int, complex], y: Union[int, complex], tol: float = COMPLEX_TOL
) -> IdentityReport:
    """binom(x, y) against binom(x, x - y); two Infinite sides agree."""
    x, y = _normalize(x), _normalize(y)
    return _compare("symmetry", (x, y), binom_complex(x, y), binom_complex(x, x - y), tol)


def check_trinomial(
    x: Union[int, complex],
    y: Union[int, complex],
    z: Union[int, complex],
    tol: float = COMPLEX_TOL,
) -> IdentityReport:
    """binom(x, y) binom(y, z) against binom(x, z) binom(x - z, y - z)."""
    x, y, z = _normalize(x), _normalize(y), _normalize(z)
    lhs = binom_complex(x, y) * binom_complex(y, z)
    rhs = binom_complex(x, z) * binom_complex(x - z, y - z)
    return _compare("trinomial", (x, y, z), lhs, rhs, tol)


def check_absorption(
    x: Union[int, complex], y: Union[int, complex], tol: float = COMPLEX_TOL
) -> IdentityReport:
    """binom(x, y) against (x / y) binom(x - 1, y - 1).

    At y = 0 the right side is not evaluated; the report is a known exception
    with an Indeterminate right side.
    """
    x, y = _normalize(x), _normalize(y)
    lhs = binom_complex(x, y)
    if y == 0:
        logger.debug(f"absorption: y = 0 at x = {x}, division skipped")
        return IdentityReport(
            "absorption", (x, y), lhs, ExtendedValue.indeterminate(), None, Verdict.KNOWN_EXCEPTION
        )
    rhs = _ratio(x, y) * binom_complex(x - 1, y - 1)
    return _compare("absorption", (x, y), lhs, rhs, tol)


def check_addition(
    x: Union[int, complex], y: Union[int, complex], tol: float = COMPLEX_TOL
) -> IdentityReport:
    """binom(x, y) against binom(x - 1, y) + binom(x - 1, y - 1).

    At x = y = 0 the left side is 1 and the right side C(-1, 0) + C(-1, -1) = 2;
    both are recorded under a known-exception verdict.
    """
    x, y = _normalize(x), _normalize(y)
    lhs = binom_complex(x, y)
    rhs = binom_complex(x - 1, y) + binom_complex(x - 1, y - 1)
    report = _compare("addition", (x, y), lhs, rhs, tol)
    if x == 0 and y == 0:
        return IdentityReport(
            "addition", (x, y), lhs, rhs, report.residual, Verdict.KNOWN_EXCEPTION
        )
    return report


def check_delta_forms(
    n: int, k: int, delta: Union[float, complex]
) -> Tuple[Optional[IdentityReport], Optional[IdentityReport]]:
    """The negation formulas with a small complex offset on the lattice arguments.

    The first form, binom(n+d, k) = (-1)^k binom(-(n+d)+k-1, k), applies for
    n < 0 <= k. The second, binom(n+d, k+d) = (-1)^(n-k) binom(-(k+d)-1, n-k),
    applies for k <= n < 0. A form whose precondition fails is returned as None.
    The tolerance grows like 1/|d| because the offset arguments sit next to
    gamma poles.

    Raises:
        DomainError: If d is zero or larger than 1e-2 in modulus, or neither
            precondition holds.
    """
    d = as_complex(delta)
    if d == 0 or abs(d) > MAX_DELTA:
        raise DomainError(f"delta must satisfy 0 < |delta| <= {MAX_DELTA}, got {delta}")
    upper_ok = n < 0 <= k
    diagonal_ok = k <= n < 0
    if not (upper_ok or diagonal_ok):
        raise DomainError(f"no perturbed form applies at (n, k) = ({n}, {k})")

    tol = COMPLEX_TOL + DELTA_CONDITIONING * (abs(n) + abs(k) + 1) / abs(d)
    point: Tuple[Arg, ...] = (n, k, d)
    upper: Optional[IdentityReport] = None
    diagonal: Optional[IdentityReport] = None
    if upper_ok:
        x = n + d
        lhs = binom_complex(x, k)
        rhs = ExtendedValue.of_exact(sign_of_parity(k)) * binom_complex(-x + k - 1, k)
        upper = _compare("delta_upper", point, lhs, rhs, tol)
    if diagonal_ok:
        lhs = binom_complex(n + d, k + d)
        rhs = ExtendedValue.of_exact(sign_of_parity(n - k)) * binom_complex(-(k + d) - 1, n - k)
        diagonal = _compare("delta_diagonal", point, lhs, rhs, tol)
    return upper, diagonal


def check_reduced_addition(
    x: Union[float, complex], y: Union[float, complex], tol: float = COMPLEX_TOL
) -> IdentityReport:
    """x/(y(x-y)) G against (1/y + 1/(x-y)) G, G = Gamma(x) / (Gamma(y) Gamma(x-y)).

    This is the addition identity after the common gamma factor is cancelled.

    Raises:
        DomainError: If y or x - y is zero, or any of Gamma(x), Gamma(y),
            Gamma(x-y) is at a pole.
    """
    x, y = as_complex(x), as_complex(y)
    w = x - y
    if y == 0 or w == 0:
        raise DomainError(f"reduced addition needs y != 0 and x != y, got ({x}, {y})")
    if is_pole(x) or is_pole(y) or is_pole(w):
        raise DomainError(f"Gamma factor is singular at ({x}, {y})")
    lg = log_gamma_raw(x) - log_gamma_raw(y) - log_gamma_raw(w)
    g = recombine(lg.real, lg.imag, x.imag == 0 and y.imag == 0)
    lhs = ExtendedValue.of(x / (y * w) * g)
    rhs = ExtendedValue.of((1 / y + 1 / w) * g)
    return _compare("reduction", (x, y), lhs, rhs, tol)


def check_identity(
    name: str,
    point: Sequence[Union[int, float, complex]],
    delta: Union[float, complex] = DEFAULT_DELTA,
    tol: float = COMPLEX_TOL,
) -> List[IdentityReport]:
    """Runs one named identity at one point (the `verify --at` path).

    Raises:
        UsageError: If the name is unknown or the point has the wrong arity.
    """
    arity = 3 if name == "trinomial" else 2
    if name not in ALL_IDENTITIES:
        raise UsageError(
            f"unknown identity '{name}', expected one of {', '.join(ALL_IDENTITIES)}"
        )
    if len(point) != arity:
        raise UsageError(f"{name} takes {arity} coordinates, got {len(point)}")

    if name == "symmetry":
        return [check_symmetry(*point, tol=tol)]
    if name == "trinomial":
        return [check_trinomial(*point, tol=tol)]
    if name == "absorption":
        return [check_absorption(*point, tol=tol)]
    if name == "addition":
        return [check_addition(*point, tol=tol)]
    if name == "reduction":
        return [check_reduced_addition(*point, tol=tol)]

    n, k = (snap_integer(as_complex(p)) for p in point)
    if n is None or k is None:
        raise UsageError(f"delta forms take a lattice point, got {tuple(point)}")
    return [r for r in check_delta_forms(n, k, delta) if r is not None]


def draw_samples(spec: SampleSpec) -> List[Tuple[complex, complex, complex]]:
    """Deterministic sample triples for a seed."""
    rng = np.random.default_rng(spec.seed)
    triples: List[Tuple[complex, complex, complex]] = []

    def near_integer(w: complex) -> bool:
        return abs(w - round(w.real)) < spec.min_gap

    while len(triples) < spec.count:
        radii = spec.radius * np.sqrt(rng.random(3))
        angles = 2.0 * np.pi * rng.random(3)
        x, y, z = (complex(r * np.cos(t), r * np.sin(t)) for r, t in zip(radii, angles))
        if any(near_integer(w) for w in (x, y, z, x - y, y - z, x - z)):
            continue
        triples.append((x, y, z))
    return triples


def _lattice_reports(
    window: LatticeWindow, name: str, delta: Union[float, complex], tol: float
) -> Iterator[IdentityReport]:
    if name == "trinomial":
        # z ranges over the same values as k
        for p in window.points():
            for z in range(window.k_min, window.k_max + 1):
                yield check_trinomial(p.n, p.k, z, tol=tol)
        return
    for p in window.points():
        if name == "symmetry":
            yield check_symmetry(p.n, p.k, tol=tol)
        elif name == "absorption":
            yield check_absorption(p.n, p.k, tol=tol)
        elif name == "addition":
            yield check_addition(p.n, p.k, tol=tol)
        elif name == "delta" and (p.n < 0 <= p.k or p.k <= p.n < 0):
            yield from (r for r in check_delta_forms(p.n, p.k, delta) if r is not None)


def _sample_reports(
    triples: Sequence[Tuple[complex, complex, complex]], name: str, tol: float
) -> Iterator[IdentityReport]:
    for x, y, z in triples:
        if name == "symmetry":
            yield check_symmetry(x, y, tol=tol)
        elif name == "trinomial":
            yield check_trinomial(x, y, z, tol=tol)
        elif name == "absorption":
            yield check_absorption(x, y, tol=tol)
        elif name == "addition":
            yield check_addition(x, y, tol=tol)
        elif name == "reduction":
            yield check_reduced_addition(x, y, tol=tol)


def sweep(
    window: Optional[LatticeWindow],
    samples: Optional[SampleSpec] = None,
    identities: Sequence[str] = ALL_IDENTITIES,
    delta: Union[float, complex] = DEFAULT_DELTA,
    tol: float = COMPLEX_TOL,
) -> List[IdentityReport]:
    """Runs the chosen identities over a lattice window and a seeded complex sample.

    Reports come out grouped by identity (in the order given), lattice cells
    first in window order, then the samples in draw order. The output is the
    same for the same arguments.

    Args:
        window: Lattice cells to check, or None for no lattice part. The
            trinomial check runs over the cube window x k-range.
        samples: Complex sample specification, or None for no sampled part.
        identities: Identity names from ALL_IDENTITIES.
        delta: Offset for the perturbed lattice forms.
        tol: Residual tolerance for inexact comparisons.

    Returns:
        The list of reports.

    Raises:
        UsageError: If an identity name is unknown.
    """
    unknown = [name for name in identities if name not in ALL_IDENTITIES]
    if unknown:
        raise UsageError(
            f"unknown identity '{unknown[0]}', expected one of {', '.join(ALL_IDENTITIES)}"
        )

    triples = draw_samples(samples) if samples is not None and samples.count else []
    reports: List[IdentityReport] = []
    for name in identities:
        before = len(reports)
        if window is not None:
            reports.extend(_lattice_reports(window, name, delta, tol))
        reports.extend(_sample_reports(triples, name, tol))
        logger.info(f"sweep: {name} produced {len(reports) - before} reports")
    return reports


def summarize(reports: Sequence[IdentityReport]) -> Dict[str, Any]:
    """Verdict counts, overall and per identity.

    Returns:
        {"total", "violated", "verdicts": {verdict: count}, "identities":
        {name: {verdict: count}}}; every verdict appears in "verdicts", zero or not.
    """
    df = pd.DataFrame(
        [(r.identity_name, r.verdict.value) for r in reports], columns=["identity", "verdict"]
    )
    counts = df["verdict"].value_counts()
    verdicts = {v.value: int(counts.get(v.value, 0)) for v in Verdict}
    identities: Dict[str, Dict[str, int]] = {}
    for (name, verdict), size in df.groupby(["identity", "verdict"], sort=True).size().items():
        identities.setdefault(name, {})[verdict] = int(size)
    return {
        "total": len(df),
        "violated": verdicts[Verdict.VIOLATED.value],
        "verdicts": verdicts,
        "identities": identities,
    }
