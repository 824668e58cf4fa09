# src/analysis/continuity_probe.py
"""
Numerical limits of binom_complex toward lattice points.

A probe walks target + delta * direction over a decreasing delta schedule and
compares the samples with the exact lattice value. The divergence probe does
the same next to the infinite set (negative-integer x, non-integer y) and
looks for the 1/delta growth of a simple gamma pole.
"""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from src.delivery.config import DEFAULT_DELTAS
from src.errors import DomainError
from src.evaluation.binomial_eval import binom_complex
from src.evaluation.gamma_engine import ExtendedValue, as_complex, snap_integer
from src.lattice.exact_lattice import LatticePoint, binom_lattice
from src.management.config import (
    DEFAULT_SEED,
    POLE_SIGNATURE_SPREAD,
    PROBE_NOISE_FLOOR,
    PROBE_TOL_FLOOR,
    PROBE_TOL_SCALE,
)

logger = logging.getLogger(__name__)

Direction = Tuple[complex, complex]

AXIS_DIRECTION: Direction = (1 + 0j, 0j)
DIAGONAL_DIRECTION: Direction = (complex(1 / math.sqrt(2)), complex(1 / math.sqrt(2)))

_UNIT_NORM_TOL: float = 1e-9


class ProbeClass(Enum):
    CONVERGES = "ConvergesToLattice"
    DIVERGES = "Diverges"
    INCONCLUSIVE = "Inconclusive"


def normalize_direction(dx: complex, dy: complex) -> Direction:
    """Scales (dx, dy) to unit norm in complex 2-space."""
    dx, dy = as_complex(dx), as_complex(dy)
    norm = math.hypot(abs(dx), abs(dy))
    if norm == 0:
        raise DomainError("probe direction must be non-zero")
    return dx / norm, dy / norm


def default_direction(target: LatticePoint) -> Direction:
    """The direction along which the perturbed negation formulas hold.

    The diagonal on cells with k <= n < 0, the x-axis everywhere else.
    """
    if target.k <= target.n < 0:
        return DIAGONAL_DIRECTION
    return AXIS_DIRECTION


def probe_tolerance(delta: float) -> float:
    """Relative error allowed at offset delta."""
    return PROBE_TOL_SCALE * delta + PROBE_TOL_FLOOR


@dataclass(frozen=True)
class ProbeSpec:
    target: LatticePoint
    direction: Direction = AXIS_DIRECTION
    deltas: Tuple[float, ...] = DEFAULT_DELTAS

    def __post_init__(self) -> None:
        deltas = tuple(float(d) for d in self.deltas)
        if not deltas:
            raise DomainError("probe needs at least one delta")
        if any(d <= 0 for d in deltas):
            raise DomainError(f"deltas must be positive, got {deltas}")
        if any(b >= a for a, b in zip(deltas, deltas[1:])):
            raise DomainError(f"deltas must be strictly decreasing, got {deltas}")
        dx, dy = (as_complex(d) for d in self.direction)
        if abs(math.hypot(abs(dx), abs(dy)) - 1.0) > _UNIT_NORM_TOL:
            raise DomainError(f"direction ({dx}, {dy}) is not a unit vector")
        object.__setattr__(self, "deltas", deltas)
        object.__setattr__(self, "direction", (dx, dy))

    @classmethod
    def along(
        cls,
        target: LatticePoint,
        dx: complex,
        dy: complex,
        deltas: Sequence[float] = DEFAULT_DELTAS,
    ) -> "ProbeSpec":
        return cls(target, normalize_direction(dx, dy), tuple(deltas))


@dataclass(frozen=True)
class ProbeSample:
    delta: float
    # None marks a gap: the sample point fell on the infinite set
    value: Optional[ExtendedValue]
    error: Optional[float] = None


@dataclass
class ProbeResult:
    samples: List[ProbeSample]
    extrapolated_limit: Optional[ExtendedValue]
    classification: ProbeClass
    target_value: Optional[ExtendedValue] = None
    # |value| * delta over the finite samples, reported by divergence probes
    pole_signature: List[float] = field(default_factory=list)

    @property
    def gaps(self) -> int:
        return sum(1 for s in self.samples if s.value is None)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "classification": self.classification.value,
            "target_value": self.target_value.to_dict() if self.target_value else None,
            "extrapolated_limit": (
                self.extrapolated_limit.to_dict() if self.extrapolated_limit else None
            ),
            "samples": [
                {
                    "delta": s.delta,
                    "value": s.value.to_dict() if s.value is not None else None,
                    "error": s.error,
                }
                for s in self.samples
            ],
            "pole_signature": self.pole_signature,
        }


def _relative_error(value: complex, target: complex) -> float:
    return abs(value - target) / max(1.0, abs(target))


def _richardson(d1: float, v1: complex, d2: float, v2: complex) -> complex:
    """Linear extrapolation of v(delta) to delta = 0 from two samples."""
    return v2 + (v2 - v1) * d2 / (d1 - d2)


def probe_limit(spec: ProbeSpec) -> ProbeResult:
    """Samples binom_complex along target + delta * direction and classifies the limit.

    ConvergesToLattice needs the last two finite samples within
    probe_tolerance(delta) of the lattice value, with the error not growing
    (or already at the noise floor). Sample points on the infinite set are
    kept as gaps.

    Raises:
        DomainError: If every sample point falls on the infinite set.
    """
    n, k = spec.target.n, spec.target.k
    dx, dy = spec.direction
    exact = binom_lattice(spec.target)
    target_value = ExtendedValue.of_exact(exact)
    lattice = target_value.value

    samples: List[ProbeSample] = []
    for delta in spec.deltas:
        value = binom_complex(n + delta * dx, k + delta * dy)
        if not value.is_finite:
            logger.warning(
                f"probe ({n}, {k}): sample at delta={delta:g} is on the infinite set, skipped"
            )
            samples.append(ProbeSample(delta, None))
            continue
        samples.append(ProbeSample(delta, value, _relative_error(value.value, lattice)))

    finite = [s for s in samples if s.value is not None]
    if not finite:
        raise DomainError(
            f"direction {spec.direction} stays on the infinite set next to ({n}, {k}); "
            "use probe_divergence for points of that set"
        )

    extrapolated: Optional[ExtendedValue] = None
    classification = ProbeClass.INCONCLUSIVE
    if len(finite) >= 2:
        prev, last = finite[-2], finite[-1]
        extrapolated = ExtendedValue.of(
            _richardson(prev.delta, prev.value.value, last.delta, last.value.value)
        )
        within = (
            prev.error <= probe_tolerance(prev.delta)
            and last.error <= probe_tolerance(last.delta)
        )
        settling = last.error <= prev.error or last.error <= PROBE_NOISE_FLOOR
        if within and settling:
            classification = ProbeClass.CONVERGES
        elif _pole_signature_holds([s.delta for s in finite], [abs(s.value.value) for s in finite]):
            classification = ProbeClass.DIVERGES
            extrapolated = ExtendedValue.infinite()

    logger.info(f"probe ({n}, {k}) along {spec.direction}: {classification.value}")
    return ProbeResult(samples, extrapolated, classification, target_value)


def _pole_signature_holds(deltas: Sequence[float], magnitudes: Sequence[float]) -> bool:
    """Growing magnitudes whose product with delta is stable over the last three samples."""
    if len(magnitudes) < 3:
        return False
    if any(b <= a for a, b in zip(magnitudes, magnitudes[1:])):
        return False
    products = [m * d for m, d in zip(magnitudes[-3:], deltas[-3:])]
    return (max(products) - min(products)) / max(products) < POLE_SIGNATURE_SPREAD


def probe_divergence(
    x: complex, y: complex, deltas: Sequence[float] = DEFAULT_DELTAS
) -> ProbeResult:
    """Samples |binom(x + delta, y)| next to a point of the infinite set.

    Diverges when the magnitudes grow and |value| * delta settles, the
    signature of the simple pole of Gamma(x+1).

    Raises:
        DomainError: If x is not a negative integer, y is an integer, or the
            deltas are not positive and strictly decreasing.
    """
    m = snap_integer(as_complex(x))
    if m is None or m >= 0:
        raise DomainError(f"probe_divergence needs a negative integer x, got {x}")
    y = as_complex(y)
    if snap_integer(y) is not None:
        raise DomainError(f"probe_divergence needs a non-integer y, got {y}")
    deltas = tuple(float(d) for d in deltas)
    if not deltas or any(d <= 0 for d in deltas) or any(b >= a for a, b in zip(deltas, deltas[1:])):
        raise DomainError(f"deltas must be positive and strictly decreasing, got {deltas}")

    samples: List[ProbeSample] = []
    finite_deltas: List[float] = []
    magnitudes: List[float] = []
    for delta in deltas:
        value = binom_complex(m + delta, y)
        if not value.is_finite:
            logger.warning(
                f"divergence probe ({m}, {y}): x + delta = {m + delta:g} is on the "
                "infinite set, skipped"
            )
            samples.append(ProbeSample(delta, None))
            continue
        samples.append(ProbeSample(delta, value))
        finite_deltas.append(delta)
        magnitudes.append(abs(value.value))

    signature = [mag * d for mag, d in zip(magnitudes, finite_deltas)]
    diverges = _pole_signature_holds(finite_deltas, magnitudes)
    classification = ProbeClass.DIVERGES if diverges else ProbeClass.INCONCLUSIVE
    logger.info(f"divergence probe ({m}, {y}): {classification.value}")
    return ProbeResult(
        samples,
        ExtendedValue.infinite() if diverges else None,
        classification,
        ExtendedValue.infinite(),
        signature,
    )


@dataclass(frozen=True)
class ScanEntry:
    direction: Direction
    classification: ProbeClass

    def to_dict(self) -> Dict[str, Any]:
        dx, dy = self.direction
        return {
            "direction": [[dx.real, dx.imag], [dy.real, dy.imag]],
            "classification": self.classification.value,
        }


def random_directions(count: int, seed: int = DEFAULT_SEED) -> List[Direction]:
    """Seeded directions, uniform on the unit sphere of complex 2-space."""
    rng = np.random.default_rng(seed)
    directions = []
    for v in rng.standard_normal((count, 4)):
        directions.append(normalize_direction(complex(v[0], v[1]), complex(v[2], v[3])))
    return directions


def direction_scan(
    target: LatticePoint,
    count: int,
    seed: int = DEFAULT_SEED,
    deltas: Sequence[float] = DEFAULT_DELTAS,
) -> List[ScanEntry]:
    """Probes `count` seeded directions toward a lattice point.

    A direction that only meets the infinite set is reported Inconclusive.
    """
    if count < 1:
        raise DomainError(f"direction_scan needs count >= 1, got {count}")
    entries: List[ScanEntry] = []
    for direction in random_directions(count, seed):
        try:
            result = probe_limit(ProbeSpec(target, direction, tuple(deltas)))
            entries.append(ScanEntry(direction, result.classification))
        except DomainError as e:
            logger.debug(f"scan ({target.n}, {target.k}): {e}")
            entries.append(ScanEntry(direction, ProbeClass.INCONCLUSIVE))
    off = non_converging(entries)
    logger.info(
        f"scan ({target.n}, {target.k}): {count - len(off)} of {count} directions converge"
    )
    return entries


def non_converging(entries: Sequence[ScanEntry]) -> List[Direction]:
    return [e.direction for e in entries if e.classification is not ProbeClass.CONVERGES]
