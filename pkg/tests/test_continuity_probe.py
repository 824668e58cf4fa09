# tests/test_continuity_probe.py
import math

import numpy as np
import pytest

from src.errors import DomainError
from src.analysis.continuity_probe import (
    AXIS_DIRECTION,
    DIAGONAL_DIRECTION,
    ProbeClass,
    ProbeSpec,
    default_direction,
    direction_scan,
    non_converging,
    probe_divergence,
    probe_limit,
    random_directions,
)
from src.lattice.exact_lattice import LatticePoint, LatticeWindow


def test_upper_negation_cell_along_the_axis():
    result = probe_limit(ProbeSpec.along(LatticePoint(-4, 2), 1, 0))
    assert result.classification is ProbeClass.CONVERGES
    assert result.target_value.exact == 10
    assert result.extrapolated_limit.value == pytest.approx(10, rel=1e-6)
    assert result.samples[-1].error < 1e-4


def test_mirrored_cell_along_the_diagonal():
    result = probe_limit(ProbeSpec.along(LatticePoint(-3, -5), 1, 1))
    assert result.classification is ProbeClass.CONVERGES
    assert result.target_value.exact == 6


def test_regular_cell_along_y():
    result = probe_limit(ProbeSpec.along(LatticePoint(3, 1), 0, 1))
    assert result.classification is ProbeClass.CONVERGES
    assert result.target_value.exact == 3


def test_default_directions():
    assert default_direction(LatticePoint(-3, -5)) == DIAGONAL_DIRECTION
    assert default_direction(LatticePoint(-4, 2)) == AXIS_DIRECTION
    assert default_direction(LatticePoint(2, 1)) == AXIS_DIRECTION


def test_every_cell_converges_along_its_default_direction():
    for p in LatticeWindow.square(-6, 6).points():
        result = probe_limit(ProbeSpec(p, default_direction(p)))
        assert result.classification is ProbeClass.CONVERGES, p
        final = [s for s in result.samples if s.delta == 1e-6][0]
        assert final.error < 1e-4, p


def test_errors_decrease_for_converging_probes():
    for target in (LatticePoint(-4, 2), LatticePoint(-3, -5), LatticePoint(5, 2)):
        result = probe_limit(ProbeSpec(target, default_direction(target)))
        errors = [s.error for s in result.samples]
        steps_up = sum(1 for a, b in zip(errors, errors[1:]) if b > a and b > 1e-10)
        assert steps_up <= 1


def test_direction_on_the_infinite_set_raises():
    # binom(-2, d) is infinite for every non-integer d
    with pytest.raises(DomainError, match="probe_divergence"):
        probe_limit(ProbeSpec.along(LatticePoint(-2, 0), 0, 1))


def test_gaps_are_kept():
    # Along y only, (-2, 0) is approached through the infinite set except at integer offsets
    spec = ProbeSpec.along(LatticePoint(-2, 0), 0, 1, deltas=(2.0, 1.5, 1.0))
    result = probe_limit(spec)
    assert result.gaps == 1
    assert result.samples[1].value is None


@pytest.mark.parametrize(
    "deltas, direction",
    [
        ((1e-2, 1e-2), AXIS_DIRECTION),
        ((1e-2, -1e-3), AXIS_DIRECTION),
        ((), AXIS_DIRECTION),
        ((1e-2,), (1, 1)),
    ],
)
def test_spec_validation(deltas, direction):
    with pytest.raises(DomainError):
        ProbeSpec(LatticePoint(0, 0), direction, deltas)


def test_zero_direction_is_rejected():
    with pytest.raises(DomainError):
        ProbeSpec.along(LatticePoint(0, 0), 0, 0)


@pytest.mark.parametrize("x, y", [(-2, 0.5), (-1, 0.25), (-3, 1.5 + 0.5j)])
def test_divergence(x, y):
    result = probe_divergence(x, y)
    assert result.classification is ProbeClass.DIVERGES
    assert result.target_value.is_infinite
    last = result.pole_signature[-3:]
    assert (max(last) - min(last)) / max(last) < 0.1


def test_divergence_keeps_gaps():
    # delta = 1 moves x from -3 onto -2, another point of the infinite set
    result = probe_divergence(-3, 0.5, deltas=(1.0, 1e-2, 1e-3, 1e-4, 1e-5))
    assert result.gaps == 1
    assert result.samples[0].value is None
    assert len(result.pole_signature) == 4
    assert result.classification is ProbeClass.DIVERGES


def test_divergence_only_gaps_is_inconclusive():
    result = probe_divergence(-3, 0.5, deltas=(2.0, 1.0))
    assert result.gaps == 2
    assert result.pole_signature == []
    assert result.classification is ProbeClass.INCONCLUSIVE


def test_divergence_on_seeded_points():
    rng = np.random.default_rng(7)
    for _ in range(20):
        x = -int(rng.integers(1, 7))
        y = float(rng.uniform(-5, 5))
        while abs(y - round(y)) < 5e-2:
            y = float(rng.uniform(-5, 5))
        assert probe_divergence(x, y).classification is ProbeClass.DIVERGES, (x, y)


@pytest.mark.parametrize("x, y", [(-2, 1.0), (2, 0.5), (-1.5, 0.5)])
def test_divergence_preconditions(x, y):
    with pytest.raises(DomainError):
        probe_divergence(x, y)


def test_scan_of_a_regular_cell_converges_everywhere():
    entries = direction_scan(LatticePoint(5, 2), 64, seed=0)
    assert len(entries) == 64
    assert non_converging(entries) == []


def test_scan_of_an_upper_negation_cell():
    # Off the x-axis the limit depends on the direction, so no seeded direction lands on 10
    entries = direction_scan(LatticePoint(-4, 2), 64, seed=0)
    assert len(entries) == 64
    assert len(non_converging(entries)) == 64
    assert all(e.classification is ProbeClass.INCONCLUSIVE for e in entries)


def test_generic_direction_limit_at_an_upper_negation_cell():
    # Near (-4, 2) both Gamma(x+1) and Gamma(x-y+1) have simple poles;
    # their ratio tends to 10 * (dx - dy) / dx
    checked = 0
    for dx, dy in random_directions(16, seed=11):
        if abs(dx) < 0.2 or abs(dy) < 0.05 or abs(dx - dy) < 0.2:
            continue
        result = probe_limit(ProbeSpec(LatticePoint(-4, 2), (dx, dy)))
        expected = 10 * (dx - dy) / dx
        assert result.classification is ProbeClass.INCONCLUSIVE
        assert abs(result.extrapolated_limit.value - expected) <= 1e-5 * abs(expected)
        checked += 1
    assert checked >= 4


def test_scan_single_direction():
    assert len(direction_scan(LatticePoint(1, 1), 1)) == 1
    with pytest.raises(DomainError):
        direction_scan(LatticePoint(1, 1), 0)


def test_random_directions_are_seeded_unit_vectors():
    first = random_directions(16, seed=5)
    assert first == random_directions(16, seed=5)
    assert first != random_directions(16, seed=6)
    for dx, dy in first:
        assert math.hypot(abs(dx), abs(dy)) == pytest.approx(1.0, abs=1e-12)


def test_result_serialization():
    payload = probe_limit(ProbeSpec.along(LatticePoint(3, 1), 1, 0)).to_dict()
    assert payload["classification"] == "ConvergesToLattice"
    assert payload["target_value"]["exact"] == 3
    assert len(payload["samples"]) == 6
