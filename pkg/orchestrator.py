# orchestrator.py
"""
Runs the full acceptance checks in sequence and records the run.

Each step returns True on success and fills its metrics; the run status is
SUCCESS only if every step passes. `--quick` shrinks the sample sizes and
windows for a fast smoke run.
"""

import argparse
import cmath
import logging
import math
import sys
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np

from src.analysis import continuity_probe, identity_suite, series_expansion
from src.errors import BoundaryRegionError, NonConvergentRegionError
from src.evaluation import gamma_engine
from src.lattice import exact_lattice
from src.lattice.exact_lattice import LatticePoint, LatticeWindow
from src.management import observability
from src.management.config import DEFAULT_SEED

logger = logging.getLogger(__name__)

FULL_SIZES: Dict[str, int] = {
    "factorial_n_max": 200,
    "pascal_radius": 64,
    "negation_radius": 64,
    "gamma_samples": 10_000,
    "sweep_radius": 32,
    "complex_samples": 10_000,
    "series_samples": 1_000,
    "probe_radius": 6,
    "divergence_points": 20,
}

QUICK_SIZES: Dict[str, int] = {
    "factorial_n_max": 60,
    "pascal_radius": 16,
    "negation_radius": 16,
    "gamma_samples": 500,
    "sweep_radius": 6,
    "complex_samples": 200,
    "series_samples": 50,
    "probe_radius": 3,
    "divergence_points": 5,
}


def check_lattice_ground_truth(sizes: Dict[str, int], metrics: Dict[str, Any]) -> bool:
    """binom_lattice against the factorial ratio and the Pascal recurrence."""
    n_max = sizes["factorial_n_max"]
    mismatches = 0
    for n in range(n_max + 1):
        for k in range(n + 1):
            p = LatticePoint(n, k)
            if exact_lattice.binom_lattice(p) != exact_lattice.factorial_ratio(p):
                mismatches += 1

    window = LatticeWindow.square(-sizes["pascal_radius"], sizes["pascal_radius"])
    recurrence = exact_lattice.pascal_oracle(window)
    direct = exact_lattice.lattice_table(window)
    mismatches += sum(1 for p in window.points() if recurrence[p] != direct[p])
    metrics["lattice_mismatches"] = mismatches
    return mismatches == 0


def check_negation_cases(sizes: Dict[str, int], metrics: Dict[str, Any]) -> bool:
    """The three negative-n cases, cell by cell."""
    r = sizes["negation_radius"]
    bad = 0
    for n in range(-r, 0):
        for k in range(-r, r + 1):
            value = exact_lattice.binom_lattice(LatticePoint(n, k))
            if k >= 0:
                expected = exact_lattice.sign_of_parity(k) * exact_lattice.binom_lattice(
                    LatticePoint(-n + k - 1, k)
                )
            elif k <= n:
                expected = exact_lattice.sign_of_parity(n - k) * exact_lattice.binom_lattice(
                    LatticePoint(-k - 1, n - k)
                )
            else:
                expected = 0
            bad += value != expected
    metrics["negation_mismatches"] = bad
    return bad == 0


def _random_complex(rng: np.random.Generator, count: int, half_width: float) -> List[complex]:
    parts = rng.uniform(-half_width, half_width, size=(count, 2))
    return [complex(a, b) for a, b in parts]


def _distance_to_integer(s: complex) -> float:
    return abs(s - round(s.real))


def check_gamma_engine(sizes: Dict[str, int], metrics: Dict[str, Any]) -> bool:
    """Reflection, recursion, the symmetry ratio and the near-pole law on seeded samples."""
    rng = np.random.default_rng(DEFAULT_SEED)
    count = sizes["gamma_samples"]

    points = [s for s in _random_complex(rng, count, 20.0) if _distance_to_integer(s) > 1e-3]
    worst_reflection = max(gamma_engine.reflection_residual(s) for s in points)

    worst_recursion = 0.0
    for s in points:
        if gamma_engine.pole_distance(s) < 0.1 or gamma_engine.pole_distance(s + 1) < 0.1:
            continue
        g1 = gamma_engine.gamma(s + 1).value
        g0 = gamma_engine.gamma(s).value
        worst_recursion = max(worst_recursion, abs(g1 - s * g0) / abs(g1))

    worst_ratio = 0.0
    worst_sine = 0.0
    for s in _random_complex(rng, count, 10.0):
        if _distance_to_integer(s) < 0.1:
            continue
        a, b = (int(v) for v in rng.integers(-10, 11, size=2))
        left = gamma_engine.log_gamma_raw(s - a + 1) - gamma_engine.log_gamma_raw(s - b + 1)
        right = gamma_engine.log_gamma_raw(b - s) - gamma_engine.log_gamma_raw(a - s)
        lhs = cmath.exp(left)
        rhs = exact_lattice.sign_of_parity(b - a) * cmath.exp(right)
        worst_ratio = max(worst_ratio, abs(lhs - rhs) / abs(lhs))
        sb = gamma_engine.sin_pi(b - s)
        sa = exact_lattice.sign_of_parity(b - a) * gamma_engine.sin_pi(a - s)
        worst_sine = max(worst_sine, abs(sb - sa) / abs(sb))

    constants: List[float] = []
    for n in range(11):
        for size in (1e-4, 1e-5):
            x = complex(size)
            exact = 1 / gamma_engine.gamma(x - n).value
            constants.append(abs(exact - gamma_engine.recip_gamma_leading(n, x)) / size**2)
    # Constants at the two sizes must agree to within a factor of two
    pairs = list(zip(constants[::2], constants[1::2]))
    near_pole_ok = all(c5 <= 2 * c4 + 1e-6 for c4, c5 in pairs)

    metrics.update({
        "reflection_max_residual": worst_reflection,
        "recursion_max_residual": worst_recursion,
        "symmetry_ratio_max_residual": worst_ratio,
        "sine_flip_max_residual": worst_sine,
        "near_pole_max_constant": max(constants),
    })
    return (
        worst_reflection < 1e-10
        and worst_recursion < 1e-10
        and worst_ratio < 1e-10
        and worst_sine < 1e-12
        and near_pole_ok
    )


def check_identity_sweep(sizes: Dict[str, int], metrics: Dict[str, Any]) -> bool:
    """Lattice sweep: no violations, exceptions exactly where they are expected."""
    r = sizes["sweep_radius"]
    reports = identity_suite.sweep(
        LatticeWindow.square(-r, r), None, ("symmetry", "trinomial", "absorption", "addition")
    )
    summary = identity_suite.summarize(reports)
    exceptions = [
        (rep.identity_name, rep.point)
        for rep in reports
        if rep.verdict is identity_suite.Verdict.KNOWN_EXCEPTION
    ]
    absorption_ok = sorted(p for name, p in exceptions if name == "absorption") == [
        (x, 0) for x in range(-r, r + 1)
    ]
    addition = [rep for rep in reports if rep.identity_name == "addition" and rep.point == (0, 0)]
    addition_ok = (
        [p for name, p in exceptions if name == "addition"] == [(0, 0)]
        and addition[0].lhs.exact == 1
        and addition[0].rhs.exact == 2
    )
    metrics["sweep_reports"] = summary["total"]
    metrics["sweep_violated"] = summary["violated"]
    return (
        summary["violated"] == 0
        and absorption_ok
        and addition_ok
        and len(exceptions) == 2 * r + 2
    )


def check_complex_identities(sizes: Dict[str, int], metrics: Dict[str, Any]) -> bool:
    """Seeded complex points: residuals of the four identities and the reduced addition."""
    spec = identity_suite.SampleSpec(count=sizes["complex_samples"], seed=DEFAULT_SEED)
    reports = identity_suite.sweep(None, spec, identity_suite.ALL_IDENTITIES)
    worst = max((rep.residual or 0.0) for rep in reports if rep.identity_name != "reduction")
    worst_reduction = max(
        (rep.residual or 0.0) for rep in reports if rep.identity_name == "reduction"
    )
    violated = identity_suite.summarize(reports)["violated"]
    metrics.update({
        "complex_max_residual": worst,
        "reduction_max_residual": worst_reduction,
        "complex_violated": violated,
    })
    return violated == 0 and worst < 1e-9 and worst_reduction < 1e-10


def check_series(sizes: Dict[str, int], metrics: Dict[str, Any]) -> bool:
    """Both negative-power regimes against (x+y)^n, region errors, and the coefficients."""
    rng = np.random.default_rng(DEFAULT_SEED)
    worst = 0.0
    for n in range(-6, 0):
        for regime_ratio in ((0.1, 0.9), (1.1, 10.0)):
            for _ in range(sizes["series_samples"]):
                y = cmath.rect(rng.uniform(0.5, 2.0), rng.uniform(-math.pi, math.pi))
                x = y * cmath.rect(rng.uniform(*regime_ratio), rng.uniform(-math.pi, math.pi))
                result = series_expansion.expand_binomial(series_expansion.SeriesSpec(n, x, y))
                exact = (x + y) ** n
                worst = max(worst, abs(result.value - exact) / abs(exact))

    region_errors = 0
    for call, args in (
        (series_expansion.expand_neg_in_x, (-1, 2, 1)),
        (series_expansion.expand_neg_in_y, (-1, 0.5, 1)),
    ):
        try:
            call(series_expansion.SeriesSpec(*args))
        except NonConvergentRegionError:
            region_errors += 1
    try:
        series_expansion.select_regime(-2, 1, 1)
    except BoundaryRegionError:
        region_errors += 1

    coefficient_mismatches = sum(
        series_expansion.series_coefficient(n, k) != exact_lattice.binom_lattice(LatticePoint(n, k))
        for n in range(-6, 0)
        for k in range(65)
    )
    metrics.update({
        "series_max_residual": worst,
        "series_region_errors": region_errors,
        "series_coefficient_mismatches": coefficient_mismatches,
    })
    return worst < 1e-10 and region_errors == 3 and coefficient_mismatches == 0


def check_continuity(sizes: Dict[str, int], metrics: Dict[str, Any]) -> bool:
    """Limits along the perturbation directions, and the pole signature on the infinite set."""
    r = sizes["probe_radius"]
    failures = 0
    worst_error = 0.0
    for p in LatticeWindow.square(-r, r).points():
        result = continuity_probe.probe_limit(
            continuity_probe.ProbeSpec(p, continuity_probe.default_direction(p))
        )
        final = [s for s in result.samples if s.delta == 1e-6]
        worst_error = max(worst_error, final[0].error if final and final[0].error else 0.0)
        failures += result.classification is not continuity_probe.ProbeClass.CONVERGES

    rng = np.random.default_rng(DEFAULT_SEED)
    divergence_failures = 0
    for _ in range(sizes["divergence_points"]):
        x = -int(rng.integers(1, 11))
        y = float(rng.uniform(-10, 10))
        while abs(y - round(y)) < 5e-2:
            y = float(rng.uniform(-10, 10))
        result = continuity_probe.probe_divergence(x, y)
        divergence_failures += result.classification is not continuity_probe.ProbeClass.DIVERGES

    metrics.update({
        "probe_failures": failures,
        "probe_max_error_at_1e-6": worst_error,
        "divergence_failures": divergence_failures,
    })
    return failures == 0 and worst_error < 1e-4 and divergence_failures == 0


STEPS: List[Tuple[str, Callable[[Dict[str, int], Dict[str, Any]], bool]]] = [
    ("lattice ground truth", check_lattice_ground_truth),
    ("negation cases", check_negation_cases),
    ("gamma engine", check_gamma_engine),
    ("identity sweep", check_identity_sweep),
    ("complex identities", check_complex_identities),
    ("series regimes", check_series),
    ("continuity", check_continuity),
]


def run_acceptance(quick: bool = False) -> int:
    """
    Main orchestrator function to run the acceptance steps sequentially.

    Returns:
        0 when every step passes, 1 otherwise.
    """
    sizes = QUICK_SIZES if quick else FULL_SIZES
    metrics: Dict[str, Any] = {}
    status = 'FAILURE'  # Default to failure until success
    run: Optional[observability.RunRecord] = None

    logger.info("--- ORCHESTRATOR: Starting acceptance run ---")
    try:
        run = observability.start_run("acceptance-quick" if quick else "acceptance")
        failed = []
        for name, step in STEPS:
            logger.info(f"--- STEP: {name} ---")
            if not step(sizes, metrics):
                logger.error(f"STEP FAILED: {name}")
                failed.append(name)
        metrics["failed_steps"] = len(failed)
        if not failed:
            status = 'SUCCESS'

    except Exception as e:
        logger.exception(f"FATAL: An error occurred in the orchestrator: {e}")

    finally:
        if run is not None:
            observability.end_run(run, status, metrics)
        logger.info("--- ORCHESTRATOR: Acceptance run finished ---")

    return 0 if status == 'SUCCESS' else 1


def main(argv: Optional[List[str]] = None) -> int:
    parser = argparse.ArgumentParser(description="Run the acceptance checks.")
    parser.add_argument('--quick', action='store_true', help='Smaller samples and windows')
    parser.add_argument('--log-level', type=str, default='INFO', help='Logging level')
    args = parser.parse_args(argv)
    observability.setup_logging(args.log_level)
    return run_acceptance(args.quick)


if __name__ == "__main__":
    sys.exit(main())
